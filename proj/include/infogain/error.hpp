#pragma once

#include <stdexcept>
#include <string>

namespace infogain {

// Status codes shared with the C API (see infogain.h); the numeric values
// are part of the ABI.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kEmptyVocabulary = 2,
  kZeroSupport = 3,
  kUnknownWord = 4,
  kNotPsd = 5,
  kDiverged = 6,
  kIo = 7,
  kParse = 8,
  kInternal = 9,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool condition, const std::string& what) {
  if (!condition) fail(ErrorCode::kInvalidArgument, what);
}

}  // namespace infogain
