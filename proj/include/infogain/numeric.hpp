#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace infogain {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      compensation_ += (sum_ - t) + x;
    else
      compensation_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

// Rows longer than this are summed with compensation.
inline constexpr std::size_t kCompensatedThreshold = 10000;

// x log(x / y) with the 0 log 0 = 0 convention.
inline double xlogx_over_y(double x, double y) {
  return x > 0.0 ? x * std::log(x / y) : 0.0;
}

inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace infogain
