#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace infogain {

using WordId = std::int32_t;

// Corpus as a sequence of vocabulary ids.
struct TokenStream {
  std::vector<WordId> ids;

  std::size_t size() const { return ids.size(); }
  bool empty() const { return ids.empty(); }
};

// Words ordered by descending count, ties broken lexicographically, so ids
// are deterministic and id 0 is the most frequent word.
class Vocabulary {
 public:
  Vocabulary() = default;

  // Counts need not be sorted; the constructor orders them.
  explicit Vocabulary(std::vector<std::pair<std::string, std::int64_t>> counts);

  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  std::int64_t total() const { return total_; }

  const std::string& word(WordId id) const { return words_.at(static_cast<std::size_t>(id)); }
  std::int64_t count(WordId id) const { return counts_.at(static_cast<std::size_t>(id)); }
  std::span<const std::int64_t> counts() const { return counts_; }
  const std::vector<std::string>& words() const { return words_; }

  // p(w) = n_w / N.
  double probability(WordId id) const {
    return static_cast<double>(count(id)) / static_cast<double>(total_);
  }
  std::vector<double> unigram() const;

  // -1 when absent.
  WordId find(std::string_view word) const;
  // Throws kUnknownWord.
  WordId id(std::string_view word) const;

  // "#N=<total>" then "word<TAB>count" lines.
  void write(std::ostream& out) const;
  void write(const std::string& path) const;
  static Vocabulary read(std::istream& in);
  static Vocabulary read(const std::string& path);

 private:
  std::vector<std::string> words_;
  std::vector<std::int64_t> counts_;
  std::int64_t total_ = 0;
  std::unordered_map<std::string, WordId> index_;
};

struct Corpus {
  Vocabulary vocab;
  TokenStream stream;
};

// Maximal runs of non-whitespace; ASCII letters lowercased when requested.
std::vector<std::string> tokenize(std::string_view text, bool lowercase = true);

// Drops words with raw count below min_count from both vocabulary and
// stream. Throws kEmptyVocabulary when nothing survives.
Corpus build_vocab(std::span<const std::string> tokens, std::int64_t min_count = 1);

// Streams a text file through tokenize() and build_vocab() without
// materializing the token strings.
Corpus load_corpus(const std::string& path, bool lowercase = true,
                   std::int64_t min_count = 1);

// Re-derives the stream of a text file against a fixed vocabulary; tokens
// absent from it are dropped.
TokenStream encode(std::span<const std::string> tokens, const Vocabulary& vocab);

// Fisher-Yates with the seeded generator.
TokenStream shuffle_corpus(const TokenStream& stream, std::uint64_t seed);

// Per-id counts of a stream over a vocabulary of the given size.
std::vector<std::int64_t> count_ids(const TokenStream& stream, std::size_t vocab_size);

}  // namespace infogain
