#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "infogain/corpus.hpp"

namespace infogain {

struct CoocEntry {
  WordId context;
  std::int64_t count;

  bool operator==(const CoocEntry&) const = default;
};

// Windowed co-occurrence counts n_{w,w'}. Rows are sorted by context id.
class CoocMatrix {
 public:
  CoocMatrix() = default;
  CoocMatrix(int window, std::vector<std::vector<CoocEntry>> rows);

  int window() const { return window_; }
  std::size_t size() const { return rows_.size(); }
  std::span<const CoocEntry> row(WordId w) const { return rows_.at(static_cast<std::size_t>(w)); }
  std::int64_t row_sum(WordId w) const { return row_sums_.at(static_cast<std::size_t>(w)); }
  std::span<const std::int64_t> row_sums() const { return row_sums_; }
  std::int64_t total() const { return total_; }

  // n_{w,w'}, zero when absent.
  std::int64_t get(WordId w, WordId context) const;

  // "#h=<h> #V=<size> #total=<count>" then "row<TAB>col<TAB>count".
  void write(std::ostream& out) const;
  void write(const std::string& path) const;
  static CoocMatrix read(std::istream& in);
  static CoocMatrix read(const std::string& path);

  bool operator==(const CoocMatrix& other) const {
    return window_ == other.window_ && rows_ == other.rows_;
  }

 private:
  int window_ = 0;
  std::vector<std::vector<CoocEntry>> rows_;
  std::vector<std::int64_t> row_sums_;
  std::int64_t total_ = 0;
};

// Fixed +-h window clipped at the corpus ends. Rows are independent, so
// threads > 1 splits the vocabulary across workers with identical output.
CoocMatrix count_cooccurrences(const TokenStream& stream, std::size_t vocab_size,
                               int window, int threads = 1);

inline CoocMatrix count_cooccurrences(const TokenStream& stream, const Vocabulary& vocab,
                                      int window, int threads = 1) {
  return count_cooccurrences(stream, vocab.size(), window, threads);
}

// Counts each chunk of the corpus separately (each chunk sees h tokens of
// the neighbouring chunks) and merges the partial matrices.
CoocMatrix count_cooccurrences_chunked(const TokenStream& stream, std::size_t vocab_size,
                                       int window, std::size_t chunks);

struct SparseProb {
  WordId id;
  double p;
};

// p(.|w) over the nonzero entries of the row. Throws kZeroSupport on an
// empty row.
std::vector<SparseProb> conditional_distribution(const CoocMatrix& cooc, WordId w);

// q_ctx(w') = sum_w n_{w,w'} / sum_{w,w''} n_{w,w''}.
std::vector<double> context_marginal(const CoocMatrix& cooc);

}  // namespace infogain
