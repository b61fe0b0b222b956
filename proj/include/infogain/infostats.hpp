#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "infogain/cooc.hpp"
#include "infogain/corpus.hpp"

// Per-word information measures. All logarithms are natural (nats).
namespace infogain {

// KL(p(.|w) || p(.)) over the sparse support of cond. Throws
// kZeroSupport naming the word when unigram is not positive on that support.
double kl_divergence(std::span<const SparseProb> cond, std::span<const double> unigram);
// Dense variant; 0 log 0 = 0.
double kl_divergence(std::span<const double> p, std::span<const double> q);

double shannon_entropy(std::span<const SparseProb> cond);
double shannon_entropy(std::span<const double> p);

// I(w) = log N - log n_w.
double self_information(const Vocabulary& vocab, WordId w);
double self_information(const Vocabulary& vocab, std::string_view word);

// Pearson statistic of the row counts against row_sum * p(w'), summed over
// every w' with p(w') > 0 (including those absent from the row).
double chi_square(std::span<const CoocEntry> row, std::span<const double> unigram);

struct QuantizedKl {
  double value = 0.0;
  bool degenerate = false;  // every rounded count was zero
};

// KL of the distribution obtained by rounding 2h n_w p(w') half away from
// zero, renormalized, against p(.).
QuantizedKl quantized_kl(std::int64_t n_w, int window, std::span<const double> unigram);

// Batch evaluator: visits only the w' whose rounded count can be nonzero.
class QuantizedKlEvaluator {
 public:
  QuantizedKlEvaluator(std::span<const double> unigram, int window);
  QuantizedKl operator()(std::int64_t n_w) const;

 private:
  std::vector<double> sorted_p_;  // descending
  int window_;
};

// Sum_w p(w) KL(w) with p(w) = n_w / N. Rows without co-occurrences carry no
// conditional distribution and are skipped.
double mutual_information(const CoocMatrix& cooc, const Vocabulary& vocab);

struct WordStats {
  std::int64_t n = 0;
  double kl = 0.0;
  double entropy = 0.0;
  double self_info = 0.0;
  double chi2 = 0.0;
  double g2 = 0.0;  // 2 n_w KL(w)
  double kl0 = 0.0;
  bool valid = false;  // false when the row is empty
};

// One entry per vocabulary id. Row summation order is ascending context id,
// so the result does not depend on the thread count.
std::vector<WordStats> compute_word_stats(const CoocMatrix& cooc, const Vocabulary& vocab,
                                          int threads = 1);

// Convenience projections used by the bias and task modules.
std::vector<double> kl_values(const CoocMatrix& cooc, const Vocabulary& vocab, int threads = 1);
std::vector<double> entropy_values(const CoocMatrix& cooc, int threads = 1);

// TSV "word n_w kl entropy self_info chi2 g2 kl0", 6 significant digits.
void write_word_stats(std::ostream& out, const Vocabulary& vocab,
                      std::span<const WordStats> stats);
void write_word_stats(const std::string& path, const Vocabulary& vocab,
                      std::span<const WordStats> stats);
std::vector<WordStats> read_word_stats(const std::string& path, const Vocabulary& vocab);

}  // namespace infogain
