#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "infogain/cooc.hpp"
#include "infogain/corpus.hpp"

namespace infogain {

enum class BiasMethod { kShuffle, kPercentile };

// Frequency-induced expectation of a statistic, one entry per item (words,
// or ordered word pairs for pairwise statistics). NaN marks a missing entry.
struct BiasTable {
  BiasMethod method = BiasMethod::kShuffle;
  std::vector<double> baseline;

  // shuffle
  int n_shuffles = 0;
  std::int64_t missing_entries = 0;  // item-replicates where the statistic was NaN

  // percentile
  int n_bins = 0;
  int min_bin = 0;
  double percentile = 0.0;
  std::vector<int> bin_of;  // retained bin per item, -1 when unbinned
  int retained_bins = 0;
};

// Evaluates a statistic on one (shuffled) corpus; NaN marks failures.
using CorpusStatistic = std::function<std::vector<double>(const CoocMatrix&, const Vocabulary&)>;

// Mean of `stat` over n_shuffles shuffled copies of the corpus, recounted at
// window h. Replicate seeds are derived from `seed`.
BiasTable shuffle_baseline(const TokenStream& stream, const Vocabulary& vocab, int window,
                           const CorpusStatistic& stat, int n_shuffles, std::uint64_t seed,
                           int threads = 1);
// Same with explicit replicate seeds.
BiasTable shuffle_baseline(const TokenStream& stream, const Vocabulary& vocab, int window,
                           const CorpusStatistic& stat, std::span<const std::uint64_t> seeds,
                           int threads = 1);
std::vector<std::uint64_t> shuffle_seeds(std::uint64_t seed, int n_shuffles);

// Lower-percentile baseline within log-spaced frequency bins over
// [1, max n_w]. Bins are visited from high to low frequency and merged
// toward lower frequency until each retained bin holds >= min_bin words; a
// deficient remainder at the low end joins the last retained bin. The
// baseline is the nearest-rank pct-th percentile of the bin's values.
BiasTable percentile_baseline(std::span<const double> values,
                              std::span<const std::int64_t> counts, int n_bins = 200,
                              int min_bin = 50, double pct = 3.0);

// Nearest-rank percentile: the ceil(pct/100 * n)-th smallest value.
double nearest_rank_percentile(std::vector<double> values, double pct);

// value - baseline; NaN propagates. Applying it twice subtracts twice.
std::vector<double> bias_correct(std::span<const double> values, const BiasTable& table);

// Spearman rank correlation with average ranks for ties; NaN pairs skipped.
double spearman(std::span<const double> a, std::span<const double> b);

// TSV "word baseline" with a '#'-prefixed header recording the method.
void write_bias_table(const std::string& path, const Vocabulary& vocab, const BiasTable& table);

}  // namespace infogain
