#include "infogain/bias.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>

#include "infogain/error.hpp"
#include "infogain/parallel.hpp"
#include "infogain/random.hpp"

namespace infogain {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

std::vector<std::uint64_t> shuffle_seeds(std::uint64_t seed, int n_shuffles) {
  std::vector<std::uint64_t> seeds;
  const std::uint64_t base = derive_seed(seed, "shuffle-baseline");
  for (int i = 0; i < n_shuffles; ++i) seeds.push_back(derive_seed(base, static_cast<std::uint64_t>(i)));
  return seeds;
}

BiasTable shuffle_baseline(const TokenStream& stream, const Vocabulary& vocab, int window,
                           const CorpusStatistic& stat, std::span<const std::uint64_t> seeds,
                           int threads) {
  require(!seeds.empty(), "shuffle_baseline needs n_shuffles >= 1");
  require(window >= 1, "window must be >= 1");

  std::vector<std::vector<double>> replicates(seeds.size());
  parallel_for(seeds.size(), threads, [&](std::size_t r) {
    const TokenStream shuffled = shuffle_corpus(stream, seeds[r]);
    const CoocMatrix cooc = count_cooccurrences(shuffled, vocab.size(), window);
    replicates[r] = stat(cooc, vocab);
  });

  const std::size_t items = replicates.front().size();
  for (const auto& rep : replicates)
    require(rep.size() == items, "statistic returned inconsistent lengths across shuffles");

  BiasTable table;
  table.method = BiasMethod::kShuffle;
  table.n_shuffles = static_cast<int>(seeds.size());
  table.baseline.assign(items, kNaN);
  for (std::size_t i = 0; i < items; ++i) {
    double sum = 0.0;
    int valid = 0;
    for (const auto& rep : replicates) {
      if (std::isnan(rep[i])) {
        ++table.missing_entries;
        continue;
      }
      sum += rep[i];
      ++valid;
    }
    if (valid > 0) table.baseline[i] = sum / valid;
  }
  return table;
}

BiasTable shuffle_baseline(const TokenStream& stream, const Vocabulary& vocab, int window,
                           const CorpusStatistic& stat, int n_shuffles, std::uint64_t seed,
                           int threads) {
  require(n_shuffles >= 1, "shuffle_baseline needs n_shuffles >= 1");
  const auto seeds = shuffle_seeds(seed, n_shuffles);
  return shuffle_baseline(stream, vocab, window, stat, seeds, threads);
}

double nearest_rank_percentile(std::vector<double> values, double pct) {
  require(!values.empty(), "percentile of an empty set");
  require(pct > 0.0 && pct <= 100.0, "percentile must be in (0, 100]");
  const auto n = static_cast<double>(values.size());
  auto rank = static_cast<std::size_t>(std::ceil(pct / 100.0 * n - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, values.size());
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(rank - 1), values.end());
  return values[rank - 1];
}

BiasTable percentile_baseline(std::span<const double> values,
                              std::span<const std::int64_t> counts, int n_bins, int min_bin,
                              double pct) {
  require(values.size() == counts.size(), "percentile_baseline: values and counts differ in length");
  require(n_bins >= 1, "n_bins must be >= 1");
  require(min_bin >= 1, "min_bin must be >= 1");

  std::int64_t max_count = 0;
  std::size_t usable = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::isnan(values[i]) || counts[i] < 1) continue;
    max_count = std::max(max_count, counts[i]);
    ++usable;
  }
  if (usable < static_cast<std::size_t>(min_bin))
    fail(ErrorCode::kInvalidArgument, "percentile_baseline needs at least min_bin=" +
                                          std::to_string(min_bin) + " words, got " +
                                          std::to_string(usable));

  // Raw log-spaced bins over [1, max n_w].
  const double log_max = std::log(static_cast<double>(max_count));
  std::vector<std::vector<std::size_t>> raw(static_cast<std::size_t>(n_bins));
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::isnan(values[i]) || counts[i] < 1) continue;
    int b = 0;
    if (log_max > 0.0)
      b = static_cast<int>(std::floor(std::log(static_cast<double>(counts[i])) / log_max * n_bins));
    b = std::clamp(b, 0, n_bins - 1);
    raw[static_cast<std::size_t>(b)].push_back(i);
  }

  // Merge from high to low frequency.
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::size_t> open;
  for (int b = n_bins - 1; b >= 0; --b) {
    const auto& members = raw[static_cast<std::size_t>(b)];
    open.insert(open.end(), members.begin(), members.end());
    if (open.size() >= static_cast<std::size_t>(min_bin)) {
      groups.push_back(std::move(open));
      open.clear();
    }
  }
  if (!open.empty()) groups.back().insert(groups.back().end(), open.begin(), open.end());

  BiasTable table;
  table.method = BiasMethod::kPercentile;
  table.n_bins = n_bins;
  table.min_bin = min_bin;
  table.percentile = pct;
  table.baseline.assign(values.size(), kNaN);
  table.bin_of.assign(values.size(), -1);
  table.retained_bins = static_cast<int>(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    std::vector<double> group_values;
    group_values.reserve(groups[g].size());
    for (auto i : groups[g]) group_values.push_back(values[i]);
    const double base = nearest_rank_percentile(std::move(group_values), pct);
    for (auto i : groups[g]) {
      table.baseline[i] = base;
      table.bin_of[i] = static_cast<int>(g);
    }
  }
  return table;
}

std::vector<double> bias_correct(std::span<const double> values, const BiasTable& table) {
  require(values.size() == table.baseline.size(), "bias_correct: values and baseline differ in length");
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i] - table.baseline[i];
  return out;
}

namespace {

std::vector<double> average_ranks(const std::vector<double>& x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(x.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i + 1;
    while (j < order.size() && x[order[j]] == x[order[i]]) ++j;
    const double mid = 0.5 * static_cast<double>(i + j - 1) + 1.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = mid;
    i = j;
  }
  return ranks;
}

}  // namespace

double spearman(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), "spearman: inputs differ in length");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::isnan(a[i]) || std::isnan(b[i])) continue;
    x.push_back(a[i]);
    y.push_back(b[i]);
  }
  require(x.size() >= 2, "spearman needs at least two complete pairs");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(rx.size());
  const double mean = (n + 1.0) / 2.0;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mean) * (ry[i] - mean);
    sxx += (rx[i] - mean) * (rx[i] - mean);
    syy += (ry[i] - mean) * (ry[i] - mean);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

void write_bias_table(const std::string& path, const Vocabulary& vocab, const BiasTable& table) {
  require(table.baseline.size() == vocab.size(), "bias table and vocabulary differ in size");
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIo, "cannot write bias file " + path);
  if (table.method == BiasMethod::kShuffle)
    out << "#method=shuffle n_shuffles=" << table.n_shuffles << '\n';
  else
    out << "#method=percentile n_bins=" << table.n_bins << " min_bin=" << table.min_bin
        << " percentile=" << table.percentile << '\n';
  char buf[64];
  for (std::size_t w = 0; w < vocab.size(); ++w) {
    std::snprintf(buf, sizeof buf, "%.6g", table.baseline[w]);
    out << vocab.word(static_cast<WordId>(w)) << '\t' << buf << '\n';
  }
  if (!out) fail(ErrorCode::kIo, "error writing bias file " + path);
}

}  // namespace infogain
