#include "infogain/infostats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>

#include "infogain/error.hpp"
#include "infogain/numeric.hpp"
#include "infogain/parallel.hpp"

namespace infogain {

namespace {

template <typename Range, typename Term>
double row_sum(const Range& range, Term&& term) {
  if (range.size() > kCompensatedThreshold) {
    CompensatedSum s;
    for (const auto& e : range) s.add(term(e));
    return s.value();
  }
  double s = 0.0;
  for (const auto& e : range) s += term(e);
  return s;
}

}  // namespace

double kl_divergence(std::span<const SparseProb> cond, std::span<const double> unigram) {
  for (const auto& e : cond) {
    if (e.p <= 0.0) continue;
    if (e.id < 0 || static_cast<std::size_t>(e.id) >= unigram.size() ||
        !(unigram[static_cast<std::size_t>(e.id)] > 0.0))
      fail(ErrorCode::kZeroSupport,
           "unigram probability is zero for context word id " + std::to_string(e.id));
  }
  const double kl = row_sum(cond, [&](const SparseProb& e) {
    return xlogx_over_y(e.p, unigram[static_cast<std::size_t>(e.id)]);
  });
  return std::max(kl, 0.0);
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  require(p.size() == q.size(), "kl_divergence: size mismatch");
  CompensatedSum s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (!(q[i] > 0.0))
      fail(ErrorCode::kZeroSupport, "reference probability is zero at index " + std::to_string(i));
    s.add(xlogx_over_y(p[i], q[i]));
  }
  return std::max(s.value(), 0.0);
}

double shannon_entropy(std::span<const SparseProb> cond) {
  const double h = -row_sum(cond, [](const SparseProb& e) { return xlogx(e.p); });
  return std::max(h, 0.0);
}

double shannon_entropy(std::span<const double> p) {
  CompensatedSum s;
  for (double x : p) s.add(-xlogx(x));
  return std::max(s.value(), 0.0);
}

double self_information(const Vocabulary& vocab, WordId w) {
  if (w < 0 || static_cast<std::size_t>(w) >= vocab.size())
    fail(ErrorCode::kUnknownWord, "unknown word id " + std::to_string(w));
  const std::int64_t n = vocab.count(w);
  require(n > 0, "self_information requires n_w > 0");
  return std::log(static_cast<double>(vocab.total())) - std::log(static_cast<double>(n));
}

double self_information(const Vocabulary& vocab, std::string_view word) {
  return self_information(vocab, vocab.id(word));
}

double chi_square(std::span<const CoocEntry> row, std::span<const double> unigram) {
  std::int64_t total = 0;
  for (const auto& e : row) total += e.count;
  if (total <= 0) fail(ErrorCode::kZeroSupport, "chi_square: empty row");
  const auto r = static_cast<double>(total);

  // Terms for w' absent from the row are (0 - r p)^2 / (r p) = r p, so the
  // full sum is r * (mass not covered by the row) plus the row terms.
  CompensatedSum mass;
  for (double p : unigram)
    if (p > 0.0) mass.add(p);
  double covered = 0.0;
  const double row_terms = row_sum(row, [&](const CoocEntry& e) {
    const double p = unigram[static_cast<std::size_t>(e.context)];
    if (!(p > 0.0)) return 0.0;
    covered += p;
    const double expected = r * p;
    const double diff = static_cast<double>(e.count) - expected;
    return diff * diff / expected;
  });
  const double chi2 = row_terms + r * std::max(mass.value() - covered, 0.0);
  return std::max(chi2, 0.0);
}

QuantizedKlEvaluator::QuantizedKlEvaluator(std::span<const double> unigram, int window)
    : sorted_p_(unigram.begin(), unigram.end()), window_(window) {
  require(window >= 1, "window must be >= 1");
  std::sort(sorted_p_.begin(), sorted_p_.end(), std::greater<>());
}

QuantizedKl QuantizedKlEvaluator::operator()(std::int64_t n_w) const {
  require(n_w >= 1, "quantized_kl requires n_w >= 1");
  const double scale = 2.0 * window_ * static_cast<double>(n_w);

  // Rounded counts are nonzero only while scale * p >= 0.5.
  std::size_t support = 0;
  bool exact = true;
  double rounded_total = 0.0;
  for (; support < sorted_p_.size(); ++support) {
    const double x = scale * sorted_p_[support];
    if (x < 0.5) break;
    const double c = std::round(x);
    if (c != x) exact = false;
    rounded_total += c;
  }
  for (std::size_t k = support; k < sorted_p_.size() && exact; ++k)
    if (sorted_p_[k] > 0.0) exact = false;

  if (support == 0) return {0.0, true};
  if (exact) return {0.0, false};

  CompensatedSum s;
  for (std::size_t k = 0; k < support; ++k) {
    const double p = sorted_p_[k];
    const double c = std::round(scale * p);
    s.add(xlogx_over_y(c / rounded_total, p));
  }
  return {std::max(s.value(), 0.0), false};
}

QuantizedKl quantized_kl(std::int64_t n_w, int window, std::span<const double> unigram) {
  return QuantizedKlEvaluator(unigram, window)(n_w);
}

double mutual_information(const CoocMatrix& cooc, const Vocabulary& vocab) {
  require(cooc.size() == vocab.size(), "co-occurrence matrix and vocabulary disagree in size");
  if (cooc.total() <= 0) fail(ErrorCode::kZeroSupport, "mutual_information: empty matrix");
  const auto unigram = vocab.unigram();
  CompensatedSum s;
  for (std::size_t w = 0; w < vocab.size(); ++w) {
    const auto id = static_cast<WordId>(w);
    if (cooc.row_sum(id) == 0) continue;
    const auto cond = conditional_distribution(cooc, id);
    s.add(unigram[w] * kl_divergence(cond, unigram));
  }
  return s.value();
}

std::vector<WordStats> compute_word_stats(const CoocMatrix& cooc, const Vocabulary& vocab,
                                          int threads) {
  require(cooc.size() == vocab.size(), "co-occurrence matrix and vocabulary disagree in size");
  const auto unigram = vocab.unigram();
  const QuantizedKlEvaluator quantized(unigram, cooc.window());
  std::vector<WordStats> stats(vocab.size());
  parallel_for(vocab.size(), threads, [&](std::size_t w) {
    const auto id = static_cast<WordId>(w);
    WordStats& s = stats[w];
    s.n = vocab.count(id);
    s.self_info = s.n > 0 ? self_information(vocab, id) : std::numeric_limits<double>::infinity();
    s.kl0 = s.n > 0 ? quantized(s.n).value : 0.0;
    if (cooc.row_sum(id) == 0) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      s.kl = s.entropy = s.chi2 = s.g2 = nan;
      s.valid = false;
      return;
    }
    const auto cond = conditional_distribution(cooc, id);
    s.kl = kl_divergence(cond, unigram);
    s.entropy = shannon_entropy(cond);
    s.chi2 = chi_square(cooc.row(id), unigram);
    s.g2 = 2.0 * static_cast<double>(s.n) * s.kl;
    s.valid = true;
  });
  return stats;
}

std::vector<double> kl_values(const CoocMatrix& cooc, const Vocabulary& vocab, int threads) {
  require(cooc.size() == vocab.size(), "co-occurrence matrix and vocabulary disagree in size");
  const auto unigram = vocab.unigram();
  std::vector<double> out(vocab.size(), std::numeric_limits<double>::quiet_NaN());
  parallel_for(vocab.size(), threads, [&](std::size_t w) {
    const auto id = static_cast<WordId>(w);
    if (cooc.row_sum(id) > 0) out[w] = kl_divergence(conditional_distribution(cooc, id), unigram);
  });
  return out;
}

std::vector<double> entropy_values(const CoocMatrix& cooc, int threads) {
  std::vector<double> out(cooc.size(), std::numeric_limits<double>::quiet_NaN());
  parallel_for(cooc.size(), threads, [&](std::size_t w) {
    const auto id = static_cast<WordId>(w);
    if (cooc.row_sum(id) > 0) out[w] = shannon_entropy(conditional_distribution(cooc, id));
  });
  return out;
}

namespace {

std::string fmt6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

void write_word_stats(std::ostream& out, const Vocabulary& vocab,
                      std::span<const WordStats> stats) {
  require(stats.size() == vocab.size(), "stats and vocabulary disagree in size");
  out << "word\tn_w\tkl\tentropy\tself_info\tchi2\tg2\tkl0\n";
  for (std::size_t w = 0; w < stats.size(); ++w) {
    const auto& s = stats[w];
    out << vocab.word(static_cast<WordId>(w)) << '\t' << s.n << '\t' << fmt6(s.kl) << '\t'
        << fmt6(s.entropy) << '\t' << fmt6(s.self_info) << '\t' << fmt6(s.chi2) << '\t'
        << fmt6(s.g2) << '\t' << fmt6(s.kl0) << '\n';
  }
}

void write_word_stats(const std::string& path, const Vocabulary& vocab,
                      std::span<const WordStats> stats) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIo, "cannot write stats file " + path);
  write_word_stats(out, vocab, stats);
  if (!out) fail(ErrorCode::kIo, "error writing stats file " + path);
}

std::vector<WordStats> read_word_stats(const std::string& path, const Vocabulary& vocab) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open stats file " + path);
  std::string line;
  std::getline(in, line);
  std::vector<WordStats> stats(vocab.size());
  std::vector<bool> seen(vocab.size(), false);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string word, n, kl, h, info, chi2, g2, kl0;
    if (!std::getline(fields, word, '\t') || !std::getline(fields, n, '\t') ||
        !std::getline(fields, kl, '\t') || !std::getline(fields, h, '\t') ||
        !std::getline(fields, info, '\t') || !std::getline(fields, chi2, '\t') ||
        !std::getline(fields, g2, '\t') || !std::getline(fields, kl0))
      fail(ErrorCode::kParse, "bad stats line: " + line);
    const WordId id = vocab.id(word);
    auto& s = stats[static_cast<std::size_t>(id)];
    try {
      s.n = std::stoll(n);
      s.kl = std::stod(kl);
      s.entropy = std::stod(h);
      s.self_info = std::stod(info);
      s.chi2 = std::stod(chi2);
      s.g2 = std::stod(g2);
      s.kl0 = std::stod(kl0);
    } catch (const std::exception&) {
      fail(ErrorCode::kParse, "bad stats value: " + line);
    }
    s.valid = !std::isnan(s.kl);
    seen[static_cast<std::size_t>(id)] = true;
  }
  for (std::size_t w = 0; w < seen.size(); ++w)
    if (!seen[w]) fail(ErrorCode::kParse, "stats file lacks word " + vocab.word(static_cast<WordId>(w)));
  return stats;
}

}  // namespace infogain
