#include "infogain/fixtures.hpp"

#include <cmath>
#include <map>
#include <string>

#include "infogain/error.hpp"
#include "infogain/numeric.hpp"
#include "infogain/random.hpp"
#include "infogain/sampling.hpp"

namespace infogain {

void SyntheticSpec::validate() const {
  require(vocab_size >= 2, "synthetic vocabulary needs at least 2 words");
  require(dim >= 1, "synthetic dimension must be >= 1");
  require(radius > 0.0, "synthetic radius must be positive");
  require(corpus_length >= 0, "synthetic corpus length must be >= 0");
}

Eigen::VectorXd SyntheticModel::mixture(const Eigen::VectorXd& weights) const {
  require(weights.size() == cond.rows(), "mixture weights differ from vocabulary size");
  return cond.transpose() * weights;
}

SyntheticModel gen_expfam(const SyntheticSpec& spec) {
  spec.validate();
  const int n = spec.vocab_size;
  const int d = spec.dim;
  Rng rng(derive_seed(spec.seed, "gen-expfam"));

  Eigen::VectorXd q(n);
  for (int i = 0; i < n; ++i) q(i) = -std::log(1.0 - rng.uniform());
  q /= q.sum();

  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  Eigen::MatrixXd v(n, d);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < d; ++k) v(i, k) = scale * rng.normal();

  Eigen::VectorXd u0(d);
  for (int k = 0; k < d; ++k) u0(k) = rng.normal();

  Eigen::MatrixXd u(n, d);
  for (int w = 0; w < n; ++w) {
    Eigen::VectorXd dir(d);
    for (int k = 0; k < d; ++k) dir(k) = rng.normal();
    const double len = dir.norm();
    if (len > 0.0) dir /= len;
    u.row(w) = (u0 + spec.radius * rng.uniform() * dir).transpose();
  }

  SyntheticModel out{ExpFamilyModel(q, v), u0, u, Eigen::MatrixXd(n, n), Eigen::VectorXd(n), {}};

  // Exact distributions by explicit normalization, independent of psi().
  const auto softmax = [&](const Eigen::VectorXd& param) {
    const Eigen::VectorXd logits = v * param;
    const double shift = logits.maxCoeff();
    Eigen::VectorXd p(n);
    for (int i = 0; i < n; ++i) p(i) = q(i) * std::exp(logits(i) - shift);
    return Eigen::VectorXd(p / p.sum());
  };
  out.unigram = softmax(u0);
  out.kl.resize(static_cast<std::size_t>(n));
  for (int w = 0; w < n; ++w) {
    const Eigen::VectorXd p = softmax(u.row(w).transpose());
    out.cond.row(w) = p.transpose();
    CompensatedSum kl;
    for (int i = 0; i < n; ++i) kl.add(xlogx_over_y(p(i), out.unigram(i)));
    out.kl[static_cast<std::size_t>(w)] = kl.value();
  }
  return out;
}

CoocMatrix sample_synthetic_cooc(const SyntheticModel& synthetic, const SyntheticSpec& spec) {
  spec.validate();
  const auto n = static_cast<std::size_t>(synthetic.cond.rows());
  Rng rng(derive_seed(spec.seed, "synthetic-cooc"));
  const std::vector<double> unigram(synthetic.unigram.data(), synthetic.unigram.data() + n);
  const AliasTable words(unigram);
  std::vector<AliasTable> rows;
  rows.reserve(n);
  std::vector<double> buf(n);
  for (std::size_t w = 0; w < n; ++w) {
    for (std::size_t i = 0; i < n; ++i) buf[i] = synthetic.cond(static_cast<Eigen::Index>(w), static_cast<Eigen::Index>(i));
    rows.emplace_back(buf);
  }
  std::vector<std::map<WordId, std::int64_t>> counts(n);
  for (std::int64_t t = 0; t < spec.corpus_length; ++t) {
    const auto w = words.sample(rng);
    const auto c = static_cast<WordId>(rows[w].sample(rng));
    ++counts[w][c];
  }
  std::vector<std::vector<CoocEntry>> out(n);
  for (std::size_t w = 0; w < n; ++w)
    for (const auto& [c, k] : counts[w]) out[w].push_back({c, k});
  return CoocMatrix(1, std::move(out));
}

TokenStream gen_zipf_tokens(int vocab_size, std::int64_t length, double exponent,
                            std::uint64_t seed) {
  require(vocab_size >= 1, "Zipf vocabulary must be nonempty");
  require(exponent > 0.0, "Zipf exponent must be positive");
  require(length >= 0, "Zipf corpus length must be >= 0");
  TokenStream stream;
  if (length == 0) return stream;
  std::vector<double> weights(static_cast<std::size_t>(vocab_size));
  for (int k = 0; k < vocab_size; ++k) weights[static_cast<std::size_t>(k)] = std::pow(k + 1.0, -exponent);
  const AliasTable table(weights);
  Rng rng(derive_seed(seed, "zipf-corpus"));
  stream.ids.resize(static_cast<std::size_t>(length));
  for (auto& id : stream.ids) id = static_cast<WordId>(table.sample(rng));
  return stream;
}

Corpus gen_zipf_corpus(int vocab_size, std::int64_t length, double exponent, std::uint64_t seed) {
  const TokenStream ranks = gen_zipf_tokens(vocab_size, length, exponent, seed);
  Corpus corpus;
  if (ranks.empty()) return corpus;
  const auto counts = count_ids(ranks, static_cast<std::size_t>(vocab_size));
  std::vector<std::pair<std::string, std::int64_t>> entries;
  for (int k = 0; k < vocab_size; ++k)
    if (counts[static_cast<std::size_t>(k)] > 0)
      entries.emplace_back("w" + std::to_string(k), counts[static_cast<std::size_t>(k)]);
  corpus.vocab = Vocabulary(std::move(entries));
  std::vector<WordId> remap(static_cast<std::size_t>(vocab_size), -1);
  for (int k = 0; k < vocab_size; ++k)
    if (counts[static_cast<std::size_t>(k)] > 0)
      remap[static_cast<std::size_t>(k)] = corpus.vocab.id("w" + std::to_string(k));
  corpus.stream.ids.reserve(ranks.size());
  for (WordId r : ranks.ids) corpus.stream.ids.push_back(remap[static_cast<std::size_t>(r)]);
  return corpus;
}

Corpus tiny_corpus(std::string_view text, std::int64_t min_count) {
  const auto tokens = tokenize(text);
  return build_vocab(tokens, min_count);
}

CoocMatrix circular_cooccurrences(const TokenStream& stream, std::size_t vocab_size, int window) {
  require(window >= 1, "window must be >= 1");
  const auto n = static_cast<std::int64_t>(stream.size());
  std::vector<std::map<WordId, std::int64_t>> counts(vocab_size);
  for (std::int64_t i = 0; i < n; ++i)
    for (int d = -window; d <= window; ++d) {
      if (d == 0) continue;
      const std::int64_t j = ((i + d) % n + n) % n;
      ++counts[static_cast<std::size_t>(stream.ids[static_cast<std::size_t>(i)])]
              [stream.ids[static_cast<std::size_t>(j)]];
    }
  std::vector<std::vector<CoocEntry>> rows(vocab_size);
  for (std::size_t w = 0; w < vocab_size; ++w)
    for (const auto& [c, k] : counts[w]) rows[w].push_back({c, k});
  return CoocMatrix(window, std::move(rows));
}

}  // namespace infogain
