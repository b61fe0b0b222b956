#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "infogain/corpus.hpp"
#include "infogain/random.hpp"
#include "infogain/sampling.hpp"

namespace infogain {

// Defaults follow the reference training setup (d=300, 100 epochs, h=10,
// 5 negatives, lr 0.025 decayed linearly to 1e-4, min count 1).
struct TrainConfig {
  int dim = 300;
  int epochs = 100;
  int window = 10;
  int negatives = 5;
  double lr_initial = 0.025;
  double lr_min = 1.0e-4;
  std::int64_t min_count = 1;
  std::uint64_t seed = 1;
  int threads = 1;
  bool deterministic = true;
  // Training aborts once any embedding norm exceeds this.
  double norm_guard = 1.0e3;

  // Throws kInvalidArgument naming the offending field.
  void validate() const;
};

// Row-major |V| x d matrices: u_w (word) and v_w' (context).
class EmbeddingSet {
 public:
  EmbeddingSet() = default;
  EmbeddingSet(std::size_t rows, int dim);

  std::size_t rows() const { return rows_; }
  int dim() const { return dim_; }

  std::span<float> u(std::size_t w) { return {u_.data() + w * stride(), stride()}; }
  std::span<const float> u(std::size_t w) const { return {u_.data() + w * stride(), stride()}; }
  std::span<float> v(std::size_t w) { return {v_.data() + w * stride(), stride()}; }
  std::span<const float> v(std::size_t w) const { return {v_.data() + w * stride(), stride()}; }

  std::vector<float>& u_data() { return u_; }
  const std::vector<float>& u_data() const { return u_; }
  std::vector<float>& v_data() { return v_; }
  const std::vector<float>& v_data() const { return v_; }

  bool all_finite() const;
  bool operator==(const EmbeddingSet&) const = default;

 private:
  std::size_t stride() const { return static_cast<std::size_t>(dim_); }

  std::size_t rows_ = 0;
  int dim_ = 0;
  std::vector<float> u_;
  std::vector<float> v_;
};

// q(w) proportional to n_w^{3/4}.
class NoiseDistribution {
 public:
  explicit NoiseDistribution(const Vocabulary& vocab);
  explicit NoiseDistribution(std::span<const std::int64_t> counts);

  std::span<const double> q() const { return q_; }
  WordId sample(Rng& rng) const { return static_cast<WordId>(alias_.sample(rng)); }

 private:
  std::vector<double> q_;
  AliasTable alias_;
};

// Sigmoid of the pre-activation, clamped to +-30.
double positive_probability(double dot);
double positive_probability(std::span<const float> u, std::span<const float> v);
// p / (p + nu q): the logistic form the sigmoid models.
double nce_ratio(double p, int negatives, double q);

// Linear decay from lr_initial to lr_min over total_pairs, clamped.
double learning_rate(const TrainConfig& config, std::uint64_t pair, std::uint64_t total_pairs);

// Number of (center, context) pairs in one pass with a +-h window.
std::uint64_t pairs_per_epoch(std::size_t tokens, int window);

// Optional instrumentation; all callbacks run on the training thread(s).
struct TrainHooks {
  std::function<void(const EmbeddingSet&)> on_init;
  // Called for every positive pair with its global index and learning rate
  // (deterministic mode only).
  std::function<void(std::uint64_t pair, double lr)> on_pair;
  std::function<void(int epoch, const EmbeddingSet&)> on_epoch_end;
};

// Initial U entries uniform in [-0.5/d, 0.5/d]; V zero.
EmbeddingSet initialize_embeddings(std::size_t rows, int dim, std::uint64_t seed);

// SGNS by SGD: every (center w, context w') inside the fixed +-h window is a
// positive pair, followed by `negatives` independent draws from q.
// deterministic=true (or threads=1) gives bitwise-reproducible output;
// threads > 1 runs unsynchronized (hogwild) workers over corpus segments.
// Throws kDiverged on non-finite activations or a norm above the guard.
EmbeddingSet train(const TokenStream& stream, const Vocabulary& vocab, const TrainConfig& config,
                   const TrainHooks& hooks = {});

struct WordPair {
  WordId center;
  WordId context;
};

// Uniformly sampled positive pairs from the stream.
std::vector<WordPair> sample_pairs(const TokenStream& stream, int window, std::size_t count,
                                   std::uint64_t seed);

// Mean over pairs of log s(<u,v>) + sum_i log s(-<u,v_i''>), negatives drawn
// from the seeded noise generator (the same draws for the same seed).
double sgns_objective(const EmbeddingSet& emb, std::span<const WordPair> pairs,
                      const NoiseDistribution& noise, int negatives, std::uint64_t seed);

// word2vec text format: "<|V|> <d>" then "word v1 ... vd".
void write_word2vec(const std::string& path, const Vocabulary& vocab,
                    const EmbeddingSet& emb, bool context);
// Reads both matrices; rows are aligned to vocab by word.
EmbeddingSet read_word2vec(const std::string& u_path, const std::string& v_path,
                           const Vocabulary& vocab);

}  // namespace infogain
