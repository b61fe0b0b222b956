#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "infogain/cooc.hpp"
#include "infogain/corpus.hpp"
#include "infogain/geometry.hpp"

// Seeded generators for synthetic test data.
namespace infogain {

struct SyntheticSpec {
  int vocab_size = 500;
  int dim = 50;
  double radius = 0.1;  // max ||u_w - u_0||
  std::uint64_t seed = 1;
  std::int64_t corpus_length = 0;  // pairs drawn by sample_synthetic_cooc

  void validate() const;
};

// Exponential-family world: p(.|w) = p(.|u_w) and p(.) = p(.|u_0).
struct SyntheticModel {
  ExpFamilyModel model;
  Eigen::VectorXd u0;
  Eigen::MatrixXd u;          // |V| x d, rows u_w
  Eigen::MatrixXd cond;       // |V| x |V|, rows p(.|w)
  Eigen::VectorXd unigram;    // p(.|u_0)
  std::vector<double> kl;     // KL(p(.|w) || p(.)) by direct summation

  // Sum_w weights_w p(.|w).
  Eigen::VectorXd mixture(const Eigen::VectorXd& weights) const;
};

// q ~ normalized Exp(1) draws, v_w' ~ N(0, 1/d), u_0 ~ N(0, 1),
// u_w = u_0 + r U(0,1) times a uniform direction.
SyntheticModel gen_expfam(const SyntheticSpec& spec);

// corpus_length (w, w') pairs: w ~ p(.), w' ~ p(.|w).
CoocMatrix sample_synthetic_cooc(const SyntheticModel& synthetic, const SyntheticSpec& spec);

// I.i.d. draws of ranks 0..V-1 with P(k) proportional to (k+1)^-exponent.
TokenStream gen_zipf_tokens(int vocab_size, std::int64_t length, double exponent,
                            std::uint64_t seed);
// The same draws as a corpus over words "w<rank>", ids re-sorted by count.
Corpus gen_zipf_corpus(int vocab_size, std::int64_t length, double exponent, std::uint64_t seed);

// Whitespace-tokenized text as a corpus.
Corpus tiny_corpus(std::string_view text, std::int64_t min_count = 1);

// Co-occurrence counts with the stream treated as a ring: no boundary
// effects, so every row sums to 2h n_w.
CoocMatrix circular_cooccurrences(const TokenStream& stream, std::size_t vocab_size, int window);

}  // namespace infogain
