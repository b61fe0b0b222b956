#include <cmath>
#include <vector>

#include "doctest.h"
#include "infogain/error.hpp"
#include "infogain/fixtures.hpp"
#include "infogain/geometry.hpp"
#include "infogain/random.hpp"

using namespace infogain;

TEST_CASE("SyntheticSpec validation") {
  SyntheticSpec s;
  CHECK_NOTHROW(s.validate());
  s.radius = 0;
  CHECK_THROWS_AS(s.validate(), Error);
  s.radius = 0.1;
  s.vocab_size = 1;
  CHECK_THROWS_AS(s.validate(), Error);
}

TEST_CASE("gen_expfam is seeded") {
  SyntheticSpec spec;
  spec.vocab_size = 40;
  spec.dim = 4;
  const auto a = gen_expfam(spec);
  const auto b = gen_expfam(spec);
  CHECK(a.u == b.u);
  CHECK(a.model.q() == b.model.q());
  CHECK(a.model.suff_stats() == b.model.suff_stats());
  CHECK(a.kl == b.kl);
  spec.seed = 2;
  CHECK(gen_expfam(spec).u != a.u);
}

TEST_CASE("gen_expfam geometry") {
  SyntheticSpec spec;
  spec.vocab_size = 100;
  spec.dim = 16;
  spec.radius = 0.3;
  const auto s = gen_expfam(spec);
  CHECK(std::abs(s.model.q().sum() - 1.0) <= 1e-12);
  CHECK((s.model.q().array() > 0).all());
  for (int w = 0; w < spec.vocab_size; ++w) {
    CHECK((s.u.row(w).transpose() - s.u0).norm() <= spec.radius + 1e-12);
    CHECK(std::abs(s.cond.row(w).sum() - 1.0) <= 1e-12);
    CHECK((s.cond.row(w).transpose() - s.model.distribution(s.u.row(w).transpose())).cwiseAbs().maxCoeff() <= 1e-12);
  }
  CHECK((s.unigram - s.model.distribution(s.u0)).cwiseAbs().maxCoeff() <= 1e-12);
  // elements of v are O(d^-1/2)
  const double rms = std::sqrt(s.model.suff_stats().squaredNorm() / static_cast<double>(s.model.suff_stats().size()));
  CHECK(rms == doctest::Approx(1.0 / std::sqrt(16.0)).epsilon(0.15));
}

TEST_CASE("vanishing radius gives vanishing KL") {
  double prev = INFINITY;
  for (double r : {1e-1, 1e-2, 1e-3, 1e-4}) {
    SyntheticSpec spec;
    spec.vocab_size = 50;
    spec.dim = 5;
    spec.radius = r;
    double mx = 0;
    for (double k : gen_expfam(spec).kl) mx = std::max(mx, k);
    CHECK(mx < prev);
    prev = mx;
  }
  CHECK(prev <= 1e-8);
}

TEST_CASE("mixture of conditionals") {
  SyntheticSpec spec;
  spec.vocab_size = 30;
  spec.dim = 3;
  const auto s = gen_expfam(spec);
  Rng rng(4);
  Eigen::VectorXd w(spec.vocab_size);
  for (int i = 0; i < spec.vocab_size; ++i) w(i) = rng.uniform();
  w /= w.sum();
  const auto m = s.mixture(w);
  Eigen::VectorXd manual = Eigen::VectorXd::Zero(spec.vocab_size);
  for (int i = 0; i < spec.vocab_size; ++i) manual += w(i) * s.cond.row(i).transpose();
  CHECK((m - manual).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(std::abs(m.sum() - 1.0) <= 1e-12);
}

TEST_CASE("sampled synthetic co-occurrences follow the model") {
  SyntheticSpec spec;
  spec.vocab_size = 20;
  spec.dim = 3;
  spec.radius = 1.0;
  spec.corpus_length = 400000;
  const auto s = gen_expfam(spec);
  const auto m = sample_synthetic_cooc(s, spec);
  CHECK(m.total() == spec.corpus_length);
  for (int w = 0; w < 3; ++w) {
    const double n = static_cast<double>(m.row_sum(w));
    CHECK(n / static_cast<double>(m.total()) == doctest::Approx(s.unigram(w)).epsilon(0.05));
    for (int c = 0; c < spec.vocab_size; ++c) {
      const double p = s.cond(w, c);
      CHECK(std::abs(static_cast<double>(m.get(w, c)) / n - p) <= 5 * std::sqrt(p * (1 - p) / n) + 1e-12);
    }
  }
}

TEST_CASE("zipf corpus") {
  CHECK(gen_zipf_tokens(100, 0, 1.0, 1).empty());
  CHECK(gen_zipf_corpus(100, 0, 1.0, 1).stream.empty());
  CHECK(gen_zipf_tokens(100, 1000, 1.0, 3).ids == gen_zipf_tokens(100, 1000, 1.0, 3).ids);
  CHECK_THROWS_AS(gen_zipf_tokens(100, 10, 0.0, 1), Error);
  for (double s : {0.8, 1.0, 1.3}) {
    const auto t = gen_zipf_tokens(1000, 1000000, s, 5);
    const auto counts = count_ids(t, 1000);
    std::vector<double> x, y;
    for (std::size_t k = 0; k < counts.size(); ++k)
      if (counts[k] >= 20) {
        x.push_back(std::log(static_cast<double>(k + 1)));
        y.push_back(std::log(static_cast<double>(counts[k])));
      }
    const auto f = fit_linear(x, y);
    CHECK(f.slope == doctest::Approx(-s).epsilon(0.1 / s));
    CHECK(std::abs(f.slope + s) <= 0.1);
  }
  const auto c = gen_zipf_corpus(50, 5000, 1.0, 2);
  for (std::size_t i = 1; i < c.vocab.size(); ++i) CHECK(c.vocab.count(static_cast<WordId>(i)) <= c.vocab.count(static_cast<WordId>(i - 1)));
}

TEST_CASE("tiny corpus") {
  const auto c = tiny_corpus("b a b", 1);
  CHECK(c.vocab.word(0) == "b");
  CHECK(c.stream.ids == std::vector<WordId>{0, 1, 0});
}
