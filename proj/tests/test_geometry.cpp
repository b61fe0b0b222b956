#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "infogain/error.hpp"
#include "infogain/fixtures.hpp"
#include "infogain/geometry.hpp"
#include "oracles.hpp"

using namespace infogain;

namespace {

ExpFamilyModel two_point() {
  Eigen::VectorXd q(2);
  q << 0.5, 0.5;
  Eigen::MatrixXd v(2, 1);
  v << 1.0, -1.0;
  return ExpFamilyModel(q, v);
}

Eigen::VectorXd scalar(double x) {
  Eigen::VectorXd u(1);
  u << x;
  return u;
}

Eigen::MatrixXd random_psd(Rng& rng, int d, int rank) {
  Eigen::MatrixXd a(d, rank);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < rank; ++k) a(i, k) = rng.normal();
  return a * a.transpose();
}

}  // namespace

TEST_CASE("moments: hand fixtures") {
  Eigen::MatrixXd u(1, 2), v(1, 2);
  u << 0.3, -0.7;
  v << 1.0, 2.0;
  Eigen::VectorXd w(1);
  w << 1.0;
  const auto one = compute_moments(u, v, w);
  CHECK(one.u_bar.isApprox(u.row(0).transpose()));
  CHECK(one.g.cwiseAbs().maxCoeff() == 0.0);

  Eigen::MatrixXd u2 = Eigen::MatrixXd::Zero(2, 2), v2(2, 2);
  v2 << 1, 0, -1, 0;
  Eigen::VectorXd half(2);
  half << 0.5, 0.5;
  const auto m = compute_moments(u2, v2, half);
  CHECK(m.v_bar.norm() == 0.0);
  CHECK(m.g(0, 0) == 1.0);
  CHECK(m.g(0, 1) == 0.0);
  CHECK(m.g(1, 1) == 0.0);
}

TEST_CASE("moments: alternate formula and invariants") {
  Rng rng(21);
  const auto corpus = gen_zipf_corpus(150, 20000, 1.0, 3);
  EmbeddingSet emb(corpus.vocab.size(), 6);
  for (auto& x : emb.u_data()) x = static_cast<float>(rng.normal());
  for (auto& x : emb.v_data()) x = static_cast<float>(rng.normal());
  const auto m = compute_moments(emb, corpus.vocab);
  const auto U = word_matrix(emb), V = context_matrix(emb);
  Eigen::VectorXd ub = Eigen::VectorXd::Zero(6), vb = Eigen::VectorXd::Zero(6);
  Eigen::MatrixXd second = Eigen::MatrixXd::Zero(6, 6);
  for (std::size_t w = 0; w < corpus.vocab.size(); ++w) {
    const double p = corpus.vocab.probability(static_cast<WordId>(w));
    ub += p * U.row(static_cast<Eigen::Index>(w)).transpose();
    vb += p * V.row(static_cast<Eigen::Index>(w)).transpose();
    second += p * V.row(static_cast<Eigen::Index>(w)).transpose() * V.row(static_cast<Eigen::Index>(w));
  }
  CHECK((m.u_bar - ub).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((m.v_bar - vb).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((m.g - (second - vb * vb.transpose())).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK((m.g - m.g.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.g);
  CHECK(es.eigenvalues().minCoeff() >= -1e-10);
}

TEST_CASE("matrix_sqrt") {
  CHECK(matrix_sqrt(Eigen::MatrixXd::Identity(4, 4)).isApprox(Eigen::MatrixXd::Identity(4, 4)));
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
  d.diagonal() << 4, 9;
  const auto s = matrix_sqrt(d);
  CHECK(s(0, 0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s(1, 1) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(std::abs(s(0, 1)) <= 1e-14);

  Rng rng(4);
  for (int t = 0; t < 50; ++t) {
    const int dim = 1 + static_cast<int>(rng.below(12));
    const auto g = random_psd(rng, dim, 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(dim))));
    const auto r = matrix_sqrt(g);
    CHECK((r - r.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, r.cwiseAbs().maxCoeff()));
    CHECK((r * r - g).cwiseAbs().maxCoeff() <= 1e-8 * g.cwiseAbs().maxCoeff());
  }
  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(2, 2);
  bad.diagonal() << 1, -0.5;
  try {
    matrix_sqrt(bad);
    FAIL("expected not-PSD");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotPsd);
  }
}

TEST_CASE("whitened norms: both paths") {
  Rng rng(9);
  for (int t = 0; t < 30; ++t) {
    const int d = 2 + static_cast<int>(rng.below(8));
    const int n = 20;
    Eigen::MatrixXd u(n, d), v(n, d);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < d; ++k) {
        u(i, k) = rng.normal();
        v(i, k) = rng.normal();
      }
    Eigen::VectorXd w = Eigen::VectorXd::Ones(n) / n;
    const auto m = compute_moments(u, v, w);
    const auto via_s = whitened_norms(u, make_whitening(m));
    const auto via_q = quadratic_norms(u, m.u_bar, m.g);
    for (int i = 0; i < n; ++i)
      CHECK(std::abs(via_s[static_cast<std::size_t>(i)] - via_q[static_cast<std::size_t>(i)]) <=
            1e-9 * std::max(1.0, std::abs(via_q[static_cast<std::size_t>(i)])));
  }
  Eigen::MatrixXd u(2, 2);
  u << 1, 2, 3, 5;
  Eigen::VectorXd c(2);
  c << 1, 2;
  const auto id = quadratic_norms(u, c, Eigen::MatrixXd::Identity(2, 2));
  CHECK(id[0] == 0.0);
  CHECK(id[1] == doctest::Approx(4 + 9).epsilon(1e-15));
  WhiteningTransform t{Eigen::MatrixXd::Identity(2, 2), c};
  CHECK(whitened_norms(u, t)[1] == doctest::Approx(13.0).epsilon(1e-15));
}

TEST_CASE("estimate_u0") {
  Vocabulary vocab({{"a", 6}, {"b", 3}, {"c", 1}, {"d", 1}});
  EmbeddingSet emb(4, 2);
  const float rows[4][2] = {{1, 0}, {0, 1}, {3, 3}, {9, 9}};
  for (int w = 0; w < 4; ++w)
    for (int k = 0; k < 2; ++k) emb.u(static_cast<std::size_t>(w))[static_cast<std::size_t>(k)] = rows[w][k];
  const auto top1 = estimate_u0(emb, vocab, 1);
  CHECK(top1(0) == 1.0);
  CHECK(top1(1) == 0.0);
  const auto top3 = estimate_u0(emb, vocab, 3);
  CHECK(top3(0) == doctest::Approx((6 * 1 + 3 * 0 + 1 * 3) / 10.0).epsilon(1e-15));
  CHECK(top3(1) == doctest::Approx((6 * 0 + 3 * 1 + 1 * 3) / 10.0).epsilon(1e-15));
  CHECK_THROWS_AS(estimate_u0(emb, vocab, 5), Error);
  CHECK_THROWS_AS(estimate_u0(emb, vocab, 0), Error);

  Vocabulary equal({{"x", 2}, {"y", 2}, {"z", 2}});
  EmbeddingSet e3(3, 1);
  e3.u(0)[0] = 1;
  e3.u(1)[0] = 2;
  e3.u(2)[0] = 6;
  CHECK(estimate_u0(e3, equal, 3)(0) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("exponential family: closed forms") {
  const auto m = two_point();
  CHECK(m.psi(scalar(0.0)) == 0.0);
  CHECK(m.psi(scalar(0.5)) == doctest::Approx(std::log(std::cosh(0.5))).epsilon(1e-14));
  CHECK(m.psi(scalar(0.5)) == doctest::Approx(0.120115).epsilon(1e-6));
  CHECK(std::abs(m.eta(scalar(0.0))(0)) <= 1e-16);
  CHECK(m.eta(scalar(0.5))(0) == doctest::Approx(0.462117).epsilon(1e-6));
  CHECK(m.fisher(scalar(0.0))(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(expfam_kl(m, scalar(0.3), scalar(0.3)) == 0.0);
  const double kl = expfam_kl(m, scalar(0.5), scalar(0.0));
  CHECK(kl == doctest::Approx(0.110944).epsilon(1e-6));
  CHECK(std::abs(kl - oracle::brute_kl(m.q(), m.suff_stats(), scalar(0.5), scalar(0.0))) <= 1e-12);
}

TEST_CASE("exponential family: random models against oracles") {
  Rng rng(31);
  for (int t = 0; t < 100; ++t) {
    const int V = 2 + static_cast<int>(rng.below(15));
    const int d = 1 + static_cast<int>(rng.below(4));
    const auto m = oracle::random_model(rng, V, d);
    const auto u = oracle::random_vector(rng, d, 0.5);
    const auto u2 = oracle::random_vector(rng, d, 0.5);
    CHECK((m.eta(u) - oracle::fd_gradient(m, u, 1e-5)).cwiseAbs().maxCoeff() <= 1e-6);
    CHECK((m.fisher(u) - oracle::fd_hessian(m, u, 1e-4)).cwiseAbs().maxCoeff() <= 1e-5);
    CHECK(std::abs(expfam_kl(m, u, u2) - oracle::brute_kl(m.q(), m.suff_stats(), u, u2)) <= 1e-10);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.fisher(u));
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);
    CHECK(m.psi(0.5 * (u + u2)) <= 0.5 * (m.psi(u) + m.psi(u2)) + 1e-12);
    CHECK(std::abs(m.distribution(u).sum() - 1.0) <= 1e-12);
  }
}

TEST_CASE("quadratic approximation is third order") {
  Rng rng(77);
  const auto m = oracle::random_model(rng, 12, 3);
  const auto u1 = oracle::random_vector(rng, 3, 0.3);
  const Eigen::VectorXd dir = oracle::random_vector(rng, 3).normalized();
  std::vector<double> err1, err2;
  for (double eps : {0.2, 0.1, 0.05}) {
    const Eigen::VectorXd u2 = u1 + eps * dir;
    const Eigen::VectorXd du = u1 - u2;
    const double kl = expfam_kl(m, u1, u2);
    err1.push_back(std::abs(kl - 0.5 * du.dot(m.fisher(u1) * du)));
    err2.push_back(std::abs(kl - 0.5 * du.dot(m.fisher(u2) * du)));
  }
  for (std::size_t i = 1; i < err1.size(); ++i) {
    CHECK(err1[i - 1] / err1[i] >= 6.0);
    CHECK(err1[i - 1] / err1[i] <= 10.0);
    CHECK(err2[i - 1] / err2[i] >= 6.0);
    CHECK(err2[i - 1] / err2[i] <= 10.0);
  }
}

TEST_CASE("fit_linear") {
  const std::vector<double> x{1, 2, 3}, y{2, 4, 6};
  const auto f = fit_linear(x, y);
  CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::abs(f.intercept) <= 1e-14);
  CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(f.n_points == 3);
  const std::vector<double> flat{5, 5, 5};
  const auto g = fit_linear(x, flat);
  CHECK(g.slope == 0.0);
  CHECK(g.r_squared == 0.0);
  CHECK_THROWS_AS(fit_linear(flat, y), Error);
  CHECK_THROWS_AS(fit_linear(std::vector<double>{1}, std::vector<double>{1}), Error);

  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> xs(500), ys(500);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      xs[i] = rng.uniform(-3, 10);
      ys[i] = 1.7 * xs[i] - 0.4 + rng.normal();
    }
    const auto a = fit_linear(xs, ys);
    const auto b = oracle::normal_equations(xs, ys);
    CHECK(std::abs(a.slope - b.slope) <= 1e-10);
    CHECK(std::abs(a.intercept - b.intercept) <= 1e-10);
    CHECK(std::abs(a.r_squared - b.r2) <= 1e-10);
    CHECK(a.r_squared >= 0.0);
    CHECK(a.r_squared <= 1.0);
  }

  std::vector<bool> keep_v{true, false, true, true};
  const std::vector<double> mx{1, 100, 2, 3}, my{1, -50, 2, 3};
  const bool keep[4] = {true, false, true, true};
  const auto masked = fit_linear(mx, my, std::span<const bool>(keep, 4));
  CHECK(masked.n_points == 3);
  CHECK(masked.slope == doctest::Approx(1.0).epsilon(1e-14));
  const auto pred = fit_linear(mx, my, [&](std::size_t i) { return static_cast<bool>(keep_v[i]); });
  CHECK(pred.slope == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("truncate_extremes drops tails of each axis") {
  std::vector<double> x(1000), y(1000);
  for (int i = 0; i < 1000; ++i) {
    x[static_cast<std::size_t>(i)] = i;
    y[static_cast<std::size_t>(i)] = 999 - i;
  }
  const auto kept = truncate_extremes(x, y, 0.005);
  CHECK(kept.size() == 990);
  CHECK(std::find(kept.begin(), kept.end(), 0u) == kept.end());
  CHECK(std::find(kept.begin(), kept.end(), 500u) != kept.end());
}

TEST_CASE("synthetic model: direct KL equals closed form") {
  SyntheticSpec spec;
  spec.vocab_size = 60;
  spec.dim = 5;
  spec.radius = 0.5;
  spec.seed = 3;
  const auto s = gen_expfam(spec);
  for (int w = 0; w < spec.vocab_size; ++w)
    CHECK(std::abs(s.kl[static_cast<std::size_t>(w)] - expfam_kl(s.model, s.u.row(w).transpose(), s.u0)) <= 1e-10);
}
