#include "infogain/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "infogain/error.hpp"
#include "infogain/numeric.hpp"

namespace infogain {

Eigen::MatrixXd word_matrix(const EmbeddingSet& emb) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(emb.rows()), emb.dim());
  for (std::size_t w = 0; w < emb.rows(); ++w) {
    const auto row = emb.u(w);
    for (int k = 0; k < emb.dim(); ++k) m(static_cast<Eigen::Index>(w), k) = row[static_cast<std::size_t>(k)];
  }
  return m;
}

Eigen::MatrixXd context_matrix(const EmbeddingSet& emb) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(emb.rows()), emb.dim());
  for (std::size_t w = 0; w < emb.rows(); ++w) {
    const auto row = emb.v(w);
    for (int k = 0; k < emb.dim(); ++k) m(static_cast<Eigen::Index>(w), k) = row[static_cast<std::size_t>(k)];
  }
  return m;
}

Moments compute_moments(const Eigen::MatrixXd& u, const Eigen::MatrixXd& v,
                        const Eigen::VectorXd& weights) {
  require(u.rows() == weights.size() && v.rows() == weights.size(),
          "moments: embedding rows and weights disagree");
  require(u.cols() == v.cols(), "moments: word and context dimensions differ");
  Moments m;
  m.u_bar = u.transpose() * weights;
  m.v_bar = v.transpose() * weights;
  const Eigen::MatrixXd centered = v.rowwise() - m.v_bar.transpose();
  m.g = centered.transpose() * weights.asDiagonal() * centered;
  m.g = 0.5 * (m.g + m.g.transpose());
  return m;
}

Moments compute_moments(const EmbeddingSet& emb, const Vocabulary& vocab) {
  require(emb.rows() == vocab.size(), "moments: embedding rows differ from vocabulary size");
  const auto p = vocab.unigram();
  const Eigen::VectorXd weights = Eigen::Map<const Eigen::VectorXd>(p.data(), static_cast<Eigen::Index>(p.size()));
  return compute_moments(word_matrix(emb), context_matrix(emb), weights);
}

Eigen::MatrixXd matrix_sqrt(const Eigen::MatrixXd& g) {
  require(g.rows() == g.cols(), "matrix_sqrt: matrix is not square");
  if (g.size() == 0) return g;
  const double scale = g.cwiseAbs().maxCoeff();
  require((g - g.transpose()).cwiseAbs().maxCoeff() <= 1e-10 * std::max(scale, 1e-300),
          "matrix_sqrt: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g);
  if (eig.info() != Eigen::Success) fail(ErrorCode::kInternal, "eigendecomposition failed");
  Eigen::VectorXd lambda = eig.eigenvalues();
  const double lambda_max = std::max(lambda.maxCoeff(), 0.0);
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) < -1e-8 * lambda_max)
      fail(ErrorCode::kNotPsd, "matrix_sqrt: eigenvalue " + std::to_string(lambda(i)) +
                                   " is negative beyond tolerance");
    lambda(i) = lambda(i) < 1e-12 * lambda_max ? 0.0 : std::sqrt(lambda(i));
  }
  Eigen::MatrixXd s = eig.eigenvectors() * lambda.asDiagonal() * eig.eigenvectors().transpose();
  return 0.5 * (s + s.transpose());
}

WhiteningTransform make_whitening(const Moments& moments) {
  return {matrix_sqrt(moments.g), moments.u_bar};
}

std::vector<double> whitened_norms(const Eigen::MatrixXd& u, const WhiteningTransform& t) {
  require(u.cols() == t.center.size() && t.s.rows() == u.cols(), "whiten: shapes disagree");
  const Eigen::MatrixXd white = (u.rowwise() - t.center.transpose()) * t.s;
  std::vector<double> out(static_cast<std::size_t>(u.rows()));
  for (Eigen::Index w = 0; w < u.rows(); ++w) out[static_cast<std::size_t>(w)] = white.row(w).squaredNorm();
  return out;
}

std::vector<double> quadratic_norms(const Eigen::MatrixXd& u, const Eigen::VectorXd& center,
                                    const Eigen::MatrixXd& g) {
  require(u.cols() == center.size() && g.rows() == u.cols(), "quadratic_norms: shapes disagree");
  const Eigen::MatrixXd centered = u.rowwise() - center.transpose();
  const Eigen::MatrixXd gc = centered * g;
  std::vector<double> out(static_cast<std::size_t>(u.rows()));
  for (Eigen::Index w = 0; w < u.rows(); ++w)
    out[static_cast<std::size_t>(w)] = centered.row(w).dot(gc.row(w));
  return out;
}

std::vector<double> squared_norms(const EmbeddingSet& emb) {
  std::vector<double> out(emb.rows());
  for (std::size_t w = 0; w < emb.rows(); ++w) {
    double s = 0.0;
    for (float x : emb.u(w)) s += static_cast<double>(x) * x;
    out[w] = s;
  }
  return out;
}

Eigen::VectorXd estimate_u0(const EmbeddingSet& emb, const Vocabulary& vocab, int top_k) {
  require(top_k >= 1, "top_k must be >= 1");
  require(emb.rows() == vocab.size(), "estimate_u0: embedding rows differ from vocabulary size");
  if (static_cast<std::size_t>(top_k) > vocab.size())
    fail(ErrorCode::kInvalidArgument, "top_k exceeds vocabulary size");
  // Vocabulary ids are in descending count order.
  double weight_total = 0.0;
  for (int w = 0; w < top_k; ++w) weight_total += static_cast<double>(vocab.count(w));
  require(weight_total > 0.0, "top_k words have zero total count");
  Eigen::VectorXd u0 = Eigen::VectorXd::Zero(emb.dim());
  for (int w = 0; w < top_k; ++w) {
    const double weight = static_cast<double>(vocab.count(w)) / weight_total;
    const auto row = emb.u(static_cast<std::size_t>(w));
    for (int k = 0; k < emb.dim(); ++k) u0(k) += weight * row[static_cast<std::size_t>(k)];
  }
  return u0;
}

ExpFamilyModel::ExpFamilyModel(Eigen::VectorXd q, Eigen::MatrixXd suff_stats)
    : q_(std::move(q)), v_(std::move(suff_stats)) {
  require(q_.size() == v_.rows() && q_.size() > 0, "exp-family: q and v disagree in size");
  require((q_.array() >= 0.0).all() && std::abs(q_.sum() - 1.0) <= 1e-9,
          "exp-family: q must be a probability vector");
  require(v_.allFinite(), "exp-family: sufficient statistics must be finite");
}

double ExpFamilyModel::psi(const Eigen::VectorXd& u) const {
  require(u.size() == dim(), "psi: parameter dimension mismatch");
  const Eigen::VectorXd logits = v_ * u;
  double shift = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < logits.size(); ++i)
    if (q_(i) > 0.0) shift = std::max(shift, logits(i));
  double s = 0.0;
  for (Eigen::Index i = 0; i < logits.size(); ++i)
    if (q_(i) > 0.0) s += q_(i) * std::exp(logits(i) - shift);
  return shift + std::log(s);
}

Eigen::VectorXd ExpFamilyModel::distribution(const Eigen::VectorXd& u) const {
  const double log_norm = psi(u);
  const Eigen::VectorXd logits = v_ * u;
  Eigen::VectorXd p(q_.size());
  for (Eigen::Index i = 0; i < p.size(); ++i)
    p(i) = q_(i) > 0.0 ? q_(i) * std::exp(logits(i) - log_norm) : 0.0;
  return p;
}

Eigen::VectorXd ExpFamilyModel::eta(const Eigen::VectorXd& u) const {
  return v_.transpose() * distribution(u);
}

Eigen::MatrixXd ExpFamilyModel::fisher(const Eigen::VectorXd& u) const {
  const Eigen::VectorXd p = distribution(u);
  const Eigen::VectorXd mean = v_.transpose() * p;
  const Eigen::MatrixXd centered = v_.rowwise() - mean.transpose();
  Eigen::MatrixXd g = centered.transpose() * p.asDiagonal() * centered;
  return 0.5 * (g + g.transpose());
}

double expfam_kl(const ExpFamilyModel& model, const Eigen::VectorXd& u1,
                 const Eigen::VectorXd& u2) {
  return (u1 - u2).dot(model.eta(u1)) - model.psi(u1) + model.psi(u2);
}

RegressionFit fit_linear(std::span<const double> x, std::span<const double> y,
                         const std::function<bool(std::size_t)>& keep) {
  require(x.size() == y.size(), "fit_linear: x and y differ in length");
  CompensatedSum sx, sy;
  std::int64_t n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!keep(i)) continue;
    sx.add(x[i]);
    sy.add(y[i]);
    ++n;
  }
  require(n >= 2, "fit_linear needs at least two points");
  const double mx = sx.value() / static_cast<double>(n);
  const double my = sy.value() / static_cast<double>(n);

  CompensatedSum sxx, sxy, syy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!keep(i)) continue;
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx.add(dx * dx);
    sxy.add(dx * dy);
    syy.add(dy * dy);
  }
  require(sxx.value() > 0.0, "fit_linear: x is constant");

  RegressionFit fit;
  fit.n_points = n;
  fit.slope = sxy.value() / sxx.value();
  fit.intercept = my - fit.slope * mx;
  if (syy.value() > 0.0) {
    CompensatedSum ss_res;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!keep(i)) continue;
      const double r = y[i] - (fit.intercept + fit.slope * x[i]);
      ss_res.add(r * r);
    }
    fit.r_squared = std::clamp(1.0 - ss_res.value() / syy.value(), 0.0, 1.0);
  }
  return fit;
}

RegressionFit fit_linear(std::span<const double> x, std::span<const double> y,
                         std::span<const bool> mask) {
  require(mask.empty() || mask.size() == x.size(), "fit_linear: mask length mismatch");
  return fit_linear(x, y, [&](std::size_t i) {
    return (mask.empty() || mask[i]) && std::isfinite(x[i]) && std::isfinite(y[i]);
  });
}

std::vector<std::size_t> truncate_extremes(std::span<const double> x, std::span<const double> y,
                                           double fraction) {
  require(x.size() == y.size(), "truncate_extremes: x and y differ in length");
  require(fraction >= 0.0 && fraction < 0.5, "truncate_extremes: fraction out of range");
  auto bounds = [&](std::span<const double> a) {
    std::vector<double> sorted(a.begin(), a.end());
    std::sort(sorted.begin(), sorted.end());
    const auto cut = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(sorted.size())));
    return std::pair{sorted[cut], sorted[sorted.size() - 1 - cut]};
  };
  std::vector<std::size_t> kept;
  if (x.empty()) return kept;
  const auto [xlo, xhi] = bounds(x);
  const auto [ylo, yhi] = bounds(y);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] >= xlo && x[i] <= xhi && y[i] >= ylo && y[i] <= yhi) kept.push_back(i);
  return kept;
}

}  // namespace infogain
