#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "infogain/corpus.hpp"
#include "infogain/sgns.hpp"

namespace infogain {

// Frequency-weighted first and second moments of an EmbeddingSet:
// u_bar = sum p(w) u_w, v_bar = sum p(w') v_w',
// G = sum p(w') (v_w' - v_bar)(v_w' - v_bar)^T.
struct Moments {
  Eigen::VectorXd u_bar;
  Eigen::VectorXd v_bar;
  Eigen::MatrixXd g;
};

Moments compute_moments(const EmbeddingSet& emb, const Vocabulary& vocab);
// Same moments with explicit weights (need not come from a vocabulary).
Moments compute_moments(const Eigen::MatrixXd& u, const Eigen::MatrixXd& v,
                        const Eigen::VectorXd& weights);

// Symmetric PSD square root by eigendecomposition. Eigenvalues below
// 1e-12 * lambda_max are clamped to zero; below -1e-8 * lambda_max throws
// kNotPsd.
Eigen::MatrixXd matrix_sqrt(const Eigen::MatrixXd& g);

struct WhiteningTransform {
  Eigen::MatrixXd s;       // S with S S = G
  Eigen::VectorXd center;  // u_bar or an estimate of u_0
};

WhiteningTransform make_whitening(const Moments& moments);

// ||S (u_w - center)||^2 for every row.
std::vector<double> whitened_norms(const Eigen::MatrixXd& u, const WhiteningTransform& t);
// (u_w - center)^T G (u_w - center) for every row.
std::vector<double> quadratic_norms(const Eigen::MatrixXd& u, const Eigen::VectorXd& center,
                                    const Eigen::MatrixXd& g);
// ||u_w||^2.
std::vector<double> squared_norms(const EmbeddingSet& emb);

Eigen::MatrixXd word_matrix(const EmbeddingSet& emb);
Eigen::MatrixXd context_matrix(const EmbeddingSet& emb);

// Count-weighted mean of u_w over the top_k most frequent words.
Eigen::VectorXd estimate_u0(const EmbeddingSet& emb, const Vocabulary& vocab, int top_k = 3);

// Finite exponential family p(w'|u) = q(w') exp(<u, v_w'> - psi(u)).
class ExpFamilyModel {
 public:
  ExpFamilyModel(Eigen::VectorXd q, Eigen::MatrixXd suff_stats);

  const Eigen::VectorXd& q() const { return q_; }
  const Eigen::MatrixXd& suff_stats() const { return v_; }
  Eigen::Index vocab_size() const { return v_.rows(); }
  Eigen::Index dim() const { return v_.cols(); }

  // log sum q exp(<u, v>), max-shifted.
  double psi(const Eigen::VectorXd& u) const;
  // p(.|u).
  Eigen::VectorXd distribution(const Eigen::VectorXd& u) const;
  // E[v] under p(.|u): the gradient of psi.
  Eigen::VectorXd eta(const Eigen::VectorXd& u) const;
  // Cov[v] under p(.|u): the Hessian of psi.
  Eigen::MatrixXd fisher(const Eigen::VectorXd& u) const;

 private:
  Eigen::VectorXd q_;
  Eigen::MatrixXd v_;
};

// Closed form <u1 - u2, eta(u1)> - psi(u1) + psi(u2).
double expfam_kl(const ExpFamilyModel& model, const Eigen::VectorXd& u1,
                 const Eigen::VectorXd& u2);

struct RegressionFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::int64_t n_points = 0;
};

// Ordinary least squares over the masked points (empty mask = all).
// Throws kInvalidArgument on fewer than two points or constant x.
RegressionFit fit_linear(std::span<const double> x, std::span<const double> y,
                         std::span<const bool> mask = {});
RegressionFit fit_linear(std::span<const double> x, std::span<const double> y,
                         const std::function<bool(std::size_t)>& keep);

// Indices kept after dropping the most extreme `fraction` of points at each
// end of each axis. Plot-range helper only.
std::vector<std::size_t> truncate_extremes(std::span<const double> x, std::span<const double> y,
                                           double fraction = 0.005);

}  // namespace infogain
