#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "sklcap/channel.hpp"

namespace sklcap {

/// All measures are computed in nats; convert at presentation time only.
inline constexpr double kLn2 = 0.6931471805599453094;

inline double to_bits(double nats) { return nats / kLn2; }

/// Marker value for divergences between distributions that are not
/// absolutely continuous (some p(x) > 0 where q(x) = 0).
inline constexpr double kInfiniteDivergence = std::numeric_limits<double>::infinity();

namespace detail {
template <typename DP, typename DQ>
void require_same_length(const Eigen::MatrixBase<DP>& p, const Eigen::MatrixBase<DQ>& q) {
  if (p.size() != q.size())
    throw std::invalid_argument("distributions have different lengths");
}
}  // namespace detail

/// Kullback-Leibler divergence D(p || q) in nats, with the 0*log(0/.) = 0
/// convention. Returns the infinite marker when q fails to dominate p.
template <typename DP, typename DQ>
double kl_divergence(const Eigen::MatrixBase<DP>& p, const Eigen::MatrixBase<DQ>& q) {
  detail::require_same_length(p, q);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const double pi = p[i];
    if (pi <= 0.0) continue;
    const double qi = q[i];
    if (qi <= 0.0) return kInfiniteDivergence;
    sum += pi * std::log(pi / qi);
  }
  return sum;
}

/// Total variation distance, half the l1 distance between discrete
/// distributions. Used as the Max-SKL stopping metric.
template <typename DP, typename DQ>
double total_variation(const Eigen::MatrixBase<DP>& p, const Eigen::MatrixBase<DQ>& q) {
  detail::require_same_length(p, q);
  return 0.5 * (p - q).cwiseAbs().sum();
}

/// Shannon entropy in nats.
template <typename DP>
double entropy(const Eigen::MatrixBase<DP>& p) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p[i] > 0.0) h -= p[i] * std::log(p[i]);
  return h;
}

namespace detail {
inline void require_input_match(const Eigen::VectorXd& px, const DiscreteChannel& ch) {
  if (px.size() != ch.input_size())
    throw std::invalid_argument("input distribution length does not match channel");
}
}  // namespace detail

/// Mutual information I(X;Y) in nats for input distribution `px` through the
/// channel. Always finite for valid inputs.
inline double mutual_information(const Eigen::VectorXd& px, const DiscreteChannel& ch) {
  detail::require_input_match(px, ch);
  const Eigen::VectorXd py = ch.matrix.transpose() * px;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < px.size(); ++i) {
    if (px[i] <= 0.0) continue;
    for (Eigen::Index j = 0; j < py.size(); ++j) {
      const double pyx = ch.matrix(i, j);
      if (pyx > 0.0) sum += px[i] * pyx * std::log(pyx / py[j]);
    }
  }
  return sum;
}

/// Lautum information L(X;Y) = D(P_X P_Y || P_XY) in nats. Returns the
/// infinite marker when some channel entry is zero while the corresponding
/// product-of-marginals mass is positive.
inline double lautum_information(const Eigen::VectorXd& px, const DiscreteChannel& ch) {
  detail::require_input_match(px, ch);
  const Eigen::VectorXd py = ch.matrix.transpose() * px;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < px.size(); ++i) {
    if (px[i] <= 0.0) continue;
    for (Eigen::Index j = 0; j < py.size(); ++j) {
      if (py[j] <= 0.0) continue;
      const double pyx = ch.matrix(i, j);
      if (pyx <= 0.0) return kInfiniteDivergence;
      sum += px[i] * py[j] * std::log(py[j] / pyx);
    }
  }
  return sum;
}

/// Symmetrized KL information I_SKL(X;Y) = I(X;Y) + L(X;Y), evaluated from
/// the definition. The infinite marker propagates from the Lautum term.
inline double i_skl_direct(const Eigen::VectorXd& px, const DiscreteChannel& ch) {
  const double lautum = lautum_information(px, ch);
  if (std::isinf(lautum)) return kInfiniteDivergence;
  return mutual_information(px, ch) + lautum;
}

/// Closed-form symmetrized-KL capacity of a BSC, in bits:
/// -log2(sqrt(p(1-p))) - h(p), equivalently (1/2)(1-2p) log2((1-p)/p).
inline double bsc_capacity_closed_form(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("BSC closed form requires p strictly inside (0,1)");
  const double h = -(p * std::log2(p) + (1.0 - p) * std::log2(1.0 - p));
  return -std::log2(std::sqrt(p * (1.0 - p))) - h;
}

/// KL divergence between multivariate Gaussians N(m0,S0) and N(m1,S1), in
/// nats. Covariances must be symmetric positive definite.
template <typename DM0, typename DS0, typename DM1, typename DS1>
double gaussian_kl(const Eigen::MatrixBase<DM0>& m0, const Eigen::MatrixBase<DS0>& S0,
                   const Eigen::MatrixBase<DM1>& m1, const Eigen::MatrixBase<DS1>& S1) {
  const Eigen::Index k = m0.size();
  if (m1.size() != k || S0.rows() != k || S0.cols() != k || S1.rows() != k ||
      S1.cols() != k)
    throw std::invalid_argument("gaussian_kl: dimension mismatch");

  const Eigen::MatrixXd s0 = S0;
  const Eigen::MatrixXd s1 = S1;
  const double scale = std::max(s0.cwiseAbs().maxCoeff(), s1.cwiseAbs().maxCoeff());
  if (!(s0 - s0.transpose()).isZero(1e-12 * scale) ||
      !(s1 - s1.transpose()).isZero(1e-12 * scale))
    throw std::domain_error("gaussian_kl: covariance not symmetric");

  const Eigen::LLT<Eigen::MatrixXd> llt0(s0);
  const Eigen::LLT<Eigen::MatrixXd> llt1(s1);
  if (llt0.info() != Eigen::Success || llt1.info() != Eigen::Success)
    throw std::domain_error("gaussian_kl: covariance not positive definite");

  const auto log_det = [](const Eigen::LLT<Eigen::MatrixXd>& llt) {
    return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  };

  const Eigen::VectorXd dm = m1 - m0;
  const double trace_term = llt1.solve(s0).trace();
  const double maha = dm.dot(llt1.solve(dm));
  return 0.5 * (trace_term + maha - static_cast<double>(k) + log_det(llt1) - log_det(llt0));
}

}  // namespace sklcap
