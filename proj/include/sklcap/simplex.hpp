#pragma once

#include <Eigen/Core>

#include <random>
#include <stdexcept>
#include <string>

namespace sklcap {

/// Default tolerance for probability-vector validation.
inline constexpr double kSimplexTol = 1e-12;

/// True if `p` is a valid point on the probability simplex: all entries
/// non-negative and summing to one within `tol`.
template <typename Derived>
bool is_simplex(const Eigen::MatrixBase<Derived>& p, double tol = kSimplexTol) {
  if (p.size() == 0) return false;
  if ((p.array() < 0.0).any()) return false;
  return std::abs(p.sum() - 1.0) <= tol;
}

template <typename Derived>
void require_simplex(const Eigen::MatrixBase<Derived>& p, double tol = kSimplexTol) {
  if (p.size() == 0) throw std::invalid_argument("probability vector is empty");
  if ((p.array() < 0.0).any())
    throw std::invalid_argument("probability vector has a negative entry");
  const double s = p.sum();
  if (std::abs(s - 1.0) > tol)
    throw std::invalid_argument("probability vector sums to " + std::to_string(s) +
                                ", expected 1");
}

inline Eigen::VectorXd uniform_distribution(Eigen::Index d) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  return Eigen::VectorXd::Constant(d, 1.0 / static_cast<double>(d));
}

/// Draw from the flat Dirichlet(1,...,1) on the (d-1)-simplex.
inline Eigen::VectorXd sample_dirichlet(Eigen::Index d, std::mt19937_64& rng) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  std::exponential_distribution<double> exp1(1.0);
  Eigen::VectorXd g(d);
  for (Eigen::Index i = 0; i < d; ++i) g[i] = exp1(rng);
  return g / g.sum();
}

}  // namespace sklcap
