#pragma once

#include <Eigen/Core>

#include "sklcap/channel.hpp"

namespace sklcap {

/// Matrix of pairwise KL divergences between channel rows,
/// C_ij = D(P_{Y|X=x_i} || P_{Y|X=x_j}) in nats, together with its
/// symmetrization C_sym = (C + C^T)/2. Entries are non-negative with a zero
/// diagonal, and the two quadratic forms agree: x^T C x = x^T C_sym x.
class DivergenceMatrix {
 public:
  /// Wraps a raw pairwise-divergence matrix, validating the invariants
  /// (square, finite, non-negative up to rounding, zero diagonal).
  static DivergenceMatrix from_raw(Eigen::MatrixXd raw);

  const Eigen::MatrixXd& raw() const { return raw_; }
  const Eigen::MatrixXd& sym() const { return sym_; }
  Eigen::Index dim() const { return raw_.rows(); }

 private:
  DivergenceMatrix(Eigen::MatrixXd raw, Eigen::MatrixXd sym)
      : raw_(std::move(raw)), sym_(std::move(sym)) {}

  Eigen::MatrixXd raw_;
  Eigen::MatrixXd sym_;
};

/// Builds the pairwise KL divergence matrix of a channel. Any infinite
/// divergence (rows with mismatched support) is an error naming the
/// offending row pair, since the multiplicative update is undefined there.
DivergenceMatrix kl_matrix(const DiscreteChannel& ch);

/// Symmetrized KL information as the quadratic form px^T C px over the
/// pairwise-divergence matrix.
double i_skl_pairwise(const Eigen::VectorXd& px, const DivergenceMatrix& dm);

}  // namespace sklcap
