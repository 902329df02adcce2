#pragma once

#include <Eigen/Core>

#include <string>
#include <vector>

namespace sklcap {

/// A discrete memoryless channel: a row-stochastic matrix P(Y=y_j | X=x_i)
/// together with labels for the input alphabet. Immutable after
/// construction; rows are validated (and gently renormalized) by the
/// factory functions below.
struct DiscreteChannel {
  std::vector<std::string> input_labels;  // size d, pairwise distinct
  Eigen::MatrixXd matrix;                 // d x m, rows sum to 1

  Eigen::Index input_size() const { return matrix.rows(); }
  Eigen::Index output_size() const { return matrix.cols(); }
};

/// Validates and wraps a conditional-probability matrix. Entries must lie in
/// [0,1] and each row must sum to 1 within `row_sum_tol`; rows are then
/// renormalized to remove the residual. Larger deviations are reported as
/// errors (naming the row) rather than silently fixed. Empty `labels`
/// defaults to "0".."d-1".
DiscreteChannel make_channel(Eigen::MatrixXd matrix,
                             std::vector<std::string> labels = {},
                             double row_sum_tol = 1e-9);

/// Binary symmetric channel [[1-p, p], [p, 1-p]] with labels {"0","1"}.
DiscreteChannel make_bsc(double p);

/// Binary asymmetric channel [[1-p, p], [q, 1-q]] with labels {"0","1"}.
DiscreteChannel make_bac(double p, double q);

/// Quantized binomial channel: row for grid point x holds the Binomial(n, x)
/// pmf over y = 0..n. Grid points must be strictly increasing and strictly
/// inside (0,1); boundary points would make rows with disjoint support and
/// infinite pairwise divergences, so they are rejected.
DiscreteChannel make_binomial(int n, const std::vector<double>& grid);

/// Formats a numeric label the same way the binomial grid labels are made.
std::string numeric_label(double value);

}  // namespace sklcap
