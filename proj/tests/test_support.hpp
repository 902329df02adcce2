#pragma once

#include <Eigen/Core>

#include <random>
#include <vector>

#include "sklcap/channel.hpp"
#include "sklcap/divergence_matrix.hpp"
#include "sklcap/simplex.hpp"

namespace sklcap::testing {

/// Random channel with strictly positive rows (Dirichlet draws floored away
/// from zero so pairwise divergences stay moderate).
inline DiscreteChannel random_channel(Eigen::Index d, Eigen::Index m,
                                      std::mt19937_64& rng, double floor = 0.01) {
  Eigen::MatrixXd matrix(d, m);
  for (Eigen::Index i = 0; i < d; ++i) {
    Eigen::VectorXd row = sample_dirichlet(m, rng).array() + floor;
    matrix.row(i) = row / row.sum();
  }
  return make_channel(std::move(matrix));
}

/// Random symmetric non-negative matrix with zero diagonal, entries U[0,1].
inline DivergenceMatrix random_sym_matrix(Eigen::Index d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::MatrixXd raw = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j) raw(i, j) = raw(j, i) = unit(rng);
  return DivergenceMatrix::from_raw(std::move(raw));
}

/// Interior simplex point (Dirichlet with a floor).
inline Eigen::VectorXd random_interior_point(Eigen::Index d, std::mt19937_64& rng,
                                             double floor = 1e-3) {
  Eigen::VectorXd p = sample_dirichlet(d, rng).array() + floor;
  return p / p.sum();
}

}  // namespace sklcap::testing
