#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sklcap/channel.hpp"
#include "sklcap/divergence_matrix.hpp"

namespace sklcap {

struct SolveOptions {
  double epsilon = 1e-10;  ///< total-variation stopping threshold
  int max_iter = 10000;
  bool symmetrize = true;  ///< false selects the no-symmetrization variant
  std::optional<Eigen::VectorXd> init;  ///< empty means uniform
  int restarts = 0;        ///< extra random Dirichlet starts
  std::uint64_t rng_seed = 0;
};

struct TrajectoryPoint {
  double objective_nats;
  double tv_step;  ///< total variation between consecutive iterates (0 at start)
};

struct SolveReport {
  std::string algorithm;
  double value_nats = 0.0;
  Eigen::VectorXd caid;  ///< capacity-achieving input distribution
  std::vector<TrajectoryPoint> trajectory;
  bool converged = false;
  int iterations = 0;
  std::vector<std::string> warnings;
};

/// One multiplicative update of the simplex iterate:
///   out_i = x_i (C_sym x)_i / (x^T C_sym x).
/// Non-negative matrix and iterate make the output a probability vector;
/// zero-mass coordinates stay zero. Throws on a flat objective
/// (x^T C_sym x = 0), which the driver handles up front.
Eigen::VectorXd max_skl_step(const Eigen::VectorXd& x, const DivergenceMatrix& dm);

/// Iterates the multiplicative update on the (symmetrized) pairwise-KL
/// matrix until the total-variation step falls below opts.epsilon. The
/// reported value is always the quadratic form with the symmetrized matrix
/// at the final iterate. With restarts > 0, the best run wins (ties broken
/// by lexicographically smaller caid so parallel and serial reductions
/// agree).
SolveReport max_skl(const DivergenceMatrix& dm, const SolveOptions& opts = {});
SolveReport max_skl(const DiscreteChannel& ch, const SolveOptions& opts = {});

/// Classical alternating-maximization iteration for the Shannon capacity
/// C = max_p I(X;Y). Stops when the sup-norm change of the iterate falls
/// below epsilon. Value is mutual information in nats at the final iterate.
SolveReport blahut_arimoto(const DiscreteChannel& ch, double epsilon = 1e-10,
                           int max_iter = 10000);

struct PowerIterationResult {
  double eigenvalue = 0.0;
  Eigen::VectorXd eigenvector;  ///< unit l2 norm, element-wise non-negative
  int iterations = 0;
  bool converged = false;
  /// Objective x^T C_sym x at each iterate rescaled onto the simplex, for
  /// trajectory comparisons against the simplex-constrained solvers.
  std::vector<TrajectoryPoint> trajectory;
};

/// Power iteration for the dominant (Perron) eigenpair of C_sym. The
/// iteration runs on C_sym + sigma*I: the positive shift leaves the Perron
/// eigenvector unchanged while making the matrix primitive, so bipartite
/// structures (zero diagonal!) cannot cycle. Throws on an all-zero matrix.
PowerIterationResult power_iteration(const DivergenceMatrix& dm, double epsilon = 1e-10,
                                     int max_iter = 10000);

/// Eigenvector-normalization baseline: the dominant eigenvector of C_sym
/// rescaled to sum one, reported as a single-step solve.
SolveReport eigen_baseline(const DivergenceMatrix& dm);

/// Power iteration packaged as a capacity report (caid = iterate rescaled
/// to the simplex, value = quadratic form there).
SolveReport power_baseline(const DivergenceMatrix& dm, double epsilon = 1e-10,
                           int max_iter = 10000);

/// Brute-force oracle: exhaustively evaluates the quadratic form on the
/// lattice {k/resolution} over the simplex and returns the maximizer.
/// Refuses d > 5 (combinatorial blow-up). Deterministic tie-break: higher
/// value, then lexicographically smaller point.
SolveReport grid_oracle(const DivergenceMatrix& dm, int resolution);

}  // namespace sklcap
