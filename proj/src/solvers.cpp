#include "sklcap/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "sklcap/info_measures.hpp"
#include "sklcap/simplex.hpp"

namespace sklcap {

namespace {

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

/// Runs the multiplicative update from a fixed start. `update` is the matrix
/// used in the update rule (raw or symmetrized); the objective is always
/// reported through the symmetrized form.
SolveReport run_max_skl_once(const Eigen::MatrixXd& update, const Eigen::MatrixXd& sym,
                             Eigen::VectorXd x, const SolveOptions& opts,
                             std::string algorithm) {
  SolveReport report;
  report.algorithm = std::move(algorithm);

  if ((x.array() == 0.0).any())
    report.warnings.push_back(
        "initial distribution has zero-mass coordinates; they cannot revive "
        "under the multiplicative update");

  double objective = x.dot(sym * x);
  report.trajectory.push_back({objective, 0.0});

  if (objective <= 0.0) {
    // Flat objective: I_SKL is identically zero on the reachable set.
    report.value_nats = 0.0;
    report.caid = std::move(x);
    report.converged = true;
    return report;
  }

  int stall_count = 0;
  for (int k = 1; k <= opts.max_iter; ++k) {
    const Eigen::VectorXd cx = update * x;
    const double denom = x.dot(cx);
    if (denom <= 0.0) {
      report.warnings.push_back("objective collapsed to zero; stopping");
      break;
    }
    const Eigen::VectorXd next = x.cwiseProduct(cx) / denom;
    const double tv_step = total_variation(next, x);
    x = next;
    report.iterations = k;

    const double next_objective = x.dot(sym * x);
    report.trajectory.push_back({next_objective, tv_step});

    if (tv_step <= opts.epsilon) {
      report.converged = true;
      objective = next_objective;
      break;
    }
    // TV can stall at machine precision; a flat objective over several
    // consecutive steps is treated as converged as well.
    stall_count = std::abs(next_objective - objective) < 1e-15 ? stall_count + 1 : 0;
    objective = next_objective;
    if (stall_count >= 10) {
      report.converged = true;
      break;
    }
  }

  report.value_nats = objective;
  report.caid = std::move(x);
  return report;
}

}  // namespace

Eigen::VectorXd max_skl_step(const Eigen::VectorXd& x, const DivergenceMatrix& dm) {
  if (x.size() != dm.dim())
    throw std::invalid_argument("iterate length does not match divergence matrix");
  const Eigen::VectorXd cx = dm.sym() * x;
  const double denom = x.dot(cx);
  if (denom <= 0.0) throw std::domain_error("flat objective: x^T C_sym x = 0");
  return x.cwiseProduct(cx) / denom;
}

SolveReport max_skl(const DivergenceMatrix& dm, const SolveOptions& opts) {
  if (opts.epsilon <= 0.0) throw std::invalid_argument("epsilon must be positive");
  if (opts.max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
  if (opts.restarts < 0) throw std::invalid_argument("restarts must be >= 0");

  const Eigen::MatrixXd& sym = dm.sym();
  const Eigen::MatrixXd& update = opts.symmetrize ? dm.sym() : dm.raw();
  const std::string name = opts.symmetrize ? "max-skl" : "max-skl-wos";

  Eigen::VectorXd start;
  if (opts.init.has_value()) {
    require_simplex(*opts.init);
    if (opts.init->size() != dm.dim())
      throw std::invalid_argument("init length does not match divergence matrix");
    start = *opts.init;
  } else {
    start = uniform_distribution(dm.dim());
  }

  SolveReport best = run_max_skl_once(update, sym, std::move(start), opts, name);

  std::mt19937_64 rng(opts.rng_seed);
  for (int r = 0; r < opts.restarts; ++r) {
    SolveReport candidate = run_max_skl_once(update, sym, sample_dirichlet(dm.dim(), rng),
                                             opts, name);
    if (candidate.value_nats > best.value_nats ||
        (candidate.value_nats == best.value_nats && lex_less(candidate.caid, best.caid)))
      best = std::move(candidate);
  }
  return best;
}

SolveReport max_skl(const DiscreteChannel& ch, const SolveOptions& opts) {
  return max_skl(kl_matrix(ch), opts);
}

SolveReport blahut_arimoto(const DiscreteChannel& ch, double epsilon, int max_iter) {
  if (epsilon <= 0.0) throw std::invalid_argument("epsilon must be positive");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");

  const Eigen::Index d = ch.input_size();
  Eigen::VectorXd p = uniform_distribution(d);

  SolveReport report;
  report.algorithm = "ba";
  report.trajectory.push_back({mutual_information(p, ch), 0.0});

  for (int k = 1; k <= max_iter; ++k) {
    const Eigen::VectorXd q = ch.matrix.transpose() * p;
    Eigen::VectorXd weight(d);
    for (Eigen::Index i = 0; i < d; ++i)
      weight[i] = p[i] > 0.0
                      ? p[i] * std::exp(kl_divergence(ch.matrix.row(i), q.transpose()))
                      : 0.0;
    Eigen::VectorXd next = weight / weight.sum();

    const double sup_change = (next - p).cwiseAbs().maxCoeff();
    const double tv_step = total_variation(next, p);
    p = std::move(next);
    report.iterations = k;
    report.trajectory.push_back({mutual_information(p, ch), tv_step});

    if (sup_change <= epsilon) {
      report.converged = true;
      break;
    }
  }

  report.value_nats = mutual_information(p, ch);
  report.caid = std::move(p);
  return report;
}

PowerIterationResult power_iteration(const DivergenceMatrix& dm, double epsilon,
                                     int max_iter) {
  if (epsilon <= 0.0) throw std::invalid_argument("epsilon must be positive");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");

  const Eigen::MatrixXd& a = dm.sym();
  const double max_entry = a.maxCoeff();
  if (max_entry <= 0.0) throw std::domain_error("power iteration on a zero matrix");

  // Shift by the largest entry: spectrum moves up uniformly, the Perron
  // eigenvector is untouched, and the iteration gains a strictly dominant
  // eigenvalue even on bipartite sparsity patterns.
  const double shift = max_entry;

  PowerIterationResult result;
  Eigen::VectorXd x = Eigen::VectorXd::Ones(dm.dim()).normalized();
  for (int k = 1; k <= max_iter; ++k) {
    const Eigen::VectorXd ax = a * x;
    const double lambda = x.dot(ax);
    const double simplex_mass = x.sum();
    if (simplex_mass > 0.0) {
      const Eigen::VectorXd p = x / simplex_mass;
      result.trajectory.push_back({p.dot(a * p), 0.0});
    }
    result.iterations = k;
    result.eigenvalue = lambda;
    result.eigenvector = x;
    if ((ax - lambda * x).norm() <= epsilon * std::max(1.0, std::abs(lambda))) {
      result.converged = true;
      break;
    }
    x = (ax + shift * x).normalized();
  }
  return result;
}

SolveReport eigen_baseline(const DivergenceMatrix& dm) {
  const PowerIterationResult pi = power_iteration(dm);
  SolveReport report;
  report.algorithm = "eigen";
  report.caid = pi.eigenvector / pi.eigenvector.sum();
  report.value_nats = report.caid.dot(dm.sym() * report.caid);
  report.iterations = 1;
  report.converged = pi.converged;
  report.trajectory.push_back({report.value_nats, 0.0});
  return report;
}

SolveReport power_baseline(const DivergenceMatrix& dm, double epsilon, int max_iter) {
  const PowerIterationResult pi = power_iteration(dm, epsilon, max_iter);
  SolveReport report;
  report.algorithm = "power";
  report.caid = pi.eigenvector / pi.eigenvector.sum();
  report.value_nats = report.caid.dot(dm.sym() * report.caid);
  report.iterations = pi.iterations;
  report.converged = pi.converged;
  report.trajectory = pi.trajectory;
  return report;
}

SolveReport grid_oracle(const DivergenceMatrix& dm, int resolution) {
  const Eigen::Index d = dm.dim();
  if (d > 5)
    throw std::domain_error("grid oracle refuses d > 5 (lattice size explodes)");
  if (resolution < 2) throw std::invalid_argument("resolution must be >= 2");

  const Eigen::MatrixXd& c = dm.sym();
  const double inv_res = 1.0 / static_cast<double>(resolution);

  Eigen::VectorXd point = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd best_point = Eigen::VectorXd::Zero(d);
  double best_value = -1.0;
  long points = 0;

  // Enumerate compositions of `resolution` into d non-negative parts.
  std::vector<int> counts(static_cast<std::size_t>(d), 0);
  const auto evaluate = [&]() {
    for (Eigen::Index i = 0; i < d; ++i) point[i] = counts[static_cast<std::size_t>(i)] * inv_res;
    const double value = point.dot(c * point);
    ++points;
    if (value > best_value || (value == best_value && lex_less(point, best_point))) {
      best_value = value;
      best_point = point;
    }
  };
  const auto recurse = [&](auto&& self, Eigen::Index level, int remaining) -> void {
    if (level == d - 1) {
      counts[static_cast<std::size_t>(level)] = remaining;
      evaluate();
      return;
    }
    for (int k = remaining; k >= 0; --k) {
      counts[static_cast<std::size_t>(level)] = k;
      self(self, level + 1, remaining - k);
    }
  };
  recurse(recurse, 0, resolution);

  SolveReport report;
  report.algorithm = "grid";
  report.value_nats = best_value;
  report.caid = std::move(best_point);
  report.iterations = static_cast<int>(std::min<long>(points, INT32_MAX));
  report.converged = true;
  report.trajectory.push_back({best_value, 0.0});
  return report;
}

}  // namespace sklcap
