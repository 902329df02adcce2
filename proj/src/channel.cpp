#include "sklcap/channel.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <unordered_set>

namespace sklcap {

std::string numeric_label(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

DiscreteChannel make_channel(Eigen::MatrixXd matrix, std::vector<std::string> labels,
                             double row_sum_tol) {
  const Eigen::Index d = matrix.rows();
  const Eigen::Index m = matrix.cols();
  if (d < 1 || m < 1) throw std::domain_error("channel matrix must be at least 1x1");

  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const double v = matrix(i, j);
      if (!std::isfinite(v) || v < 0.0 || v > 1.0 + row_sum_tol)
        throw std::domain_error("channel row " + std::to_string(i) +
                                " has entry outside [0,1]");
    }
    const double s = matrix.row(i).sum();
    if (std::abs(s - 1.0) > row_sum_tol)
      throw std::domain_error("channel row " + std::to_string(i) + " sums to " +
                              std::to_string(s) + ", expected 1");
    matrix.row(i) /= s;
  }

  if (labels.empty()) {
    labels.reserve(static_cast<std::size_t>(d));
    for (Eigen::Index i = 0; i < d; ++i) labels.push_back(std::to_string(i));
  }
  if (std::ssize(labels) != d)
    throw std::domain_error("expected " + std::to_string(d) + " input labels, got " +
                            std::to_string(labels.size()));
  std::unordered_set<std::string> seen(labels.begin(), labels.end());
  if (std::ssize(seen) != d) throw std::domain_error("input labels must be distinct");

  return DiscreteChannel{std::move(labels), std::move(matrix)};
}

DiscreteChannel make_bsc(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error("BSC crossover probability must lie in [0,1]");
  Eigen::MatrixXd m(2, 2);
  m << 1.0 - p, p, p, 1.0 - p;
  return make_channel(std::move(m), {"0", "1"});
}

DiscreteChannel make_bac(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0))
    throw std::domain_error("BAC crossover probabilities must lie in [0,1]");
  Eigen::MatrixXd m(2, 2);
  m << 1.0 - p, p, q, 1.0 - q;
  return make_channel(std::move(m), {"0", "1"});
}

DiscreteChannel make_binomial(int n, const std::vector<double>& grid) {
  if (n < 1) throw std::domain_error("binomial trial count must be >= 1");
  if (grid.empty()) throw std::domain_error("binomial grid must be non-empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0 && grid[i] < 1.0))
      throw std::domain_error("degenerate support: grid point " +
                              numeric_label(grid[i]) + " not strictly inside (0,1)");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw std::domain_error("binomial grid must be strictly increasing");
  }

  const Eigen::Index d = std::ssize(grid);
  Eigen::MatrixXd m(d, n + 1);
  // log C(n,y) via log-gamma keeps n up to the thousands overflow-free.
  const double lg_n = std::lgamma(n + 1.0);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double x = grid[static_cast<std::size_t>(i)];
    const double lx = std::log(x);
    const double l1mx = std::log1p(-x);
    for (int y = 0; y <= n; ++y) {
      const double log_coeff = lg_n - std::lgamma(y + 1.0) - std::lgamma(n - y + 1.0);
      m(i, y) = std::exp(log_coeff + y * lx + (n - y) * l1mx);
    }
  }

  std::vector<std::string> labels;
  labels.reserve(grid.size());
  for (double x : grid) labels.push_back(numeric_label(x));
  return make_channel(std::move(m), std::move(labels));
}

}  // namespace sklcap
