#include "sklcap/divergence_matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sklcap/info_measures.hpp"

namespace sklcap {

DivergenceMatrix DivergenceMatrix::from_raw(Eigen::MatrixXd raw) {
  const Eigen::Index d = raw.rows();
  if (d < 1 || raw.cols() != d)
    throw std::invalid_argument("divergence matrix must be square and non-empty");
  for (Eigen::Index i = 0; i < d; ++i) {
    if (raw(i, i) != 0.0)
      throw std::invalid_argument("divergence matrix diagonal must be zero");
    for (Eigen::Index j = 0; j < d; ++j) {
      const double v = raw(i, j);
      if (!std::isfinite(v))
        throw std::invalid_argument("divergence matrix entry (" + std::to_string(i) +
                                    "," + std::to_string(j) + ") is not finite");
      if (v < 0.0) {
        // Allow rounding residue from divergences between identical
        // distributions; anything larger is a data bug.
        if (v < -1e-12)
          throw std::invalid_argument("divergence matrix entry (" + std::to_string(i) +
                                      "," + std::to_string(j) + ") is negative");
        raw(i, j) = 0.0;
      }
    }
  }
  Eigen::MatrixXd sym = 0.5 * (raw + raw.transpose());
  return DivergenceMatrix(std::move(raw), std::move(sym));
}

DivergenceMatrix kl_matrix(const DiscreteChannel& ch) {
  const Eigen::Index d = ch.input_size();
  Eigen::MatrixXd raw = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      if (i == j) continue;
      const double v = kl_divergence(ch.matrix.row(i), ch.matrix.row(j));
      if (std::isinf(v))
        throw std::domain_error("non-absolutely-continuous channel rows: infinite KL "
                                "divergence between rows " + std::to_string(i) +
                                " and " + std::to_string(j));
      raw(i, j) = v;
    }
  }
  return DivergenceMatrix::from_raw(std::move(raw));
}

double i_skl_pairwise(const Eigen::VectorXd& px, const DivergenceMatrix& dm) {
  if (px.size() != dm.dim())
    throw std::invalid_argument("input distribution length does not match matrix");
  return px.dot(dm.raw() * px);
}

}  // namespace sklcap
