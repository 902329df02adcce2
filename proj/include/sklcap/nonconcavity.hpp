#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <optional>

#include "sklcap/channel.hpp"

namespace sklcap {

/// Witness that Lautum information is not concave in the input distribution
/// for a fixed channel: a pair of inputs and a mixing weight whose Lautum
/// chord lies strictly above the Lautum of the mixture.
struct NonConcavityCertificate {
  DiscreteChannel channel;
  Eigen::VectorXd p0;
  Eigen::VectorXd p1;
  double alpha = 0.0;  ///< mixing weight in (0,1)
  double gap = 0.0;    ///< L(mixture) - [(1-alpha) L(p0) + alpha L(p1)], < 0
};

struct CertificateSearchResult {
  std::optional<NonConcavityCertificate> certificate;  ///< empty when not found
  int trials_used = 0;
};

/// Re-evaluates the concavity gap of a candidate triple from scratch.
/// Returns the infinite marker if any Lautum term is infinite.
double certificate_gap(const DiscreteChannel& ch, const Eigen::VectorXd& p0,
                       const Eigen::VectorXd& p1, double alpha);

/// Randomized search for a non-concavity certificate: samples p0, p1 from
/// the flat Dirichlet and alpha uniformly on (0,1), skipping triples with an
/// infinite Lautum term, and returns the first with gap < -tolerance.
/// Exhausting the trial budget is an explicit not-found result, not an
/// error.
CertificateSearchResult find_nonconcavity_certificate(const DiscreteChannel& ch,
                                                      int trials,
                                                      std::uint64_t rng_seed,
                                                      double tolerance = 1e-6);

}  // namespace sklcap
