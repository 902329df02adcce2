#include "sklcap/nonconcavity.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "sklcap/info_measures.hpp"
#include "sklcap/simplex.hpp"

namespace sklcap {

double certificate_gap(const DiscreteChannel& ch, const Eigen::VectorXd& p0,
                       const Eigen::VectorXd& p1, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("mixing weight must lie strictly inside (0,1)");
  const Eigen::VectorXd mix = (1.0 - alpha) * p0 + alpha * p1;
  const double l0 = lautum_information(p0, ch);
  const double l1 = lautum_information(p1, ch);
  const double lm = lautum_information(mix, ch);
  if (std::isinf(l0) || std::isinf(l1) || std::isinf(lm)) return kInfiniteDivergence;
  return lm - ((1.0 - alpha) * l0 + alpha * l1);
}

CertificateSearchResult find_nonconcavity_certificate(const DiscreteChannel& ch,
                                                      int trials,
                                                      std::uint64_t rng_seed,
                                                      double tolerance) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (tolerance <= 0.0) throw std::invalid_argument("tolerance must be positive");

  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Eigen::Index d = ch.input_size();

  CertificateSearchResult result;
  for (int t = 1; t <= trials; ++t) {
    result.trials_used = t;
    const Eigen::VectorXd p0 = sample_dirichlet(d, rng);
    const Eigen::VectorXd p1 = sample_dirichlet(d, rng);
    double alpha = unit(rng);
    if (alpha <= 0.0 || alpha >= 1.0) continue;  // open-interval draw

    const double gap = certificate_gap(ch, p0, p1, alpha);
    if (std::isinf(gap)) continue;  // skip samples with infinite Lautum
    if (gap < -tolerance) {
      result.certificate = NonConcavityCertificate{ch, p0, p1, alpha, gap};
      return result;
    }
  }
  return result;
}

}  // namespace sklcap
