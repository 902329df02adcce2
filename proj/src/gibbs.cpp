#include "sklcap/gibbs.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <stdexcept>

#include "sklcap/info_measures.hpp"
#include "sklcap/simplex.hpp"

namespace sklcap {

namespace {

constexpr double kReportRoundingThreshold = 1e-6;

void require_valid(const GaussianPosterior& g) {
  if (!(g.cov - g.cov.transpose()).isZero(1e-12))
    throw std::domain_error("posterior covariance not symmetric");
  const Eigen::LLT<Eigen::Matrix2d> llt(g.cov);
  if (llt.info() != Eigen::Success)
    throw std::domain_error("posterior covariance not positive definite");
}

GaussianPosterior posterior_from_stats(const Eigen::Matrix2d& sum_xxt,
                                       const Eigen::Vector2d& sum_xy, double n,
                                       GibbsConvention convention) {
  Eigen::Matrix2d precision;
  Eigen::Vector2d rhs;
  if (convention == GibbsConvention::kUnitPrior) {
    precision = Eigen::Matrix2d::Identity() + sum_xxt;
    rhs = sum_xy;
  } else {
    precision = n * Eigen::Matrix2d::Identity() + 2.0 * sum_xxt;
    rhs = 2.0 * sum_xy;
  }
  const Eigen::Matrix2d cov = precision.inverse();
  return GaussianPosterior{cov * rhs, cov};
}

}  // namespace

const std::array<DataAtom, 8>& canonical_atoms() {
  static const std::array<DataAtom, 8> atoms = {{
      {{1.0, 1.0}, 1.0},
      {{1.0, -1.0}, -1.0},
      {{-1.0, 1.0}, 1.0},
      {{-1.0, -1.0}, -1.0},
      {{1.0, 1.0}, -1.0},
      {{1.0, -1.0}, 1.0},
      {{-1.0, 1.0}, -1.0},
      {{-1.0, -1.0}, 1.0},
  }};
  return atoms;
}

JointDataDistribution make_joint_distribution(Eigen::VectorXd probs) {
  if (probs.size() != 8)
    throw std::invalid_argument("atom distribution must have 8 entries");
  require_simplex(probs);
  return JointDataDistribution{std::move(probs)};
}

JointDataDistribution case_distribution(int which) {
  Eigen::VectorXd p = Eigen::VectorXd::Zero(8);
  if (which == 1) {
    p.head<4>().setConstant(0.25);  // labels follow x2 on the support
  } else if (which == 2) {
    // XOR labels: ([1,1],1), ([1,-1],-1), ([-1,1],-1), ([-1,-1],1)
    p[0] = p[1] = p[6] = p[7] = 0.25;
  } else {
    throw std::domain_error("case must be 1 or 2");
  }
  return JointDataDistribution{std::move(p)};
}

std::vector<DataAtom> sample_dataset(const JointDataDistribution& dist, int n,
                                     std::uint64_t rng_seed) {
  if (n < 1) throw std::invalid_argument("sample count must be >= 1");
  require_simplex(dist.probs);
  std::mt19937_64 rng(rng_seed);
  std::discrete_distribution<int> pick(dist.probs.begin(), dist.probs.end());
  std::vector<DataAtom> data;
  data.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) data.push_back(canonical_atoms()[static_cast<std::size_t>(pick(rng))]);
  return data;
}

GaussianPosterior posterior_from_dataset(const std::vector<DataAtom>& data,
                                         GibbsConvention convention) {
  if (data.empty()) throw std::invalid_argument("dataset must be non-empty");
  Eigen::Matrix2d sum_xxt = Eigen::Matrix2d::Zero();
  Eigen::Vector2d sum_xy = Eigen::Vector2d::Zero();
  for (const DataAtom& atom : data) {
    sum_xxt += atom.x * atom.x.transpose();
    sum_xy += atom.x * atom.y;
  }
  return posterior_from_stats(sum_xxt, sum_xy, static_cast<double>(data.size()),
                              convention);
}

GaussianPosterior posterior_from_counts(const JointDataDistribution& dist, double n,
                                        GibbsConvention convention) {
  if (!(n > 0.0)) throw std::invalid_argument("pretraining size must be positive");
  require_simplex(dist.probs);
  Eigen::Matrix2d sum_xxt = Eigen::Matrix2d::Zero();
  Eigen::Vector2d sum_xy = Eigen::Vector2d::Zero();
  for (int i = 0; i < 8; ++i) {
    const DataAtom& atom = canonical_atoms()[static_cast<std::size_t>(i)];
    const double weight = n * dist.probs[i];
    sum_xxt += weight * (atom.x * atom.x.transpose());
    sum_xy += weight * atom.x * atom.y;
  }
  return posterior_from_stats(sum_xxt, sum_xy, n, convention);
}

GaussianPosterior single_sample_posterior(const GaussianPosterior& prior,
                                          const DataAtom& atom) {
  require_valid(prior);
  const Eigen::Matrix2d prior_precision = prior.cov.inverse();
  const Eigen::Matrix2d precision = prior_precision + atom.x * atom.x.transpose();
  const Eigen::Matrix2d cov = precision.inverse();
  const Eigen::Vector2d mean = cov * (prior_precision * prior.mean + atom.x * atom.y);
  return GaussianPosterior{mean, cov};
}

DivergenceMatrix gibbs_channel_matrix(const GaussianPosterior& prior) {
  require_valid(prior);
  std::array<GaussianPosterior, 8> posts;
  for (std::size_t i = 0; i < 8; ++i)
    posts[i] = single_sample_posterior(prior, canonical_atoms()[i]);

  Eigen::MatrixXd raw = Eigen::MatrixXd::Zero(8, 8);
  for (Eigen::Index i = 0; i < 8; ++i)
    for (Eigen::Index j = 0; j < 8; ++j)
      if (i != j)
        raw(i, j) = gaussian_kl(posts[static_cast<std::size_t>(i)].mean,
                                posts[static_cast<std::size_t>(i)].cov,
                                posts[static_cast<std::size_t>(j)].mean,
                                posts[static_cast<std::size_t>(j)].cov);
  return DivergenceMatrix::from_raw(std::move(raw));
}

WorstCaseReport worst_case_search(const JointDataDistribution& start,
                                  const WorstCaseOptions& opts) {
  if (opts.iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  if (opts.pretrain_n < 1) throw std::invalid_argument("pretrain size must be >= 1");
  require_simplex(start.probs);

  WorstCaseReport report;
  report.start = start;

  std::mt19937_64 rng(opts.rng_seed);
  JointDataDistribution current = start;
  for (int stage = 0; stage < opts.iterations; ++stage) {
    GaussianPosterior prior;
    if (opts.exact_counts) {
      prior = posterior_from_counts(current, opts.pretrain_n, opts.convention);
    } else {
      const std::vector<DataAtom> data =
          sample_dataset(current, opts.pretrain_n, rng());
      prior = posterior_from_dataset(data, opts.convention);
    }

    const DivergenceMatrix dm = gibbs_channel_matrix(prior);
    const double start_value = current.probs.dot(dm.sym() * current.probs);
    const SolveReport solved = max_skl(dm, opts.solve);

    // Mirror the reporting convention: trace masses are rounded away.
    Eigen::VectorXd probs = solved.caid;
    for (Eigen::Index i = 0; i < probs.size(); ++i)
      if (probs[i] < kReportRoundingThreshold) probs[i] = 0.0;
    probs /= probs.sum();

    current = JointDataDistribution{std::move(probs)};
    report.stages.push_back(
        WorstCaseStage{prior, current, start_value, solved.value_nats});
  }
  return report;
}

}  // namespace sklcap
