#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <vector>

#include "sklcap/divergence_matrix.hpp"
#include "sklcap/solvers.hpp"

namespace sklcap {

/// One labeled example for the two-feature sign-valued regression setup:
/// features in {-1,+1}^2 and a label in {-1,+1}.
struct DataAtom {
  Eigen::Vector2d x;
  double y = 1.0;
};

/// The eight possible atoms in canonical order: the four label-consistent
/// points ([1,1],1), ([1,-1],-1), ([-1,1],1), ([-1,-1],-1) followed by the
/// same coordinates with flipped labels. All distributions over atoms use
/// this order.
const std::array<DataAtom, 8>& canonical_atoms();

/// Distribution over the eight canonical atoms.
struct JointDataDistribution {
  Eigen::VectorXd probs;  // length 8, on the simplex
};

JointDataDistribution make_joint_distribution(Eigen::VectorXd probs);

/// The two reference data distributions: case 1 is linearly separable
/// (labels follow the second feature), case 2 is the XOR pattern that no
/// linear rule fits.
JointDataDistribution case_distribution(int which);

/// i.i.d. draws from the atom distribution; deterministic given the seed.
std::vector<DataAtom> sample_dataset(const JointDataDistribution& dist, int n,
                                     std::uint64_t rng_seed);

/// Gaussian posterior over the two linear-model weights.
struct GaussianPosterior {
  Eigen::Vector2d mean;
  Eigen::Matrix2d cov;  // symmetric positive definite
};

/// Which Gibbs-posterior convention maps a dataset to a Gaussian.
/// kUnitPrior uses a standard-normal prior with precision I + sum x x^T;
/// kScaledPrior uses the n-scaled prior N(0, I/n) with inverse temperature
/// n, i.e. precision n I + 2 sum x x^T. kUnitPrior is the default and the
/// convention all reference values in the tests use.
enum class GibbsConvention { kUnitPrior, kScaledPrior };

/// Batch Gaussian posterior from a dataset.
GaussianPosterior posterior_from_dataset(const std::vector<DataAtom>& data,
                                         GibbsConvention convention = GibbsConvention::kUnitPrior);

/// Posterior from exact expected counts: each atom contributes weight
/// n * prob(atom) to the sufficient statistics. Removes sampling noise.
GaussianPosterior posterior_from_counts(const JointDataDistribution& dist, double n,
                                        GibbsConvention convention = GibbsConvention::kUnitPrior);

/// Conjugate single-observation update:
///   precision' = cov^-1 + x x^T,  mean' = precision'^-1 (cov^-1 mean + x y).
GaussianPosterior single_sample_posterior(const GaussianPosterior& prior,
                                          const DataAtom& atom);

/// The 8x8 pairwise Gaussian-KL matrix of the single-sample channel: entry
/// (i,j) compares the posteriors after observing atom i versus atom j,
/// in canonical order.
DivergenceMatrix gibbs_channel_matrix(const GaussianPosterior& prior);

struct WorstCaseStage {
  GaussianPosterior pretrained;        ///< posterior used as this stage's prior
  JointDataDistribution distribution;  ///< worst-case distribution found
  double i_skl_start_nats = 0.0;       ///< quadratic form at the stage input
  double i_skl_worst_nats = 0.0;       ///< quadratic form at the found caid
};

struct WorstCaseReport {
  JointDataDistribution start;
  std::vector<WorstCaseStage> stages;
};

struct WorstCaseOptions {
  int pretrain_n = 100;
  int iterations = 1;
  bool exact_counts = true;  ///< expected counts instead of sampling
  std::uint64_t rng_seed = 0;
  GibbsConvention convention = GibbsConvention::kUnitPrior;
  SolveOptions solve;
};

/// Alternates pre-training on the current distribution with a Max-SKL
/// solve over the 8-atom simplex, recording each stage's posterior and
/// worst-case distribution. Found distributions have entries below 1e-6
/// rounded away (and are renormalized) before being reported and reused.
WorstCaseReport worst_case_search(const JointDataDistribution& start,
                                  const WorstCaseOptions& opts);

}  // namespace sklcap
