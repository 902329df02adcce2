#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "sklcap/gibbs.hpp"
#include "sklcap/simplex.hpp"

using namespace sklcap;

namespace {

Eigen::VectorXd probs8(std::initializer_list<double> values) {
  Eigen::VectorXd p(8);
  Eigen::Index i = 0;
  for (double v : values) p[i++] = v;
  return p;
}

// Partner atom with the identical single-sample posterior: (x,y) and
// (-x,-y) produce the same sufficient statistics.
constexpr int kMirror[8] = {3, 2, 1, 0, 7, 6, 5, 4};

}  // namespace

TEST_CASE("canonical atoms") {
  const auto& atoms = canonical_atoms();
  CHECK(atoms[0].x == Eigen::Vector2d(1, 1));
  CHECK(atoms[0].y == 1.0);
  CHECK(atoms[7].x == Eigen::Vector2d(-1, -1));
  CHECK(atoms[7].y == 1.0);
  for (const DataAtom& a : atoms) {
    CHECK(std::abs(a.x[0]) == 1.0);
    CHECK(std::abs(a.x[1]) == 1.0);
    CHECK(std::abs(a.y) == 1.0);
  }
  // mirror table really pairs identical statistics
  for (int i = 0; i < 8; ++i) {
    const DataAtom& a = atoms[static_cast<std::size_t>(i)];
    const DataAtom& b = atoms[static_cast<std::size_t>(kMirror[i])];
    CHECK(a.x == -b.x);
    CHECK(a.y == -b.y);
  }
}

TEST_CASE("case distributions") {
  const JointDataDistribution c1 = case_distribution(1);
  CHECK(is_simplex(c1.probs));
  for (int i = 0; i < 8; ++i) {
    const DataAtom& a = canonical_atoms()[static_cast<std::size_t>(i)];
    if (c1.probs[i] > 0.0) CHECK(a.y == a.x[1]);  // labels follow x2
  }

  const JointDataDistribution c2 = case_distribution(2);
  CHECK(is_simplex(c2.probs));
  for (int i = 0; i < 8; ++i) {
    const DataAtom& a = canonical_atoms()[static_cast<std::size_t>(i)];
    if (c2.probs[i] > 0.0) CHECK(a.y == a.x[0] * a.x[1]);  // XOR pattern
  }

  CHECK_THROWS_AS(case_distribution(3), std::domain_error);
  CHECK_THROWS_AS(case_distribution(0), std::domain_error);
}

TEST_CASE("sample_dataset") {
  const JointDataDistribution c1 = case_distribution(1);
  const std::vector<DataAtom> a = sample_dataset(c1, 100, 11);
  const std::vector<DataAtom> b = sample_dataset(c1, 100, 11);
  REQUIRE(a.size() == 100);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].x == b[i].x);
    CHECK(a[i].y == b[i].y);
  }

  // law of large numbers at desk scale
  Eigen::VectorXd freq = Eigen::VectorXd::Zero(8);
  for (const DataAtom& atom : a)
    for (int i = 0; i < 8; ++i) {
      const DataAtom& c = canonical_atoms()[static_cast<std::size_t>(i)];
      if (c.x == atom.x && c.y == atom.y) freq[i] += 0.01;
    }
  CHECK((freq - c1.probs).cwiseAbs().maxCoeff() <= 0.15);

  JointDataDistribution degenerate{probs8({0, 0, 0, 0, 0, 1, 0, 0})};
  for (const DataAtom& atom : sample_dataset(degenerate, 20, 3)) {
    CHECK(atom.x == canonical_atoms()[5].x);
    CHECK(atom.y == canonical_atoms()[5].y);
  }
}

TEST_CASE("posterior from exact case-1 counts") {
  const GaussianPosterior post = posterior_from_counts(case_distribution(1), 100);
  CHECK(post.mean[0] == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(post.mean[1] == doctest::Approx(100.0 / 101.0).epsilon(1e-13));
  CHECK(post.cov(0, 0) == doctest::Approx(1.0 / 101.0).epsilon(1e-13));
  CHECK(post.cov(1, 1) == doctest::Approx(1.0 / 101.0).epsilon(1e-13));
  CHECK(std::abs(post.cov(0, 1)) <= 1e-15);
}

TEST_CASE("posterior from the case-2 worst-case counts") {
  // both labels on [1,-1] and [-1,1], a quarter each
  const JointDataDistribution dist{probs8({0, 0.25, 0.25, 0, 0, 0.25, 0.25, 0})};
  const GaussianPosterior post = posterior_from_counts(dist, 100);
  CHECK(post.mean.cwiseAbs().maxCoeff() <= 1e-13);
  CHECK(post.cov(0, 0) == doctest::Approx(101.0 / 201.0).epsilon(1e-12));
  CHECK(post.cov(0, 1) == doctest::Approx(100.0 / 201.0).epsilon(1e-12));
  CHECK(post.cov(1, 0) == doctest::Approx(100.0 / 201.0).epsilon(1e-12));
  CHECK(post.cov(1, 1) == doctest::Approx(101.0 / 201.0).epsilon(1e-12));
}

TEST_CASE("posterior from a single atom") {
  const GaussianPosterior post = posterior_from_dataset({canonical_atoms()[0]});
  // precision [[2,1],[1,2]], mean (1/3, 1/3)
  CHECK(post.mean[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(post.mean[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  const Eigen::Matrix2d precision = post.cov.inverse();
  CHECK(precision(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(precision(0, 1) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(posterior_from_dataset({}), std::invalid_argument);
}

TEST_CASE("single-sample update") {
  const GaussianPosterior standard{Eigen::Vector2d::Zero(), Eigen::Matrix2d::Identity()};

  SUBCASE("consistency with the batch posterior") {
    const DataAtom atom = canonical_atoms()[0];
    const GaussianPosterior a = single_sample_posterior(standard, atom);
    const GaussianPosterior b = posterior_from_dataset({atom});
    CHECK((a.mean - b.mean).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((a.cov - b.cov).cwiseAbs().maxCoeff() <= 1e-14);
  }

  SUBCASE("chain equals batch on random datasets") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> pick(0, 7);
    std::uniform_int_distribution<int> size(1, 50);
    for (int t = 0; t < 30; ++t) {
      std::vector<DataAtom> data;
      const int n = size(rng);
      for (int i = 0; i < n; ++i)
        data.push_back(canonical_atoms()[static_cast<std::size_t>(pick(rng))]);

      GaussianPosterior chained = standard;
      for (const DataAtom& atom : data) chained = single_sample_posterior(chained, atom);
      const GaussianPosterior batch = posterior_from_dataset(data);
      CHECK((chained.mean - batch.mean).cwiseAbs().maxCoeff() <= 1e-10);
      CHECK((chained.cov - batch.cov).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }

  SUBCASE("a tight prior dominates one observation") {
    const GaussianPosterior tight{Eigen::Vector2d(0.3, -0.2),
                                  1e-6 * Eigen::Matrix2d::Identity()};
    const GaussianPosterior post = single_sample_posterior(tight, canonical_atoms()[1]);
    CHECK((post.mean - tight.mean).cwiseAbs().maxCoeff() <= 1e-4);
  }

  SUBCASE("invalid priors are rejected") {
    GaussianPosterior bad{Eigen::Vector2d::Zero(), Eigen::Matrix2d::Zero()};
    CHECK_THROWS_AS(single_sample_posterior(bad, canonical_atoms()[0]),
                    std::domain_error);
  }
}

TEST_CASE("gibbs channel matrix") {
  const GaussianPosterior prior = posterior_from_counts(case_distribution(1), 100);
  const DivergenceMatrix dm = gibbs_channel_matrix(prior);

  CHECK(dm.dim() == 8);
  CHECK(dm.raw().diagonal().cwiseAbs().maxCoeff() == 0.0);
  CHECK(dm.raw().minCoeff() >= 0.0);

  // negated atoms share a posterior, so their entries vanish
  for (int i = 0; i < 8; ++i) CHECK(dm.raw()(i, kMirror[i]) <= 1e-12);

  // The largest divergences are between two label-flipped atoms with
  // different coordinates: those posteriors are pulled away from the tight
  // prior in the most dissimilar directions. This is what concentrates the
  // worst case on the flipped atoms.
  Eigen::Index r = 0, c = 0;
  dm.sym().maxCoeff(&r, &c);
  CHECK(r >= 4);
  CHECK(c >= 4);
  CHECK(canonical_atoms()[static_cast<std::size_t>(r)].x !=
        canonical_atoms()[static_cast<std::size_t>(c)].x);
  // and every flipped-flipped divergence beats every consistent-flipped one
  CHECK(dm.sym().bottomRightCorner(4, 4).maxCoeff() >
        dm.sym().topRightCorner(4, 4).maxCoeff());
}

TEST_CASE("label flip negates the posterior mean") {
  SUBCASE("case distributions") {
    for (int which : {1, 2}) {
      const JointDataDistribution dist = case_distribution(which);
      Eigen::VectorXd flipped(8);
      for (int i = 0; i < 8; ++i) flipped[i] = dist.probs[(i + 4) % 8];
      const GaussianPosterior a = posterior_from_counts(dist, 100);
      const GaussianPosterior b =
          posterior_from_counts(JointDataDistribution{flipped}, 100);
      CHECK(a.mean == -b.mean);
      CHECK(a.cov == b.cov);
    }
  }
  SUBCASE("random distributions") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 20; ++t) {
      const Eigen::VectorXd p = sample_dirichlet(8, rng);
      Eigen::VectorXd flipped(8);
      for (int i = 0; i < 8; ++i) flipped[i] = p[(i + 4) % 8];
      const GaussianPosterior a = posterior_from_counts(JointDataDistribution{p}, 100);
      const GaussianPosterior b =
          posterior_from_counts(JointDataDistribution{flipped}, 100);
      CHECK((a.mean + b.mean).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK((a.cov - b.cov).cwiseAbs().maxCoeff() <= 1e-14);
    }
  }
}

TEST_CASE("scaled-prior convention") {
  const GaussianPosterior post =
      posterior_from_counts(case_distribution(1), 100, GibbsConvention::kScaledPrior);
  // precision 300 I, mean (0, 200/300)
  CHECK(post.cov(0, 0) == doctest::Approx(1.0 / 300.0).epsilon(1e-12));
  CHECK(post.mean[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("worst-case search, case 1 with exact counts") {
  WorstCaseOptions opts;
  opts.iterations = 2;
  const WorstCaseReport report = worst_case_search(case_distribution(1), opts);
  REQUIRE(report.stages.size() == 2);

  const WorstCaseStage& s1 = report.stages[0];
  CHECK(is_simplex(s1.distribution.probs));
  CHECK(s1.pretrained.mean[1] == doctest::Approx(100.0 / 101.0).epsilon(1e-12));

  // the first worst case flips every label
  const Eigen::VectorXd flipped = probs8({0, 0, 0, 0, 0.25, 0.25, 0.25, 0.25});
  CHECK((s1.distribution.probs - flipped).cwiseAbs().maxCoeff() <= 1e-2);
  CHECK(s1.i_skl_worst_nats > s1.i_skl_start_nats);
  CHECK(s1.i_skl_start_nats >= 0.0);

  // the second iteration reverts to the original atoms
  const WorstCaseStage& s2 = report.stages[1];
  const Eigen::VectorXd original = probs8({0.25, 0.25, 0.25, 0.25, 0, 0, 0, 0});
  CHECK((s2.distribution.probs - original).cwiseAbs().maxCoeff() <= 1e-2);
  CHECK(s2.pretrained.mean[1] < -0.9);  // retrained mean flips sign
  CHECK(s2.i_skl_worst_nats > s2.i_skl_start_nats);
}

TEST_CASE("worst-case search, case 2 with exact counts sits at the symmetric point") {
  // Exact pretraining on the XOR pattern gives exactly N(0, I/101); the
  // induced divergence matrix has equal row sums, so the uniform start is
  // already a fixed point of the multiplicative update (and its objective is
  // no worse than any pair-concentrated alternative).
  WorstCaseOptions opts;
  opts.iterations = 1;
  const WorstCaseReport report = worst_case_search(case_distribution(2), opts);
  const WorstCaseStage& s1 = report.stages[0];
  CHECK(s1.pretrained.mean.cwiseAbs().maxCoeff() <= 1e-13);
  CHECK((s1.distribution.probs.array() - 0.125).abs().maxCoeff() <= 1e-9);
  CHECK(s1.i_skl_worst_nats == doctest::Approx(0.019419342254708).epsilon(1e-9));
}

TEST_CASE("worst-case search, case 2 with sampled pretraining") {
  WorstCaseOptions opts;
  opts.iterations = 1;
  opts.exact_counts = false;
  opts.rng_seed = 20240611;
  const WorstCaseReport report = worst_case_search(case_distribution(2), opts);
  const WorstCaseStage& s1 = report.stages[0];
  CHECK(is_simplex(s1.distribution.probs));
  // sampling noise tilts the landscape, so the solve strictly improves
  CHECK(s1.i_skl_worst_nats > s1.i_skl_start_nats);
  // mirrored atoms still share a posterior, so their masses stay balanced
  for (int i = 0; i < 8; ++i)
    CHECK(s1.distribution.probs[i] ==
          doctest::Approx(s1.distribution.probs[kMirror[i]]).epsilon(1e-6));
}

TEST_CASE("worst-case search input validation") {
  WorstCaseOptions opts;
  opts.iterations = 0;
  CHECK_THROWS_AS(worst_case_search(case_distribution(1), opts), std::invalid_argument);
  opts = {};
  opts.pretrain_n = 0;
  CHECK_THROWS_AS(worst_case_search(case_distribution(1), opts), std::invalid_argument);
  CHECK_THROWS_AS(make_joint_distribution(Eigen::VectorXd::Constant(4, 0.25)),
                  std::invalid_argument);
}
