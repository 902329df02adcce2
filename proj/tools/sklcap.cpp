// Command-line front end: capacity solvers, BSC sweeps, convergence
// comparisons, divergence-matrix export, and the Gibbs worst-case search.
// Data goes to stdout (or --output), logs to stderr.
// Exit codes: 0 success, 2 domain/numerical error, 64 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sklcap/channel.hpp"
#include "sklcap/divergence_matrix.hpp"
#include "sklcap/gibbs.hpp"
#include "sklcap/info_measures.hpp"
#include "sklcap/io.hpp"
#include "sklcap/solvers.hpp"

namespace {

constexpr int kExitDomainError = 2;
constexpr int kExitUsage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonFlags {
  std::string format = "csv";      // csv|json
  std::string log_base = "nats";   // nats|bits
  double epsilon = 1e-10;
  int max_iter = 10000;
  std::uint64_t seed = 0;
  int restarts = 0;
  std::string output;  // empty = stdout
};

struct ChannelFlags {
  std::string kind;  // bsc|bac|binomial|file
  double p = 0.0;
  double q = 0.0;
  int n = 10;
  std::string grid;
  std::string path;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SKLCAP_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError("SKLCAP_SEED is not an unsigned integer");
    }
  }
  return 0;
}

void add_common_flags(CLI::App* cmd, CommonFlags* flags) {
  cmd->add_option("--format", flags->format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--log-base", flags->log_base, "Unit for reported values")
      ->check(CLI::IsMember({"nats", "bits"}));
  cmd->add_option("--epsilon", flags->epsilon, "Convergence threshold");
  cmd->add_option("--max-iter", flags->max_iter, "Iteration cap");
  cmd->add_option("--seed", flags->seed, "RNG seed (default: SKLCAP_SEED or 0)");
  cmd->add_option("--restarts", flags->restarts, "Extra random starts");
  cmd->add_option("--output", flags->output, "Write data to a file instead of stdout");
}

void add_channel_flags(CLI::App* cmd, ChannelFlags* flags) {
  cmd->add_option("--channel", flags->kind, "Channel family")
      ->required()
      ->check(CLI::IsMember({"bsc", "bac", "binomial", "file"}));
  cmd->add_option("--p", flags->p, "Crossover probability (bsc, bac)");
  cmd->add_option("--q", flags->q, "1->0 crossover probability (bac)");
  cmd->add_option("--n", flags->n, "Binomial trial count");
  cmd->add_option("--grid", flags->grid, "Binomial input grid A:B:STEP");
  cmd->add_option("--path", flags->path, "Channel file (json or csv)");
}

/// Parses "V" or "A:B:STEP"; both endpoints are included when STEP divides
/// the span within 1e-9.
std::vector<double> parse_range(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ':')) parts.push_back(part);

  const auto to_double = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw UsageError("bad range \"" + spec + "\"");
    }
    if (used != s.size()) throw UsageError("bad range \"" + spec + "\"");
    return v;
  };

  if (parts.size() == 1) return {to_double(parts[0])};
  if (parts.size() != 3) throw UsageError("range must be a value or A:B:STEP");

  const double a = to_double(parts[0]);
  const double b = to_double(parts[1]);
  const double step = to_double(parts[2]);
  if (step <= 0.0) throw UsageError("range step must be positive");
  if (b < a) throw UsageError("reversed range \"" + spec + "\"");

  std::vector<double> values;
  const int count = static_cast<int>(std::floor((b - a) / step + 1e-9));
  for (int i = 0; i <= count; ++i) {
    double v = a + i * step;
    if (std::abs(v - b) <= 1e-9) v = b;
    values.push_back(v);
  }
  return values;
}

sklcap::DiscreteChannel build_channel(const ChannelFlags& flags) {
  if (flags.kind == "bsc") return sklcap::make_bsc(flags.p);
  if (flags.kind == "bac") return sklcap::make_bac(flags.p, flags.q);
  if (flags.kind == "binomial") {
    if (flags.grid.empty()) throw UsageError("binomial channel requires --grid");
    return sklcap::make_binomial(flags.n, parse_range(flags.grid));
  }
  if (flags.path.empty()) throw UsageError("file channel requires --path");
  return sklcap::load_channel(flags.path);
}

/// Writes to --output or stdout.
void emit(const CommonFlags& flags, const std::string& data) {
  if (flags.output.empty()) {
    std::cout << data;
    return;
  }
  std::ofstream out(flags.output);
  if (!out) throw std::runtime_error("cannot write output file: " + flags.output);
  out << data;
}

double in_base(double nats, const CommonFlags& flags) {
  return flags.log_base == "bits" ? sklcap::to_bits(nats) : nats;
}

// ---------------------------------------------------------------------------
// capacity

struct CapacityFlags {
  CommonFlags common;
  ChannelFlags channel;
  std::string algo = "max-skl";
  int resolution = 200;
  std::string trajectory_out;
};

sklcap::SolveReport run_capacity_algo(const CapacityFlags& flags,
                                      const sklcap::DiscreteChannel& ch) {
  const CommonFlags& c = flags.common;
  if (flags.algo == "ba") return sklcap::blahut_arimoto(ch, c.epsilon, c.max_iter);

  const sklcap::DivergenceMatrix dm = sklcap::kl_matrix(ch);
  if (flags.algo == "power") return sklcap::power_baseline(dm, c.epsilon, c.max_iter);
  if (flags.algo == "eigen") return sklcap::eigen_baseline(dm);
  if (flags.algo == "grid") return sklcap::grid_oracle(dm, flags.resolution);

  sklcap::SolveOptions opts;
  opts.epsilon = c.epsilon;
  opts.max_iter = c.max_iter;
  opts.restarts = c.restarts;
  opts.rng_seed = c.seed;
  opts.symmetrize = flags.algo != "max-skl-wos";
  return sklcap::max_skl(dm, opts);
}

void cmd_capacity(const CapacityFlags& flags) {
  const sklcap::DiscreteChannel ch = build_channel(flags.channel);
  const sklcap::SolveReport report = run_capacity_algo(flags, ch);
  const CommonFlags& c = flags.common;

  if (!flags.trajectory_out.empty()) {
    std::ofstream out(flags.trajectory_out);
    if (!out)
      throw std::runtime_error("cannot write trajectory file: " + flags.trajectory_out);
    sklcap::write_trajectory_csv(out, report);
  }
  for (const std::string& warning : report.warnings)
    std::cerr << "warning: " << warning << '\n';

  std::ostringstream out;
  if (c.format == "json") {
    nlohmann::json doc;
    doc["algorithm"] = report.algorithm;
    doc["value"] = in_base(report.value_nats, c);
    doc["log_base"] = c.log_base;
    doc["iterations"] = report.iterations;
    doc["converged"] = report.converged;
    doc["caid"] = std::vector<double>(report.caid.begin(), report.caid.end());
    doc["warnings"] = report.warnings;
    out << doc.dump(2) << '\n';
  } else {
    out << "algorithm,value,log_base,iterations,converged";
    for (Eigen::Index i = 0; i < report.caid.size(); ++i) out << ",caid_" << i;
    out << '\n'
        << report.algorithm << ',' << sklcap::format_sig12(in_base(report.value_nats, c))
        << ',' << c.log_base << ',' << report.iterations << ',' << (report.converged ? 1 : 0);
    for (Eigen::Index i = 0; i < report.caid.size(); ++i)
      out << ',' << sklcap::format_sig12(report.caid[i]);
    out << '\n';
  }
  emit(c, out.str());
}

// ---------------------------------------------------------------------------
// sweep

struct SweepFlags {
  CommonFlags common;
  std::string p_range;
  std::string algo = "max-skl";
};

void cmd_sweep(const SweepFlags& flags) {
  const std::vector<double> ps = parse_range(flags.p_range);
  for (double p : ps)
    if (!(p > 0.0 && p < 1.0))
      throw std::domain_error("sweep range must stay strictly inside (0,1)");

  struct Row {
    double p, theoretical_bits, computed_bits;
  };
  std::vector<Row> rows;
  for (double p : ps) {
    CapacityFlags cap;
    cap.common = flags.common;
    cap.algo = flags.algo;
    const sklcap::SolveReport report =
        run_capacity_algo(cap, sklcap::make_bsc(p));
    rows.push_back({p, sklcap::bsc_capacity_closed_form(p),
                    sklcap::to_bits(report.value_nats)});
  }

  std::ostringstream out;
  if (flags.common.format == "json") {
    nlohmann::json doc = nlohmann::json::array();
    for (const Row& r : rows)
      doc.push_back({{"p", r.p},
                     {"theoretical_bits", r.theoretical_bits},
                     {"computed_bits", r.computed_bits}});
    out << doc.dump(2) << '\n';
  } else {
    out << "p,theoretical_bits,computed_bits\n";
    for (const Row& r : rows)
      out << sklcap::format_sig12(r.p) << ',' << sklcap::format_sig12(r.theoretical_bits)
          << ',' << sklcap::format_sig12(r.computed_bits) << '\n';
  }
  emit(flags.common, out.str());
}

// ---------------------------------------------------------------------------
// compare

struct CompareFlags {
  CommonFlags common;
  ChannelFlags channel;
};

void cmd_compare(const CompareFlags& flags) {
  const sklcap::DiscreteChannel ch = build_channel(flags.channel);
  const sklcap::DivergenceMatrix dm = sklcap::kl_matrix(ch);
  const CommonFlags& c = flags.common;

  sklcap::SolveOptions opts;
  opts.epsilon = c.epsilon;
  opts.max_iter = c.max_iter;

  std::vector<sklcap::SolveReport> runs;
  runs.push_back(sklcap::max_skl(dm, opts));
  opts.symmetrize = false;
  runs.push_back(sklcap::max_skl(dm, opts));
  runs.push_back(sklcap::power_baseline(dm, c.epsilon, c.max_iter));

  // reference: I_SKL evaluated at the mutual-information caid
  const sklcap::SolveReport ba = sklcap::blahut_arimoto(ch, c.epsilon, c.max_iter);
  const double ba_ref = sklcap::i_skl_pairwise(ba.caid, dm);

  std::ostringstream out;
  if (c.format == "json") {
    nlohmann::json doc = nlohmann::json::array();
    for (const sklcap::SolveReport& run : runs)
      for (std::size_t k = 0; k < run.trajectory.size(); ++k)
        doc.push_back({{"algo", run.algorithm},
                       {"iter", k},
                       {"objective_nats", run.trajectory[k].objective_nats}});
    doc.push_back({{"algo", "ba-ref"}, {"iter", 0}, {"objective_nats", ba_ref}});
    out << doc.dump(2) << '\n';
  } else {
    out << "algo,iter,objective_nats\n";
    for (const sklcap::SolveReport& run : runs)
      for (std::size_t k = 0; k < run.trajectory.size(); ++k)
        out << run.algorithm << ',' << k << ','
            << sklcap::format_sig12(run.trajectory[k].objective_nats) << '\n';
    out << "ba-ref,0," << sklcap::format_sig12(ba_ref) << '\n';
  }
  emit(c, out.str());
}

// ---------------------------------------------------------------------------
// klmatrix

void cmd_klmatrix(const CompareFlags& flags) {
  const sklcap::DiscreteChannel ch = build_channel(flags.channel);
  const sklcap::DivergenceMatrix dm = sklcap::kl_matrix(ch);

  std::ostringstream out;
  if (flags.common.format == "json") {
    nlohmann::json doc;
    doc["input_labels"] = ch.input_labels;
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < dm.dim(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index j = 0; j < dm.dim(); ++j) row.push_back(dm.sym()(i, j));
      rows.push_back(std::move(row));
    }
    doc["sym"] = std::move(rows);
    out << doc.dump(2) << '\n';
  } else {
    std::stringstream csv;
    sklcap::write_sym_csv(csv, dm);
    out << csv.str();
  }
  emit(flags.common, out.str());
}

// ---------------------------------------------------------------------------
// gibbs

struct GibbsFlags {
  CommonFlags common;
  int which_case = 1;
  int n = 100;
  int iterations = 1;
  bool exact = false;
  bool scaled_prior = false;
};

void cmd_gibbs(const GibbsFlags& flags) {
  sklcap::WorstCaseOptions opts;
  opts.pretrain_n = flags.n;
  opts.iterations = flags.iterations;
  opts.exact_counts = flags.exact;
  opts.rng_seed = flags.common.seed;
  opts.convention = flags.scaled_prior ? sklcap::GibbsConvention::kScaledPrior
                                       : sklcap::GibbsConvention::kUnitPrior;
  opts.solve.epsilon = flags.common.epsilon;
  opts.solve.max_iter = flags.common.max_iter;
  opts.solve.restarts = flags.common.restarts;
  opts.solve.rng_seed = flags.common.seed;

  const sklcap::JointDataDistribution start = sklcap::case_distribution(flags.which_case);
  const sklcap::WorstCaseReport report = sklcap::worst_case_search(start, opts);

  std::ostringstream out;
  if (flags.common.format == "json") {
    nlohmann::json doc;
    doc["case"] = flags.which_case;
    doc["n"] = flags.n;
    doc["exact_counts"] = flags.exact;
    doc["iterations"] = flags.iterations;
    doc["seed"] = flags.common.seed;
    nlohmann::json atoms = nlohmann::json::array();
    for (const sklcap::DataAtom& a : sklcap::canonical_atoms())
      atoms.push_back({{"x", {a.x[0], a.x[1]}}, {"y", a.y}});
    doc["atoms"] = std::move(atoms);
    doc["start"] =
        std::vector<double>(report.start.probs.begin(), report.start.probs.end());
    nlohmann::json stages = nlohmann::json::array();
    for (std::size_t s = 0; s < report.stages.size(); ++s) {
      const sklcap::WorstCaseStage& stage = report.stages[s];
      const Eigen::Matrix2d& cov = stage.pretrained.cov;
      stages.push_back(
          {{"stage", s + 1},
           {"posterior_mean", {stage.pretrained.mean[0], stage.pretrained.mean[1]}},
           {"posterior_cov", {cov(0, 0), cov(0, 1), cov(1, 0), cov(1, 1)}},
           {"i_skl_start_nats", stage.i_skl_start_nats},
           {"i_skl_worst_nats", stage.i_skl_worst_nats},
           {"distribution", std::vector<double>(stage.distribution.probs.begin(),
                                                stage.distribution.probs.end())}});
    }
    doc["stages"] = std::move(stages);
    out << doc.dump(2) << '\n';
  } else {
    // table of per-atom probabilities across iterations
    out << "atom_x1,atom_x2,atom_y,p_s0";
    for (std::size_t s = 1; s <= report.stages.size(); ++s) out << ",p_s" << s;
    out << '\n';
    for (int i = 0; i < 8; ++i) {
      const sklcap::DataAtom& a = sklcap::canonical_atoms()[static_cast<std::size_t>(i)];
      out << a.x[0] << ',' << a.x[1] << ',' << a.y << ','
          << sklcap::format_sig12(report.start.probs[i]);
      for (const sklcap::WorstCaseStage& stage : report.stages)
        out << ',' << sklcap::format_sig12(stage.distribution.probs[i]);
      out << '\n';
    }
    // posterior block, one row per pre-training stage
    out << "\nstage,mean_1,mean_2,cov_11,cov_12,cov_21,cov_22,"
           "i_skl_start_nats,i_skl_worst_nats\n";
    for (std::size_t s = 0; s < report.stages.size(); ++s) {
      const sklcap::WorstCaseStage& stage = report.stages[s];
      const Eigen::Matrix2d& cov = stage.pretrained.cov;
      out << (s + 1) << ',' << sklcap::format_sig12(stage.pretrained.mean[0]) << ','
          << sklcap::format_sig12(stage.pretrained.mean[1]) << ','
          << sklcap::format_sig12(cov(0, 0)) << ',' << sklcap::format_sig12(cov(0, 1))
          << ',' << sklcap::format_sig12(cov(1, 0)) << ','
          << sklcap::format_sig12(cov(1, 1)) << ','
          << sklcap::format_sig12(stage.i_skl_start_nats) << ','
          << sklcap::format_sig12(stage.i_skl_worst_nats) << '\n';
    }
  }
  emit(flags.common, out.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetrized-KL capacity toolkit for discrete channels"};
  app.require_subcommand(1);

  CapacityFlags capacity;
  CLI::App* cap_cmd =
      app.add_subcommand("capacity", "Solve for the capacity of a channel");
  add_common_flags(cap_cmd, &capacity.common);
  add_channel_flags(cap_cmd, &capacity.channel);
  cap_cmd
      ->add_option("--algo", capacity.algo, "Solver")
      ->check(CLI::IsMember({"max-skl", "max-skl-wos", "ba", "power", "eigen", "grid"}));
  cap_cmd->add_option("--resolution", capacity.resolution,
                      "Lattice steps per axis (grid oracle)");
  cap_cmd->add_option("--trajectory", capacity.trajectory_out,
                      "Write the solve trajectory CSV to this file");

  SweepFlags sweep;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "BSC sweep: theoretical vs computed capacity in bits");
  add_common_flags(sweep_cmd, &sweep.common);
  sweep_cmd->add_option("--p-range", sweep.p_range, "Crossover range A:B:STEP")
      ->required();
  sweep_cmd->add_option("--algo", sweep.algo, "Solver for the computed column")
      ->check(CLI::IsMember({"max-skl", "max-skl-wos", "ba", "power", "eigen", "grid"}));

  CompareFlags compare;
  CLI::App* compare_cmd = app.add_subcommand(
      "compare", "Per-iteration objectives for max-skl, max-skl-wos and power");
  add_common_flags(compare_cmd, &compare.common);
  add_channel_flags(compare_cmd, &compare.channel);

  CompareFlags klmatrix;
  CLI::App* klmatrix_cmd =
      app.add_subcommand("klmatrix", "Symmetrized pairwise-KL matrix of a channel");
  add_common_flags(klmatrix_cmd, &klmatrix.common);
  add_channel_flags(klmatrix_cmd, &klmatrix.channel);

  GibbsFlags gibbs;
  CLI::App* gibbs_cmd =
      app.add_subcommand("gibbs", "Worst-case data distributions for the Gibbs channel");
  add_common_flags(gibbs_cmd, &gibbs.common);
  gibbs_cmd->add_option("--case", gibbs.which_case, "Reference data distribution")
      ->required()
      ->check(CLI::IsMember({1, 2}));
  gibbs_cmd->add_option("--n", gibbs.n, "Pre-training sample count");
  gibbs_cmd->add_option("--iterations", gibbs.iterations, "Worst-case search stages");
  gibbs_cmd->add_flag("--exact", gibbs.exact,
                      "Use exact expected counts instead of sampling");
  gibbs_cmd->add_flag("--scaled-prior", gibbs.scaled_prior,
                      "Use the n-scaled prior convention");

  try {
    capacity.common.seed = default_seed();
    sweep.common.seed = capacity.common.seed;
    compare.common.seed = capacity.common.seed;
    klmatrix.common.seed = capacity.common.seed;
    gibbs.common.seed = capacity.common.seed;

    app.parse(argc, argv);

    if (*cap_cmd) cmd_capacity(capacity);
    if (*sweep_cmd) cmd_sweep(sweep);
    if (*compare_cmd) cmd_compare(compare);
    if (*klmatrix_cmd) cmd_klmatrix(klmatrix);
    if (*gibbs_cmd) cmd_gibbs(gibbs);
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomainError;
  }
}
