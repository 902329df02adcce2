#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "sklcap/channel.hpp"
#include "sklcap/divergence_matrix.hpp"
#include "sklcap/solvers.hpp"

namespace sklcap {

/// Loads a channel from a JSON file ({"input_labels": [...], "matrix":
/// [[...], ...]}) or a CSV file (one row of probabilities per input symbol,
/// optional "# labels: ..." header). The format is chosen by extension,
/// falling back to content sniffing. Validation failures name the offending
/// row.
DiscreteChannel load_channel(const std::filesystem::path& path);

/// Saves a channel in the JSON or CSV schema (by extension, default JSON).
/// Probabilities are written with enough digits to round-trip exactly.
void save_channel(const DiscreteChannel& ch, const std::filesystem::path& path);

DiscreteChannel read_channel_json(std::istream& in);
DiscreteChannel read_channel_csv(std::istream& in);
void write_channel_json(std::ostream& out, const DiscreteChannel& ch);
void write_channel_csv(std::ostream& out, const DiscreteChannel& ch);

/// Symmetrized divergence matrix as CSV (row-major, 12 significant digits).
void write_sym_csv(std::ostream& out, const DivergenceMatrix& dm);

/// Solve trajectory as CSV with columns iter,objective_nats,tv_step.
void write_trajectory_csv(std::ostream& out, const SolveReport& report);

/// Formats a double with 12 significant digits (the CSV convention).
std::string format_sig12(double value);

}  // namespace sklcap
