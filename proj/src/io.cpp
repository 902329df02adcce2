#include "sklcap/io.hpp"

#include <json.hpp>

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace sklcap {

namespace {

std::string format_full(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, sep)) out.push_back(trim(field));
  return out;
}

bool looks_like_json(const std::filesystem::path& path) {
  if (path.extension() == ".json") return true;
  if (path.extension() == ".csv") return false;
  std::ifstream in(path);
  char c = 0;
  while (in.get(c))
    if (!std::isspace(static_cast<unsigned char>(c))) return c == '{';
  return false;
}

}  // namespace

std::string format_sig12(double value) {
  if (value == 0.0) value = 0.0;  // avoid "-0"
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

DiscreteChannel read_channel_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed channel JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("matrix") || !doc["matrix"].is_array())
    throw std::runtime_error("malformed channel JSON: missing \"matrix\" array");

  const auto& rows = doc["matrix"];
  const Eigen::Index d = std::ssize(rows);
  if (d == 0) throw std::runtime_error("malformed channel JSON: empty matrix");
  const Eigen::Index m = rows[0].is_array() ? std::ssize(rows[0]) : 0;
  if (m == 0) throw std::runtime_error("malformed channel JSON: empty matrix row");

  Eigen::MatrixXd matrix(d, m);
  for (Eigen::Index i = 0; i < d; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || std::ssize(row) != m)
      throw std::runtime_error("malformed channel JSON: ragged matrix at row " +
                               std::to_string(i));
    for (Eigen::Index j = 0; j < m; ++j) {
      const auto& cell = row[static_cast<std::size_t>(j)];
      if (!cell.is_number())
        throw std::runtime_error("malformed channel JSON: non-numeric entry at row " +
                                 std::to_string(i));
      matrix(i, j) = cell.get<double>();
    }
  }

  std::vector<std::string> labels;
  if (doc.contains("input_labels")) {
    for (const auto& label : doc["input_labels"]) {
      if (label.is_string())
        labels.push_back(label.get<std::string>());
      else if (label.is_number())
        labels.push_back(numeric_label(label.get<double>()));
      else
        throw std::runtime_error("malformed channel JSON: label must be string or number");
    }
  }
  return make_channel(std::move(matrix), std::move(labels));
}

DiscreteChannel read_channel_csv(std::istream& in) {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      const auto pos = t.find("labels:");
      if (pos != std::string::npos) labels = split(t.substr(pos + 7), ',');
      continue;
    }
    std::vector<double> row;
    for (const std::string& field : split(t, ',')) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(field, &used);
      } catch (const std::exception&) {
        throw std::runtime_error("malformed channel CSV: bad number \"" + field +
                                 "\" in row " + std::to_string(rows.size()));
      }
      if (used != field.size())
        throw std::runtime_error("malformed channel CSV: bad number \"" + field +
                                 "\" in row " + std::to_string(rows.size()));
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("malformed channel CSV: no data rows");

  const Eigen::Index d = std::ssize(rows);
  const Eigen::Index m = std::ssize(rows[0]);
  Eigen::MatrixXd matrix(d, m);
  for (Eigen::Index i = 0; i < d; ++i) {
    if (std::ssize(rows[static_cast<std::size_t>(i)]) != m)
      throw std::runtime_error("malformed channel CSV: ragged row " + std::to_string(i));
    for (Eigen::Index j = 0; j < m; ++j)
      matrix(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return make_channel(std::move(matrix), std::move(labels));
}

void write_channel_json(std::ostream& out, const DiscreteChannel& ch) {
  nlohmann::json doc;
  doc["input_labels"] = ch.input_labels;
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < ch.input_size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < ch.output_size(); ++j) row.push_back(ch.matrix(i, j));
    rows.push_back(std::move(row));
  }
  doc["matrix"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

void write_channel_csv(std::ostream& out, const DiscreteChannel& ch) {
  out << "# labels:";
  for (std::size_t i = 0; i < ch.input_labels.size(); ++i)
    out << (i == 0 ? " " : ",") << ch.input_labels[i];
  out << '\n';
  for (Eigen::Index i = 0; i < ch.input_size(); ++i) {
    for (Eigen::Index j = 0; j < ch.output_size(); ++j) {
      if (j > 0) out << ',';
      out << format_full(ch.matrix(i, j));
    }
    out << '\n';
  }
}

DiscreteChannel load_channel(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open channel file: " + path.string());
  return looks_like_json(path) ? read_channel_json(in) : read_channel_csv(in);
}

void save_channel(const DiscreteChannel& ch, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write channel file: " + path.string());
  if (path.extension() == ".csv")
    write_channel_csv(out, ch);
  else
    write_channel_json(out, ch);
}

void write_sym_csv(std::ostream& out, const DivergenceMatrix& dm) {
  for (Eigen::Index i = 0; i < dm.dim(); ++i) {
    for (Eigen::Index j = 0; j < dm.dim(); ++j) {
      if (j > 0) out << ',';
      out << format_sig12(dm.sym()(i, j));
    }
    out << '\n';
  }
}

void write_trajectory_csv(std::ostream& out, const SolveReport& report) {
  out << "iter,objective_nats,tv_step\n";
  for (std::size_t k = 0; k < report.trajectory.size(); ++k)
    out << k << ',' << format_sig12(report.trajectory[k].objective_nats) << ','
        << format_sig12(report.trajectory[k].tv_step) << '\n';
}

}  // namespace sklcap
