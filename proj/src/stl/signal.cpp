#include "stlmine/stl/signal.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "stlmine/common/number_format.hpp"

namespace stlmine::stl {

Signal::Signal(std::vector<std::string> channel_names, double t0, double dt, Eigen::MatrixXd values)
    : names_(std::move(channel_names)), t0_(t0), dt_(dt), values_(std::move(values)) {
  if (!(dt_ > 0.0) || !std::isfinite(dt_)) throw SignalError("signal dt must be positive and finite");
  if (!std::isfinite(t0_)) throw SignalError("signal t0 must be finite");
  if (values_.rows() < 1) throw SignalError("signal needs at least one sample");
  if (names_.empty()) throw SignalError("signal needs at least one channel");
  if (values_.cols() != static_cast<Eigen::Index>(names_.size())) {
    throw SignalError("signal has " + std::to_string(names_.size()) + " channel names but " +
                      std::to_string(values_.cols()) + " value columns");
  }
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw SignalError("empty channel name");
    if (!seen.insert(n).second) throw SignalError("duplicate channel name '" + n + "'");
  }
  if (!values_.allFinite()) throw SignalError("signal values must be finite");
}

std::optional<std::size_t> Signal::channel_index(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Signal::sample_index(double t) const {
  const double k = (t - t0_) / dt_;
  const double rounded = std::round(k);
  if (std::abs(k - rounded) > 1e-9 * std::max(1.0, std::abs(k))) return std::nullopt;
  if (rounded < 0.0 || rounded >= static_cast<double>(samples())) return std::nullopt;
  return static_cast<std::size_t>(rounded);
}

bool operator==(const Signal& a, const Signal& b) {
  return a.names_ == b.names_ && a.t0_ == b.t0_ && a.dt_ == b.dt_ && a.values_.rows() == b.values_.rows() &&
         a.values_ == b.values_;
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

Signal read_signal_csv(std::istream& in) {
  std::string line;
  std::vector<std::string> header;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    header = split(line);
    break;
  }
  if (header.empty()) throw SignalError("signal CSV has no header");
  for (auto& h : header) h = trim(h);
  if (header.front() != "time") throw SignalError("signal CSV header must start with 'time'");
  if (header.size() < 2) throw SignalError("signal CSV needs at least one channel column");

  std::vector<double> times;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    auto cells = split(line);
    if (cells.size() != header.size()) {
      throw SignalError("line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                        " fields, found " + std::to_string(cells.size()));
    }
    std::vector<double> row;
    row.reserve(cells.size() - 1);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      auto v = parse_number(cells[i]);
      if (!v) throw SignalError("line " + std::to_string(line_no) + ": malformed number '" + cells[i] + "'");
      if (i == 0) {
        times.push_back(*v);
      } else {
        row.push_back(*v);
      }
    }
    rows.push_back(std::move(row));
  }
  if (times.size() < 2) throw SignalError("signal CSV needs at least two samples to infer dt");
  const double t0 = times.front();
  const double dt = times[1] - times[0];
  if (!(dt > 0.0)) throw SignalError("signal CSV time must be strictly increasing");
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double expected = t0 + static_cast<double>(k) * dt;
    if (std::abs(times[k] - expected) > 1e-6 * dt) {
      throw SignalError("signal CSV time steps are not uniform at sample " + std::to_string(k));
    }
  }
  Eigen::MatrixXd values(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(header.size() - 1));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  return Signal(std::vector<std::string>(header.begin() + 1, header.end()), t0, dt, std::move(values));
}

Signal read_signal_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SignalError("cannot open signal file '" + path + "'");
  return read_signal_csv(in);
}

void write_signal_csv(std::ostream& out, const Signal& s) {
  out << "# stlmine signal v1\n";
  out << "time";
  for (const auto& n : s.channel_names()) out << ',' << n;
  out << '\n';
  for (std::size_t k = 0; k < s.samples(); ++k) {
    out << format_number(s.time(k));
    for (std::size_t c = 0; c < s.channels(); ++c) out << ',' << format_number(s.value(k, c));
    out << '\n';
  }
}

}  // namespace stlmine::stl
