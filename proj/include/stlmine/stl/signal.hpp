#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stlmine::stl {

class SignalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Uniformly sampled multi-channel trace: row k holds the channel values at
/// time t0 + k * dt.
class Signal {
 public:
  /// Throws SignalError if dt <= 0, there are no samples, channel names are
  /// empty or repeated, the matrix shape disagrees, or a value is not finite.
  Signal(std::vector<std::string> channel_names, double t0, double dt, Eigen::MatrixXd values);

  const std::vector<std::string>& channel_names() const { return names_; }
  double t0() const { return t0_; }
  double dt() const { return dt_; }
  std::size_t samples() const { return static_cast<std::size_t>(values_.rows()); }
  std::size_t channels() const { return names_.size(); }
  double time(std::size_t k) const { return t0_ + static_cast<double>(k) * dt_; }
  double end_time() const { return time(samples() - 1); }

  const Eigen::MatrixXd& values() const { return values_; }
  double value(std::size_t k, std::size_t channel) const {
    return values_(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(channel));
  }
  auto column(std::size_t channel) const { return values_.col(static_cast<Eigen::Index>(channel)); }

  std::optional<std::size_t> channel_index(std::string_view name) const;

  /// Index of the sample at time t; nullopt when t is not on the grid
  /// (relative tolerance 1e-9 of dt) or outside the trace.
  std::optional<std::size_t> sample_index(double t) const;

  friend bool operator==(const Signal& a, const Signal& b);

 private:
  std::vector<std::string> names_;
  double t0_;
  double dt_;
  Eigen::MatrixXd values_;
};

/// Reads `time,ch1,ch2,...` CSV. Lines starting with '#' and blank lines are
/// skipped. At least two rows are needed to infer dt; time steps must be
/// uniform to within 1e-6 of dt.
Signal read_signal_csv(std::istream& in);
Signal read_signal_csv_file(const std::string& path);

/// Writes a versioned header comment followed by `time,ch...` rows; values
/// are printed in shortest round-trip form.
void write_signal_csv(std::ostream& out, const Signal& s);

}  // namespace stlmine::stl
