#include "stlmine/systems/transmission.hpp"

#include <algorithm>
#include <cmath>

namespace stlmine::systems {

void check_in_box(const System& system, const Eigen::VectorXd& x0) {
  const auto& b = system.x0_bounds();
  if (x0.size() != static_cast<Eigen::Index>(b.size())) {
    throw SimulationError(system.name() + ": initial condition has dimension " + std::to_string(x0.size()) +
                          ", expected " + std::to_string(b.size()));
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double v = x0(static_cast<Eigen::Index>(i));
    if (!(v >= b[i].lower && v <= b[i].upper)) {
      throw SimulationError(system.name() + ": initial condition component " + std::to_string(i) +
                            " outside its bounds");
    }
  }
}

TransmissionSurrogate::TransmissionSurrogate(std::size_t segments) : TransmissionSurrogate(segments, Constants{}) {}

TransmissionSurrogate::TransmissionSurrogate(std::size_t segments, Constants constants)
    : segments_(segments), c_(constants) {
  if (segments_ < 1) throw std::invalid_argument("transmission needs at least one input segment");
  if (!(c_.dt > 0.0) || !(c_.horizon > 0.0)) throw std::invalid_argument("transmission needs dt > 0 and horizon > 0");
  for (std::size_t i = 0; i < segments_; ++i) bounds_.push_back({0.0, c_.max_throttle});
  for (std::size_t i = 0; i < segments_; ++i) bounds_.push_back({0.0, c_.max_brake});
}

double TransmissionSurrogate::gear_ratio(int gear) {
  static constexpr double kRatios[] = {4.0, 2.5, 1.5, 1.0};
  return kRatios[std::clamp(gear, 1, 4) - 1];
}

stl::Signal TransmissionSurrogate::simulate(const Eigen::VectorXd& x0) const {
  check_in_box(*this, x0);
  const auto steps = static_cast<std::size_t>(std::llround(c_.horizon / c_.dt));
  const double segment_length = c_.horizon / static_cast<double>(segments_);
  Eigen::MatrixXd out(static_cast<Eigen::Index>(steps + 1), 3);

  double v = 0.0;
  int gear = 1;
  double dwell = 0.0;
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * c_.dt;
    // Small slack so a segment boundary on the grid belongs to the later segment.
    const auto seg = std::min(segments_ - 1, static_cast<std::size_t>((t + 1e-9 * c_.dt) / segment_length));
    const double throttle = x0(static_cast<Eigen::Index>(seg));
    const double brake = x0(static_cast<Eigen::Index>(segments_ + seg));

    const double rpm = std::min(c_.max_rpm, std::max(c_.idle_rpm, c_.rpm_per_mph * v * gear_ratio(gear) +
                                                                      c_.rpm_per_throttle * throttle));
    const auto row = static_cast<Eigen::Index>(k);
    out(row, 0) = v;
    out(row, 1) = rpm;
    out(row, 2) = gear;

    if (dwell >= c_.min_dwell - 1e-9) {
      if (rpm > c_.upshift_rpm + c_.upshift_per_throttle * throttle && gear < 4) {
        ++gear;
        dwell = 0.0;
      } else if (rpm < c_.downshift_rpm && gear > 1) {
        --gear;
        dwell = 0.0;
      }
    }
    double accel = c_.throttle_gain * throttle * gear_ratio(gear) - c_.brake_gain * brake - c_.drag * v * v - c_.rolling;
    if (v <= 0.0 && accel < 0.0) accel = 0.0;
    v = std::max(0.0, v + accel * c_.dt);
    dwell += c_.dt;
    if (!std::isfinite(v)) throw SimulationError("transmission: non-finite speed");
  }
  return stl::Signal(channels_, 0.0, c_.dt, std::move(out));
}

}  // namespace stlmine::systems
