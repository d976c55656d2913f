#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "stlmine/systems/system.hpp"

namespace stlmine::systems {

/// Discrete-time automatic transmission surrogate with channels speed (mph),
/// RPM and gear.
///
/// x0 holds piecewise-constant input levels over equal segments of the
/// horizon: `segments` throttle levels in [0, 100] followed by `segments`
/// brake levels in [0, 325]. Per step of dt, with gear ratio R(g) from
/// {4, 2.5, 1.5, 1}:
///
///   rpm   = min(6500, max(600, 40 v R(g) + 6 throttle))
///   shift up   if rpm > 4200 + 8 throttle, down if rpm < 1200,
///              only between adjacent gears and after 0.4 s in the gear
///   accel = 0.032 throttle R(g) - 0.010 brake - 0.0001 v^2 - 0.05
///   v    <- max(0, v + accel dt), no deceleration while stopped
///
/// The recorded sample k holds the state before step k is applied.
class TransmissionSurrogate final : public System {
 public:
  struct Constants {
    double dt = 0.01;
    double horizon = 30.0;
    double throttle_gain = 0.032;
    double brake_gain = 0.010;
    double drag = 0.0001;
    double rolling = 0.05;
    double rpm_per_mph = 40.0;
    double rpm_per_throttle = 6.0;
    double idle_rpm = 600.0;
    double max_rpm = 6500.0;
    double upshift_rpm = 4200.0;
    double upshift_per_throttle = 8.0;
    double downshift_rpm = 1200.0;
    double min_dwell = 0.4;
    double max_throttle = 100.0;
    double max_brake = 325.0;
  };

  explicit TransmissionSurrogate(std::size_t segments = 2);
  TransmissionSurrogate(std::size_t segments, Constants constants);

  std::string name() const override { return "transmission"; }
  const std::vector<acq::Interval>& x0_bounds() const override { return bounds_; }
  double horizon() const override { return c_.horizon; }
  double dt() const override { return c_.dt; }
  const std::vector<std::string>& channels() const override { return channels_; }
  stl::Signal simulate(const Eigen::VectorXd& x0) const override;

  std::size_t segments() const { return segments_; }
  const Constants& constants() const { return c_; }
  static double gear_ratio(int gear);

 private:
  std::size_t segments_;
  Constants c_;
  std::vector<acq::Interval> bounds_;
  std::vector<std::string> channels_{"speed", "RPM", "gear"};
};

}  // namespace stlmine::systems
