#include "stlmine/mining/templates.hpp"

#include <stdexcept>

#include "stlmine/common/number_format.hpp"
#include "stlmine/stl/parser.hpp"

namespace stlmine::mining {

using stl::Monotonicity;
using stl::ParamKind;

Template speed_rpm_template(double horizon) {
  const std::string text = "G[0," + format_number(horizon) + ")(speed < $pi1 && RPM < $pi2)";
  return {"sp_rpm",
          stl::parse_parametric_formula(
              text, {{"pi1", ParamKind::kScale, 0.0, 200.0, Monotonicity::kIncreasing},
                     {"pi2", ParamKind::kScale, 0.0, 7000.0, Monotonicity::kIncreasing}}),
          1.0};
}

Template rpm100_template(double horizon) {
  const std::string text = "!(F[0,$tau)(speed >= 100) && G[0," + format_number(horizon) + ")(RPM < $pi))";
  return {"rpm100",
          stl::parse_parametric_formula(
              text, {{"pi", ParamKind::kScale, 1000.0, 7000.0, Monotonicity::kDecreasing},
                     {"tau", ParamKind::kTime, 1.0, horizon, Monotonicity::kDecreasing}}),
          1.0};
}

Template stay_template(double horizon, double dt) {
  constexpr double kMaxDwell = 5.0;
  const std::string gear2 = "(gear >= 1.5 && gear < 2.5)";
  const std::string not_gear2 = "(gear < 1.5 || gear >= 2.5)";
  const std::string step = format_number(dt);
  const std::string two_steps = format_number(2.0 * dt);
  // Outer window leaves room for the longest dwell window inside the trace.
  const std::string outer = format_number(horizon - kMaxDwell);
  const std::string text = "G[0," + outer + ")(!(" + not_gear2 + " && F[" + step + "," + two_steps + ")" + gear2 +
                           ") || G[" + step + ",$tau)" + gear2 + ")";
  return {"stay",
          stl::parse_parametric_formula(
              text, {{"tau", ParamKind::kTime, 2.0 * dt, kMaxDwell, Monotonicity::kDecreasing}}),
          0.5};
}

std::vector<std::string> template_names() { return {"sp_rpm", "rpm100", "stay"}; }

Template make_template(const std::string& name, double horizon, double dt) {
  if (name == "sp_rpm") return speed_rpm_template(horizon);
  if (name == "rpm100") return rpm100_template(horizon);
  if (name == "stay") return stay_template(horizon, dt);
  throw std::invalid_argument("unknown template '" + name + "'");
}

}  // namespace stlmine::mining
