#pragma once

#include <string>
#include <vector>

#include "stlmine/stl/formula.hpp"

namespace stlmine::mining {

/// A named requirement template with the tightness bound used when mining it.
struct Template {
  std::string name;
  stl::ParametricFormula formula;
  double epsilon;
};

/// Speed and RPM always below pi1 and pi2 over the whole run.
Template speed_rpm_template(double horizon = 30.0);
/// Speed 100 is not reachable within tau while RPM stays below pi.
Template rpm100_template(double horizon = 30.0);
/// After every shift into gear 2 the gear stays 2 for tau seconds.
/// Gear 2 is encoded as 1.5 <= gear < 2.5; one sample of dt detects a shift.
Template stay_template(double horizon = 30.0, double dt = 0.01);

/// sp_rpm, rpm100, stay.
std::vector<std::string> template_names();
/// Throws std::invalid_argument for an unknown name.
Template make_template(const std::string& name, double horizon = 30.0, double dt = 0.01);

}  // namespace stlmine::mining
