#include "stlmine/systems/ackley.hpp"

#include <cmath>
#include <numbers>

namespace stlmine::systems {

double ackley(double x, double y) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double radial = -20.0 * std::exp(-0.2 * std::sqrt(0.5 * (x * x + y * y)));
  const double periodic = -std::exp(0.5 * (std::cos(two_pi * x) + std::cos(two_pi * y)));
  return radial + periodic + std::numbers::e + 20.0;
}

}  // namespace stlmine::systems
