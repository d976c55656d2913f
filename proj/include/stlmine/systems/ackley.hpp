#pragma once

namespace stlmine::systems {

/// Two-dimensional Ackley function; global minimum 0 at the origin.
double ackley(double x, double y);

/// Benchmark box [-5, 5] on both axes.
inline constexpr double kAckleyHalfWidth = 5.0;

}  // namespace stlmine::systems
