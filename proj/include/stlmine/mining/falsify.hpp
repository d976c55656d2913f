#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <cstdint>
#include <optional>

#include "stlmine/acquisition/optimize.hpp"
#include "stlmine/stl/formula.hpp"
#include "stlmine/stl/signal.hpp"
#include "stlmine/systems/system.hpp"

namespace stlmine::mining {

struct FalsifyConfig {
  /// Strategy, kernel, xi and budget (simulations). Mode is forced to minimize.
  acq::AcquisitionConfig acquisition;
  std::size_t candidates = 1000;
  /// Append the corners of the initial-condition box to the candidate set.
  bool include_vertices = true;
  std::uint64_t seed = 0;
};

struct FalsifyResult {
  /// A trace with negative robustness was found.
  bool falsified = false;
  /// Minimum observed robustness and its witness.
  double robustness = 0.0;
  Eigen::VectorXd x0;
  std::optional<stl::Signal> trace;
  std::size_t simulations = 0;
  acq::RunTrace run;
};

/// Minimizes x0 -> robustness(simulate(x0), f) and stops at the first
/// negative value. Throws std::invalid_argument when the formula horizon
/// exceeds the simulation horizon.
FalsifyResult falsify(const systems::System& system, const stl::Formula& f, const FalsifyConfig& cfg);

struct ValidationResult {
  double min_robustness = 0.0;
  Eigen::VectorXd argmin;
  std::size_t simulations = 0;
};

/// Minimum robustness of `f` over `samples` uniform random initial conditions.
ValidationResult validate(const systems::System& system, const stl::Formula& f, std::size_t samples,
                          std::uint64_t seed);

}  // namespace stlmine::mining
