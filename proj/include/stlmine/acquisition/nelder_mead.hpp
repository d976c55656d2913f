#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <functional>
#include <vector>

#include "stlmine/acquisition/domain.hpp"

namespace stlmine::acq {

using Objective = std::function<double(const Eigen::VectorXd&)>;

struct NelderMeadOptions {
  std::size_t budget = 100;
  /// Initial simplex edge as a fraction of each axis width.
  double initial_step = 0.1;
  /// Stop once the simplex diameter (original coordinates) drops below this.
  double diameter_tol = 1e-6;
  /// Optional early exit, checked after every evaluation.
  std::function<bool(double)> stop;
};

struct NelderMeadResult {
  Eigen::VectorXd best_point;
  double best_value = 0.0;
  std::size_t evaluations = 0;
  bool stopped_early = false;
};

/// Minimizes `objective` with the standard simplex moves (reflection 1,
/// expansion 2, contraction 0.5, shrink 0.5). Trial points are projected
/// onto the box. Never exceeds the evaluation budget.
NelderMeadResult nelder_mead(const Objective& objective, const Eigen::VectorXd& start,
                             const std::vector<Interval>& bounds, const NelderMeadOptions& options);

}  // namespace stlmine::acq
