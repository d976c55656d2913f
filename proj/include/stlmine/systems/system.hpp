#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>
#include <vector>

#include "stlmine/acquisition/domain.hpp"
#include "stlmine/stl/signal.hpp"

namespace stlmine::systems {

class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Black-box plant mapping an initial condition to a sampled trace.
/// Implementations must be deterministic and safe to call concurrently.
class System {
 public:
  virtual ~System() = default;

  virtual std::string name() const = 0;
  virtual const std::vector<acq::Interval>& x0_bounds() const = 0;
  virtual double horizon() const = 0;
  virtual double dt() const = 0;
  virtual const std::vector<std::string>& channels() const = 0;

  /// Throws SimulationError when x0 lies outside the box or the state
  /// becomes non-finite.
  virtual stl::Signal simulate(const Eigen::VectorXd& x0) const = 0;

  std::size_t x0_dim() const { return x0_bounds().size(); }
};

/// Throws SimulationError unless x0 has the right size and lies in the box.
void check_in_box(const System& system, const Eigen::VectorXd& x0);

}  // namespace stlmine::systems
