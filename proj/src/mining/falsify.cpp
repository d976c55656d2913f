#include "stlmine/mining/falsify.hpp"

#include <limits>
#include <random>
#include <stdexcept>

#include "stlmine/stl/robustness.hpp"

namespace stlmine::mining {

FalsifyResult falsify(const systems::System& system, const stl::Formula& f, const FalsifyConfig& cfg) {
  if (stl::horizon(f) > system.horizon() + 1e-9 * system.dt()) {
    throw std::invalid_argument("formula horizon exceeds the simulation horizon of " + system.name());
  }
  acq::AcquisitionConfig acq_cfg = cfg.acquisition;
  acq_cfg.mode = acq::Mode::kMinimize;
  // Simulations are deterministic; the GP noise term acts as a nugget only.
  acq_cfg.observation_noise_var = 0.0;
  const acq::Domain domain = acq::Domain::sample(system.x0_bounds(), cfg.candidates, cfg.seed, cfg.include_vertices);

  FalsifyResult out;
  out.robustness = std::numeric_limits<double>::infinity();
  const acq::Objective objective = [&](const Eigen::VectorXd& x0) {
    stl::Signal s = system.simulate(x0);
    const double r = stl::robustness(s, f);
    ++out.simulations;
    if (r < out.robustness) {
      out.robustness = r;
      out.x0 = x0;
      out.trace = std::move(s);
    }
    return r;
  };
  acq::OptimizeOptions options;
  options.seed = cfg.seed;
  options.stop = [](double y) { return y < 0.0; };
  out.run = acq::optimize(objective, domain, acq_cfg, options);
  out.falsified = out.robustness < 0.0;
  return out;
}

ValidationResult validate(const systems::System& system, const stl::Formula& f, std::size_t samples,
                          std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("validate needs at least one sample");
  std::mt19937_64 rng(seed);
  ValidationResult out;
  out.min_robustness = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples; ++i) {
    const Eigen::VectorXd x0 = acq::uniform_point(system.x0_bounds(), rng);
    const double r = stl::robustness(system.simulate(x0), f);
    ++out.simulations;
    if (r < out.min_robustness) {
      out.min_robustness = r;
      out.argmin = x0;
    }
  }
  return out;
}

}  // namespace stlmine::mining
