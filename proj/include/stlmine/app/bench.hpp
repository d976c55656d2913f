#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stlmine/acquisition/strategy.hpp"
#include "stlmine/gp/kernel.hpp"
#include "stlmine/mining/mine.hpp"
#include "stlmine/mining/templates.hpp"
#include "stlmine/systems/system.hpp"

namespace stlmine::app {

/// One optimizer setting in a benchmark.
struct Arm {
  acq::Strategy strategy = acq::Strategy::kGpAcb;
  gp::KernelFamily kernel = gp::KernelFamily::kMatern;
  double xi = 1.0;

  std::string label() const;
};

struct AckleyBenchConfig {
  std::vector<Arm> arms;
  std::size_t trials = 100;
  std::size_t budget = 58;
  std::size_t candidates = 1000;
  double delta = 0.1;
  double noise_var = 0.025;
  double observation_noise_var = 0.025;
  std::size_t batch_size = 5;
  bool beta_without_domain_size = false;
  std::optional<double> lengthscale;
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
};

struct AckleyTrial {
  std::size_t trial = 0;
  /// Regret f(x_t) - f* of the point queried at each iteration, where f* is
  /// the minimum of the function over the trial's candidate set.
  std::vector<double> regret;
  /// Regret of the best point queried so far.
  std::vector<double> best_regret;
  std::vector<double> best_observed;
  double cumulative_regret = 0.0;
  double information_gain = 0.0;
  double eta_min = 1.0;
  double eta_max = 1.0;
  double beta_final = 0.0;
  /// Cumulative-regret bound evaluated with the sequential information gain.
  double regret_bound = 0.0;
};

struct AckleyArmReport {
  Arm arm;
  std::vector<AckleyTrial> trials;
  std::vector<double> mean_regret;
  std::vector<double> mean_best_regret;
  std::vector<double> mean_best_observed;

  double final_mean_regret() const { return mean_regret.back(); }
  std::vector<double> final_regrets() const;
};

struct AckleyReport {
  std::vector<AckleyArmReport> arms;
};

/// Independent trials per arm. Trial i uses the same candidate set and
/// noise stream for every arm, both derived from the master seed.
AckleyReport run_ackley_benchmark(const AckleyBenchConfig& cfg);

/// First 1-based iteration whose value is within `fraction` of the last one.
std::size_t iterations_to_within(const std::vector<double>& curve, double fraction);

struct MiningBenchConfig {
  std::vector<Arm> arms;
  std::string template_name = "sp_rpm";
  std::optional<double> epsilon;
  std::size_t trials = 20;
  mining::MiningConfig base;
  std::optional<double> lengthscale;
  /// Fresh samples for the post-hoc soundness check; 0 skips it.
  std::size_t validate_samples = 0;
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
};

struct MiningTrial {
  std::size_t trial = 0;
  mining::MiningResult result;
  std::optional<double> validation_min;
};

struct MiningArmReport {
  Arm arm;
  std::vector<MiningTrial> trials;

  double mean_simulations() const;
};

struct MiningReport {
  std::string template_name;
  double epsilon = 0.0;
  std::vector<std::string> parameter_names;
  std::vector<MiningArmReport> arms;
};

/// Mining trials per arm; trial i shares its seed (and so its initial
/// traces) across arms.
MiningReport run_mining_benchmark(const systems::System& system, const MiningBenchConfig& cfg);

/// Acquisition settings for falsification on `system` with the given arm.
acq::AcquisitionConfig falsification_acquisition(const systems::System& system, const Arm& arm,
                                                 const acq::AcquisitionConfig& base,
                                                 std::optional<double> lengthscale);

void write_ackley_curves(std::ostream& out, const AckleyReport& report);
void write_ackley_trials(std::ostream& out, const AckleyReport& report);
void write_mining_trials(std::ostream& out, const MiningReport& report);
void write_mining_summary(std::ostream& out, const MiningReport& report);

}  // namespace stlmine::app
