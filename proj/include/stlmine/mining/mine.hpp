#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "stlmine/acquisition/strategy.hpp"
#include "stlmine/mining/synthesis.hpp"
#include "stlmine/stl/formula.hpp"
#include "stlmine/systems/system.hpp"

namespace stlmine::mining {

struct MiningConfig {
  double epsilon = 1.0;
  double synthesis_tol = 0.01;
  /// Simulations per falsification round.
  std::size_t falsification_budget = 200;
  std::size_t max_rounds = 50;
  /// Falsification strategy, kernel and xi; budget is taken from falsification_budget.
  acq::AcquisitionConfig acquisition;
  std::size_t init_samples = 10;
  std::size_t candidates = 1000;
  bool include_vertices = true;
  std::uint64_t seed = 0;

  void validate() const;
};

enum class MiningStatus { kMined, kBudgetExhausted, kInfeasible };
std::string to_string(MiningStatus s);

struct MiningResult {
  MiningStatus status = MiningStatus::kInfeasible;
  stl::Valuation valuation;
  /// Minimum robustness of the mined formula over the accumulated traces.
  double min_robustness_on_samples = 0.0;
  std::size_t total_simulations = 0;
  std::size_t init_simulations = 0;
  /// Simulations spent by each falsification round.
  std::vector<std::size_t> round_simulations;
  double falsification_time = 0.0;
  double synthesis_time = 0.0;
  std::size_t rounds = 0;
  CounterexampleSet counterexamples;
  /// Valuation after every synthesis step, starting with the initial one.
  std::vector<stl::Valuation> valuation_history;
  std::string message;
};

/// Alternates synthesis on the collected traces with falsification of the
/// synthesized formula until falsification fails (mined), rounds run out
/// (budget_exhausted) or no valuation works (infeasible). A valuation whose
/// robustness cannot be brought within epsilon and that survives
/// falsification is reported as infeasible.
MiningResult mine(const systems::System& system, const stl::ParametricFormula& pf, const MiningConfig& cfg);

}  // namespace stlmine::mining
