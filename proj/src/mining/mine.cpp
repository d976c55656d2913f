#include "stlmine/mining/mine.hpp"

#include <chrono>
#include <random>
#include <stdexcept>

#include "stlmine/common/random.hpp"
#include "stlmine/mining/falsify.hpp"

namespace stlmine::mining {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Stream indices under the mining seed.
constexpr std::uint64_t kInitStream = 0;
constexpr std::uint64_t kRoundStreamBase = 1;

}  // namespace

void MiningConfig::validate() const {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(synthesis_tol > 0.0)) throw std::invalid_argument("synthesis_tol must be positive");
  if (falsification_budget < 1) throw std::invalid_argument("falsification_budget must be at least 1");
  if (init_samples < 1) throw std::invalid_argument("init_samples must be at least 1");
  if (candidates < 2) throw std::invalid_argument("candidates must be at least 2");
  acquisition.validate();
}

std::string to_string(MiningStatus s) {
  switch (s) {
    case MiningStatus::kMined: return "mined";
    case MiningStatus::kBudgetExhausted: return "budget_exhausted";
    case MiningStatus::kInfeasible: return "infeasible";
  }
  return "unknown";
}

MiningResult mine(const systems::System& system, const stl::ParametricFormula& pf, const MiningConfig& cfg) {
  cfg.validate();
  MiningResult out;

  std::mt19937_64 init_rng(derive_seed(cfg.seed, kInitStream));
  for (std::size_t i = 0; i < cfg.init_samples; ++i) {
    Eigen::VectorXd x0 = acq::uniform_point(system.x0_bounds(), init_rng);
    stl::Signal s = system.simulate(x0);
    out.counterexamples.add(std::move(x0), std::move(s));
  }
  out.init_simulations = cfg.init_samples;
  out.total_simulations = cfg.init_samples;

  FalsifyConfig fcfg;
  fcfg.acquisition = cfg.acquisition;
  fcfg.acquisition.budget = cfg.falsification_budget;
  fcfg.candidates = cfg.candidates;
  fcfg.include_vertices = cfg.include_vertices;

  for (;;) {
    const auto synth_start = Clock::now();
    SynthesisResult synth;
    try {
      synth = synthesize_parameters(pf, out.counterexamples, cfg.epsilon, cfg.synthesis_tol);
    } catch (const InfeasibleError& e) {
      out.synthesis_time += seconds_since(synth_start);
      out.status = MiningStatus::kInfeasible;
      out.message = e.what();
      return out;
    }
    out.synthesis_time += seconds_since(synth_start);
    out.valuation = synth.valuation;
    out.min_robustness_on_samples = synth.min_robustness;
    out.valuation_history.push_back(synth.valuation);

    if (out.rounds >= cfg.max_rounds) {
      out.status = MiningStatus::kBudgetExhausted;
      out.message = "round limit reached";
      return out;
    }

    const stl::Formula candidate = stl::instantiate(pf, synth.valuation);
    fcfg.seed = derive_seed(cfg.seed, kRoundStreamBase + out.rounds);
    const auto fals_start = Clock::now();
    FalsifyResult fals = falsify(system, candidate, fcfg);
    out.falsification_time += seconds_since(fals_start);
    ++out.rounds;
    out.round_simulations.push_back(fals.simulations);
    out.total_simulations += fals.simulations;

    if (fals.falsified) {
      out.counterexamples.add(std::move(fals.x0), std::move(*fals.trace));
      continue;
    }
    if (!synth.tight) {
      out.status = MiningStatus::kInfeasible;
      out.message = "no valuation in the parameter box brings robustness within epsilon";
      return out;
    }
    out.status = MiningStatus::kMined;
    return out;
  }
}

}  // namespace stlmine::mining
