#include "stlmine/app/commands.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <memory>
#include <ostream>

#include "stlmine/app/bench.hpp"
#include "stlmine/common/number_format.hpp"
#include "stlmine/mining/falsify.hpp"
#include "stlmine/stl/parser.hpp"
#include "stlmine/stl/robustness.hpp"
#include "stlmine/systems/transmission.hpp"

namespace stlmine::app {

namespace {

using Clock = std::chrono::steady_clock;

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  return f;
}

std::unique_ptr<systems::System> make_system(const RunConfig& cfg) {
  if (cfg.system != "transmission") throw ConfigError("command needs the transmission system");
  return std::make_unique<systems::TransmissionSurrogate>(cfg.segments);
}

acq::AcquisitionConfig base_acquisition(const RunConfig& cfg) {
  acq::AcquisitionConfig a;
  a.strategy = acq::parse_strategy(cfg.strategy);
  a.delta = cfg.delta;
  a.xi = cfg.xi;
  a.budget = cfg.falsification_budget;
  a.batch_size = cfg.batch_size;
  a.noise_var = cfg.noise_var;
  a.beta_without_domain_size = cfg.beta_without_domain_size;
  a.sampling_time = cfg.sampling_time;
  return a;
}

mining::MiningConfig base_mining(const RunConfig& cfg) {
  mining::MiningConfig m;
  m.synthesis_tol = cfg.synthesis_tol;
  m.falsification_budget = cfg.falsification_budget;
  m.max_rounds = cfg.max_rounds;
  m.acquisition = base_acquisition(cfg);
  m.init_samples = cfg.init_samples;
  m.candidates = cfg.candidates;
  m.include_vertices = cfg.include_vertices;
  return m;
}

Arm arm_of(const std::string& strategy, const std::string& kernel, double xi) {
  return Arm{acq::parse_strategy(strategy), gp::parse_kernel_family(kernel), xi};
}

void print_mining(std::ostream& log, const MiningReport& report) {
  for (const auto& a : report.arms) {
    double fals = 0.0, synth = 0.0;
    std::size_t mined = 0;
    for (const auto& t : a.trials) {
      fals += t.result.falsification_time;
      synth += t.result.synthesis_time;
      if (t.result.status == mining::MiningStatus::kMined) ++mined;
    }
    const auto n = static_cast<double>(a.trials.size());
    log << report.template_name << ' ' << a.arm.label() << ": mined " << mined << '/' << a.trials.size()
        << ", mean simulations " << a.mean_simulations() << ", mean falsification time " << fals / n
        << " s, mean synthesis time " << synth / n << " s\n";
    if (a.trials.size() == 1) {
      const auto& r = a.trials.front().result;
      log << "  status " << mining::to_string(r.status);
      for (const auto& [k, v] : r.valuation) log << ", " << k << " = " << format_number(v);
      log << ", robustness " << format_number(r.min_robustness_on_samples) << ", rounds " << r.rounds << '\n';
      if (!r.message.empty()) log << "  " << r.message << '\n';
    }
  }
}

void write_mining_files(const RunConfig& cfg, const MiningReport& report) {
  if (cfg.out.empty()) return;
  auto f = open_out(cfg.out);
  write_mining_trials(f, report);
  auto g = open_out(sibling_path(cfg.out, "summary"));
  write_mining_summary(g, report);
}

int cmd_mine(const RunConfig& cfg, std::ostream& log) {
  const auto system = make_system(cfg);
  MiningBenchConfig mb;
  mb.arms = {arm_of(cfg.strategy, cfg.kernel, cfg.xi)};
  mb.template_name = cfg.template_name;
  mb.epsilon = cfg.epsilon;
  mb.trials = cfg.trials.value_or(1);
  mb.base = base_mining(cfg);
  mb.lengthscale = cfg.lengthscale;
  mb.validate_samples = cfg.validate_samples;
  mb.seed = cfg.seed;
  mb.jobs = cfg.jobs;
  const MiningReport report = run_mining_benchmark(*system, mb);
  write_mining_files(cfg, report);
  print_mining(log, report);
  for (const auto& t : report.arms.front().trials) {
    if (t.result.status != mining::MiningStatus::kMined) return 1;
  }
  return 0;
}

int cmd_falsify(const RunConfig& cfg, std::ostream& log) {
  if (cfg.formula.empty()) throw ConfigError("falsify needs a formula");
  const auto system = make_system(cfg);
  stl::Formula f = [&] {
    try {
      return stl::parse_concrete_formula(cfg.formula);
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
  }();
  mining::FalsifyConfig fc;
  fc.acquisition = falsification_acquisition(*system, arm_of(cfg.strategy, cfg.kernel, cfg.xi), base_acquisition(cfg),
                                             cfg.lengthscale);
  fc.candidates = cfg.candidates;
  fc.include_vertices = cfg.include_vertices;
  fc.seed = cfg.seed;
  const auto start = Clock::now();
  const mining::FalsifyResult r = mining::falsify(*system, f, fc);
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (!cfg.out.empty() && r.trace) {
    auto out = open_out(cfg.out);
    stl::write_signal_csv(out, *r.trace);
  }
  log << (r.falsified ? "falsified" : "not falsified") << ": min robustness " << format_number(r.robustness)
      << " after " << r.simulations << " simulations (" << secs << " s)\n";
  log << "  x0 =";
  for (Eigen::Index i = 0; i < r.x0.size(); ++i) log << ' ' << format_number(r.x0(i));
  log << '\n';
  return r.falsified ? 1 : 0;
}

int cmd_robustness(const RunConfig& cfg, std::ostream& log) {
  if (cfg.trace.empty() || cfg.formula.empty()) throw ConfigError("robustness needs a trace and a formula");
  const RobustnessReport r = evaluate_trace(cfg.trace, cfg.formula);
  const std::string text = "robustness," + format_number(r.robustness) + "\nsatisfied," +
                           (r.satisfied ? "true" : "false") + "\n";
  if (!cfg.out.empty()) {
    auto out = open_out(cfg.out);
    out << "# stlmine robustness v1\n" << text;
  }
  log << "robustness: " << format_number(r.robustness) << '\n'
      << "satisfied: " << (r.satisfied ? "true" : "false") << '\n';
  return 0;
}

AckleyBenchConfig ackley_config(const RunConfig& cfg, std::size_t default_trials) {
  AckleyBenchConfig ab;
  ab.trials = cfg.trials.value_or(default_trials);
  ab.budget = cfg.budget;
  ab.candidates = cfg.candidates;
  ab.delta = cfg.delta;
  ab.noise_var = cfg.noise_var;
  ab.observation_noise_var = cfg.observation_noise_var;
  ab.batch_size = cfg.batch_size;
  ab.beta_without_domain_size = cfg.beta_without_domain_size;
  ab.lengthscale = cfg.lengthscale;
  ab.seed = cfg.seed;
  ab.jobs = cfg.jobs;
  return ab;
}

void report_ackley(const RunConfig& cfg, const AckleyReport& report, std::ostream& log) {
  if (!cfg.out.empty()) {
    auto f = open_out(cfg.out);
    write_ackley_curves(f, report);
    auto g = open_out(sibling_path(cfg.out, "trials"));
    write_ackley_trials(g, report);
  }
  for (const auto& a : report.arms) {
    std::size_t holds = 0;
    for (const auto& t : a.trials) holds += t.cumulative_regret <= t.regret_bound ? 1 : 0;
    log << a.arm.label() << ": mean final regret " << format_number(a.final_mean_regret())
        << ", iterations to within 5% " << iterations_to_within(a.mean_regret, 0.05) << ", regret bound held in "
        << holds << '/' << a.trials.size() << " trials\n";
  }
}

int cmd_bench_ackley(const RunConfig& cfg, std::ostream& log) {
  AckleyBenchConfig ab = ackley_config(cfg, 100);
  for (const auto& k : cfg.kernels) {
    for (const auto& s : cfg.strategies) ab.arms.push_back(arm_of(s, k, cfg.xi));
  }
  const auto start = Clock::now();
  const AckleyReport report = run_ackley_benchmark(ab);
  report_ackley(cfg, report, log);
  log << "elapsed " << std::chrono::duration<double>(Clock::now() - start).count() << " s\n";
  return 0;
}

int cmd_scaling_sweep(const RunConfig& cfg, std::ostream& log) {
  const auto start = Clock::now();
  if (cfg.system == "ackley") {
    AckleyBenchConfig ab = ackley_config(cfg, 50);
    for (const auto& s : cfg.strategies) {
      for (double xi : cfg.xis) ab.arms.push_back(arm_of(s, cfg.kernel, xi));
    }
    report_ackley(cfg, run_ackley_benchmark(ab), log);
  } else {
    const auto system = make_system(cfg);
    MiningBenchConfig mb;
    for (double xi : cfg.xis) mb.arms.push_back(arm_of("gp_acb", cfg.kernel, xi));
    mb.template_name = cfg.template_name;
    mb.epsilon = cfg.epsilon;
    mb.trials = cfg.trials.value_or(50);
    mb.base = base_mining(cfg);
    mb.lengthscale = cfg.lengthscale;
    mb.seed = cfg.seed;
    mb.jobs = cfg.jobs;
    const MiningReport report = run_mining_benchmark(*system, mb);
    write_mining_files(cfg, report);
    print_mining(log, report);
  }
  log << "elapsed " << std::chrono::duration<double>(Clock::now() - start).count() << " s\n";
  return 0;
}

}  // namespace

RobustnessReport evaluate_trace(const std::string& trace_csv, const std::string& formula_text) {
  const stl::Signal s = stl::read_signal_csv_file(trace_csv);
  const stl::Formula f = stl::parse_concrete_formula(formula_text);
  const double r = stl::robustness(s, f);
  return {r, r > 0.0};
}

std::string sibling_path(const std::string& out, const std::string& tag) {
  const std::string ext = ".csv";
  if (out.size() > ext.size() && out.compare(out.size() - ext.size(), ext.size(), ext) == 0) {
    return out.substr(0, out.size() - ext.size()) + "." + tag + ext;
  }
  return out + "." + tag + ext;
}

int run_command(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  if (cfg.command == "mine") return cmd_mine(cfg, log);
  if (cfg.command == "falsify") return cmd_falsify(cfg, log);
  if (cfg.command == "robustness") return cmd_robustness(cfg, log);
  if (cfg.command == "bench-ackley") return cmd_bench_ackley(cfg, log);
  if (cfg.command == "scaling-sweep") return cmd_scaling_sweep(cfg, log);
  throw ConfigError("unknown command '" + cfg.command + "'");
}

}  // namespace stlmine::app
