// Command-line front end: requirement mining, falsification, robustness
// evaluation and benchmark sweeps.

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>
#include <utility>

#include "stlmine/app/commands.hpp"
#include "stlmine/app/config.hpp"

namespace {

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> jobs;
  std::optional<std::string> out;
  std::optional<std::size_t> trials;
  std::optional<std::string> strategy;
  std::optional<std::string> kernel;
  std::optional<double> xi;
  std::optional<std::string> system;
  std::optional<std::string> template_name;
  std::optional<std::string> formula;
  std::optional<std::string> trace;
  std::optional<std::size_t> budget;
  std::optional<std::size_t> falsification_budget;
  std::optional<std::size_t> candidates;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON config file");
  sub->add_option("--seed", f.seed, "master random seed");
  sub->add_option("--jobs", f.jobs, "worker threads for independent trials");
  sub->add_option("--out", f.out, "output CSV path");
  sub->add_option("--trials", f.trials, "number of independent trials");
  sub->add_option("--strategy", f.strategy, "gp_acb, gp_ucb, batch_greedy_ucb, explore, exploit, nelder_mead");
  sub->add_option("--kernel", f.kernel, "gaussian or matern");
  sub->add_option("--xi", f.xi, "objective scaling factor");
  sub->add_option("--system", f.system, "transmission or ackley");
  sub->add_option("--template", f.template_name, "sp_rpm, rpm100 or stay");
  sub->add_option("--formula", f.formula, "concrete STL formula");
  sub->add_option("--trace", f.trace, "signal CSV");
  sub->add_option("--budget", f.budget, "iterations per optimization run");
  sub->add_option("--falsification-budget", f.falsification_budget, "simulations per falsification round");
  sub->add_option("--candidates", f.candidates, "candidate points per run");
}

template <typename T>
void override_with(const std::optional<T>& flag, T& field) {
  if (flag) field = *flag;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Requirement mining for black-box systems with signal temporal logic"};
  app.require_subcommand(1);
  Flags flags;
  const std::pair<const char*, const char*> commands[] = {
      {"mine", "mine a requirement template on the transmission model"},
      {"falsify", "search for a trace violating a concrete formula"},
      {"robustness", "evaluate a formula on a trace CSV"},
      {"bench-ackley", "compare optimizers on the Ackley function"},
      {"scaling-sweep", "repeat mining or Ackley runs across scaling factors"},
  };
  for (const auto& [name, help] : commands) add_common(app.add_subcommand(name, help), flags);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    stlmine::app::RunConfig cfg;
    if (!flags.config.empty()) stlmine::app::load_config_file(flags.config, cfg);
    cfg.command = app.get_subcommands().front()->get_name();
    override_with(flags.seed, cfg.seed);
    override_with(flags.jobs, cfg.jobs);
    override_with(flags.out, cfg.out);
    if (flags.trials) cfg.trials = flags.trials;
    override_with(flags.strategy, cfg.strategy);
    override_with(flags.kernel, cfg.kernel);
    override_with(flags.xi, cfg.xi);
    override_with(flags.system, cfg.system);
    override_with(flags.template_name, cfg.template_name);
    override_with(flags.formula, cfg.formula);
    override_with(flags.trace, cfg.trace);
    override_with(flags.budget, cfg.budget);
    override_with(flags.falsification_budget, cfg.falsification_budget);
    override_with(flags.candidates, cfg.candidates);
    return stlmine::app::run_command(cfg, std::cout);
  } catch (const stlmine::app::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
