#pragma once

#include <iosfwd>
#include <string>

#include "stlmine/app/config.hpp"

namespace stlmine::app {

struct RobustnessReport {
  double robustness = 0.0;
  bool satisfied = false;
};

/// Robustness at the first sample of the trace in `trace_csv`.
RobustnessReport evaluate_trace(const std::string& trace_csv, const std::string& formula_text);

/// `<out>` with its .csv suffix replaced by `.<tag>.csv`.
std::string sibling_path(const std::string& out, const std::string& tag);

/// Runs cfg.command. Human-readable progress and wall-clock timings go to
/// `log`; files under cfg.out hold only seed-determined content. Returns
/// the process exit code: 0 success, 1 when mining did not succeed or
/// falsification found a counterexample. Throws ConfigError for bad settings.
int run_command(const RunConfig& cfg, std::ostream& log);

}  // namespace stlmine::app
