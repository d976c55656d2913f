#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stlmine::app {

/// Bad config file, flag or combination of settings; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Settings shared by all commands. Every field has a config-file key of the
/// same name; command-line flags override file values.
struct RunConfig {
  std::string command;
  std::string system = "transmission";
  /// Built-in template name: sp_rpm, rpm100 or stay.
  std::string template_name = "sp_rpm";
  /// Concrete formula text (falsify, robustness).
  std::string formula;
  /// Signal CSV path (robustness).
  std::string trace;
  std::string out;

  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  /// Unset means the command default: 100 for bench-ackley, 50 for
  /// scaling-sweep, 1 for mine.
  std::optional<std::size_t> trials;

  std::string strategy = "gp_acb";
  std::vector<std::string> strategies = {"gp_acb", "gp_ucb", "batch_greedy_ucb", "explore", "exploit"};
  std::string kernel = "matern";
  std::vector<std::string> kernels = {"gaussian", "matern"};
  double xi = 1.0;
  std::vector<double> xis = {0.1, 0.25, 0.5, 0.75, 1.0};
  /// Lengthscale override in unit-cube coordinates; default is a tenth of the diameter.
  std::optional<double> lengthscale;

  double delta = 0.1;
  double sampling_time = 0.1;
  std::size_t budget = 58;
  std::size_t candidates = 1000;
  std::size_t batch_size = 5;
  double noise_var = 0.025;
  double observation_noise_var = 0.025;
  bool beta_without_domain_size = false;

  std::optional<double> epsilon;
  double synthesis_tol = 0.01;
  std::size_t falsification_budget = 200;
  std::size_t max_rounds = 50;
  std::size_t init_samples = 10;
  bool include_vertices = true;
  std::size_t segments = 2;
  std::size_t validate_samples = 1000;

  /// Throws ConfigError when a value is out of range or a name is unknown.
  void validate() const;
};

/// Reads a flat JSON object into `cfg`. Unknown keys and type mismatches
/// throw ConfigError.
void load_config_file(const std::string& path, RunConfig& cfg);
void load_config_text(const std::string& json_text, RunConfig& cfg);

/// Names accepted by load_config_file.
std::vector<std::string> config_keys();

}  // namespace stlmine::app
