#include "stlmine/app/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

#include "stlmine/acquisition/strategy.hpp"
#include "stlmine/gp/kernel.hpp"
#include "stlmine/mining/templates.hpp"

namespace stlmine::app {

namespace {

using json = nlohmann::json;
using Setter = std::function<void(const json&, RunConfig&)>;

template <typename T, typename Field>
Setter assign(Field RunConfig::*field) {
  return [field](const json& v, RunConfig& cfg) { cfg.*field = v.get<T>(); };
}

Setter bind_count(std::size_t RunConfig::*field) {
  return [field](const json& v, RunConfig& cfg) {
    if (!v.is_number_integer() || v.get<long long>() < 0) throw ConfigError("expected a non-negative integer");
    cfg.*field = v.get<std::size_t>();
  };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"command", assign<std::string>(&RunConfig::command)},
      {"system", assign<std::string>(&RunConfig::system)},
      {"template", assign<std::string>(&RunConfig::template_name)},
      {"formula", assign<std::string>(&RunConfig::formula)},
      {"trace", assign<std::string>(&RunConfig::trace)},
      {"out", assign<std::string>(&RunConfig::out)},
      {"seed",
       [](const json& v, RunConfig& c) {
         if (!v.is_number_integer() || v.get<long long>() < 0) throw ConfigError("expected a non-negative integer");
         c.seed = v.get<std::uint64_t>();
       }},
      {"jobs", bind_count(&RunConfig::jobs)},
      {"trials",
       [](const json& v, RunConfig& c) {
         if (!v.is_number_integer() || v.get<long long>() < 0) throw ConfigError("expected a non-negative integer");
         c.trials = v.get<std::size_t>();
       }},
      {"strategy", assign<std::string>(&RunConfig::strategy)},
      {"strategies", assign<std::vector<std::string>>(&RunConfig::strategies)},
      {"kernel", assign<std::string>(&RunConfig::kernel)},
      {"kernels", assign<std::vector<std::string>>(&RunConfig::kernels)},
      {"xi", assign<double>(&RunConfig::xi)},
      {"xis", assign<std::vector<double>>(&RunConfig::xis)},
      {"lengthscale", [](const json& v, RunConfig& c) { c.lengthscale = v.get<double>(); }},
      {"delta", assign<double>(&RunConfig::delta)},
      {"sampling_time", assign<double>(&RunConfig::sampling_time)},
      {"budget", bind_count(&RunConfig::budget)},
      {"candidates", bind_count(&RunConfig::candidates)},
      {"batch_size", bind_count(&RunConfig::batch_size)},
      {"noise_var", assign<double>(&RunConfig::noise_var)},
      {"observation_noise_var", assign<double>(&RunConfig::observation_noise_var)},
      {"beta_without_domain_size", assign<bool>(&RunConfig::beta_without_domain_size)},
      {"epsilon", [](const json& v, RunConfig& c) { c.epsilon = v.get<double>(); }},
      {"synthesis_tol", assign<double>(&RunConfig::synthesis_tol)},
      {"falsification_budget", bind_count(&RunConfig::falsification_budget)},
      {"max_rounds", bind_count(&RunConfig::max_rounds)},
      {"init_samples", bind_count(&RunConfig::init_samples)},
      {"include_vertices", assign<bool>(&RunConfig::include_vertices)},
      {"segments", bind_count(&RunConfig::segments)},
      {"validate_samples", bind_count(&RunConfig::validate_samples)},
  };
  return table;
}

}  // namespace

void load_config_text(const std::string& json_text, RunConfig& cfg) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  const auto& table = setters();
  for (const auto& [key, value] : doc.items()) {
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError("unknown config key '" + key + "'");
    try {
      it->second(value, cfg);
    } catch (const json::exception& e) {
      throw ConfigError("bad value for '" + key + "': " + e.what());
    } catch (const ConfigError& e) {
      throw ConfigError("bad value for '" + key + "': " + e.what());
    }
  }
}

void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  load_config_text(text.str(), cfg);
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, _] : setters()) keys.push_back(k);
  return keys;
}

void RunConfig::validate() const {
  auto check = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  check(system == "transmission" || system == "ackley", "unknown system '" + system + "'");
  check(jobs >= 1, "jobs must be at least 1");
  check(!trials || *trials >= 1, "trials must be at least 1");
  check(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
  check(xi > 0.0, "xi must be positive");
  for (double x : xis) check(x > 0.0, "every xi must be positive");
  check(budget >= 1, "budget must be at least 1");
  check(candidates >= 2, "candidates must be at least 2");
  check(batch_size >= 1, "batch_size must be at least 1");
  check(noise_var > 0.0, "noise_var must be positive");
  check(observation_noise_var >= 0.0, "observation_noise_var must be non-negative");
  check(!lengthscale || *lengthscale > 0.0, "lengthscale must be positive");
  check(!epsilon || *epsilon > 0.0, "epsilon must be positive");
  check(synthesis_tol > 0.0, "synthesis_tol must be positive");
  check(falsification_budget >= 1, "falsification_budget must be at least 1");
  check(init_samples >= 1, "init_samples must be at least 1");
  check(segments >= 1, "segments must be at least 1");
  check(validate_samples >= 1, "validate_samples must be at least 1");
  try {
    acq::parse_strategy(strategy);
    for (const auto& s : strategies) acq::parse_strategy(s);
    gp::parse_kernel_family(kernel);
    for (const auto& k : kernels) gp::parse_kernel_family(k);
    mining::make_template(template_name);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace stlmine::app
