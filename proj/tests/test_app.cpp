#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "stlmine/app/bench.hpp"
#include "stlmine/app/commands.hpp"
#include "stlmine/app/config.hpp"
#include "stlmine/app/worker_pool.hpp"

using namespace stlmine::app;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "stlmine_unit";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') out.push_back(line);
  }
  return out;
}

}  // namespace

TEST_CASE("config file parsing") {
  RunConfig cfg;
  load_config_text(R"({"seed": 9, "trials": 3, "strategies": ["gp_acb"], "xi": 0.5, "template": "stay",
                       "lengthscale": 0.2, "include_vertices": false})",
                   cfg);
  CHECK(cfg.seed == 9);
  CHECK(cfg.trials == std::optional<std::size_t>(3));
  CHECK(cfg.strategies == std::vector<std::string>{"gp_acb"});
  CHECK(cfg.xi == 0.5);
  CHECK(cfg.template_name == "stay");
  CHECK(cfg.lengthscale == std::optional<double>(0.2));
  CHECK_FALSE(cfg.include_vertices);

  CHECK_THROWS_AS(load_config_text(R"({"sead": 9})", cfg), ConfigError);
  CHECK_THROWS_AS(load_config_text(R"({"seed": "nine"})", cfg), ConfigError);
  CHECK_THROWS_AS(load_config_text(R"({"seed": -1})", cfg), ConfigError);
  CHECK_THROWS_AS(load_config_text(R"([1, 2])", cfg), ConfigError);
  CHECK_THROWS_AS(load_config_text("{not json", cfg), ConfigError);
  CHECK_THROWS_AS(load_config_file("/nonexistent/config.json", cfg), ConfigError);
  CHECK(config_keys().size() > 20);
}

TEST_CASE("config validation rejects bad names and ranges") {
  RunConfig cfg;
  cfg.command = "mine";
  CHECK_NOTHROW(cfg.validate());
  cfg.strategy = "simplex";
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.strategy = "gp_acb";
  cfg.kernel = "cubic";
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.kernel = "matern";
  cfg.delta = 2.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.delta = 0.1;
  cfg.template_name = "nope";
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.template_name = "sp_rpm";
  cfg.system = "boiler";
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.system = "transmission";
  cfg.command = "plot";
  std::ostringstream log;
  CHECK_THROWS_AS(run_command(cfg, log), ConfigError);
}

TEST_CASE("sibling paths") {
  CHECK(sibling_path("out/run.csv", "trials") == "out/run.trials.csv");
  CHECK(sibling_path("run", "summary") == "run.summary.csv");
}

TEST_CASE("worker pool runs every index and rethrows") {
  std::vector<int> hits(100, 0);
  parallel_for(100, 4, [&](std::size_t i) { hits[i] += 1; });
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  CHECK_THROWS_AS(parallel_for(10, 3,
                               [](std::size_t i) {
                                 if (i == 6) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
}

TEST_CASE("iterations to within a fraction of the final value") {
  CHECK(iterations_to_within({10, 5, 2, 1.02, 1.0}, 0.05) == 4);
  CHECK(iterations_to_within({1, 1, 1}, 0.05) == 1);
}

TEST_CASE("robustness command on trace files") {
  const fs::path constant = scratch("constant.csv");
  {
    std::ofstream f(constant);
    f << "time,x\n";
    for (int k = 0; k <= 10; ++k) f << k << ",5\n";
  }
  const auto r = evaluate_trace(constant.string(), "G[0,5)(x < 10)");
  CHECK(r.robustness == doctest::Approx(5.0));
  CHECK(r.satisfied);

  const fs::path ramp = scratch("ramp.csv");
  {
    std::ofstream f(ramp);
    f << "time,x\n0,0\n1,1\n2,2\n3,3\n";
  }
  CHECK(evaluate_trace(ramp.string(), "F[0,3)(x >= 2)").robustness == doctest::Approx(0.0));
  CHECK_THROWS_WITH(evaluate_trace(ramp.string(), "F[0,3)(x >= $pi)"), doctest::Contains("unbound parameter"));
  CHECK_THROWS(evaluate_trace(ramp.string(), "G[0,3)(y < 1)"));
  CHECK_THROWS(evaluate_trace(ramp.string(), "G[0,9)(x < 1)"));

  RunConfig cfg;
  cfg.command = "robustness";
  cfg.trace = constant.string();
  cfg.formula = "G[0,5)(x < 10)";
  cfg.out = scratch("rob.csv").string();
  std::ostringstream log;
  CHECK(run_command(cfg, log) == 0);
  CHECK(slurp(cfg.out) == "# stlmine robustness v1\nrobustness,5\nsatisfied,true\n");
}

TEST_CASE("bench-ackley shape and determinism") {
  RunConfig cfg;
  cfg.command = "bench-ackley";
  cfg.trials = 2;
  cfg.budget = 3;
  cfg.candidates = 50;
  cfg.strategies = {"gp_acb"};
  cfg.kernels = {"matern"};
  cfg.out = scratch("bench.csv").string();
  std::ostringstream log;
  REQUIRE(run_command(cfg, log) == 0);
  const std::string first = slurp(cfg.out);
  const std::string first_trials = slurp(sibling_path(cfg.out, "trials"));
  CHECK(first.rfind("# stlmine", 0) == 0);
  // Header plus one row per iteration.
  CHECK(data_lines(first).size() == 4);
  CHECK(data_lines(first_trials).size() == 3);
  cfg.jobs = 2;
  REQUIRE(run_command(cfg, log) == 0);
  CHECK(slurp(cfg.out) == first);
  CHECK(slurp(sibling_path(cfg.out, "trials")) == first_trials);
}

TEST_CASE("bench-ackley best-so-far columns never increase") {
  AckleyBenchConfig ab;
  ab.trials = 4;
  ab.budget = 15;
  ab.candidates = 200;
  for (auto s : {stlmine::acq::Strategy::kGpAcb, stlmine::acq::Strategy::kExplore,
                 stlmine::acq::Strategy::kBatchGreedyUcb}) {
    ab.arms.push_back({s, stlmine::gp::KernelFamily::kGaussian, 1.0});
  }
  const auto report = run_ackley_benchmark(ab);
  REQUIRE(report.arms.size() == 3);
  for (const auto& arm : report.arms) {
    CHECK(arm.trials.size() == 4);
    CHECK(arm.mean_regret.size() == 15);
    for (std::size_t t = 1; t < arm.mean_best_regret.size(); ++t) {
      CHECK(arm.mean_best_regret[t] <= arm.mean_best_regret[t - 1]);
      CHECK(arm.mean_best_observed[t] <= arm.mean_best_observed[t - 1]);
    }
    for (double r : arm.mean_regret) CHECK(r >= 0.0);
  }
}

TEST_CASE("mine and falsify commands: exit codes and repeatable files") {
  RunConfig cfg;
  cfg.command = "mine";
  cfg.template_name = "sp_rpm";
  cfg.candidates = 200;
  cfg.validate_samples = 50;
  cfg.out = scratch("mine.csv").string();
  std::ostringstream log;
  const int code = run_command(cfg, log);
  CHECK(code == 0);
  const std::string first = slurp(cfg.out);
  const std::string summary = slurp(sibling_path(cfg.out, "summary"));
  CHECK(run_command(cfg, log) == code);
  CHECK(slurp(cfg.out) == first);
  CHECK(slurp(sibling_path(cfg.out, "summary")) == summary);
  CHECK(log.str().find("mined") != std::string::npos);

  RunConfig f;
  f.command = "falsify";
  f.formula = "G[0,30)(speed < 50)";
  f.budget = 100;
  f.candidates = 200;
  f.out = scratch("cex.csv").string();
  CHECK(run_command(f, log) == 1);
  CHECK(fs::exists(f.out));
  f.formula = "G[0,30)(speed < 1e6)";
  f.budget = 5;
  CHECK(run_command(f, log) == 0);
  f.formula = "G[0,30)(speed < $p)";
  CHECK_THROWS_AS(run_command(f, log), ConfigError);
}
