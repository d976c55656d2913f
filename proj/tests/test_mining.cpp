#include <doctest.h>

#include <random>

#include "stlmine/mining/falsify.hpp"
#include "stlmine/mining/mine.hpp"
#include "stlmine/mining/synthesis.hpp"
#include "stlmine/mining/templates.hpp"
#include "stlmine/stl/parser.hpp"
#include "stlmine/stl/robustness.hpp"
#include "stlmine/systems/transmission.hpp"

using namespace stlmine;
using namespace stlmine::mining;

namespace {

stl::Signal speed_trace(double peak) {
  Eigen::MatrixXd m(31, 1);
  for (Eigen::Index k = 0; k < 31; ++k) m(k, 0) = peak * std::sin(3.14159 * double(k) / 30.0);
  m(15, 0) = peak;
  return stl::Signal({"speed"}, 0.0, 1.0, m);
}

stl::ParametricFormula speed_bound() {
  return stl::parse_parametric_formula("G[0,30)(speed < $pi)",
                                       {{"pi", stl::ParamKind::kScale, 0.0, 200.0, stl::Monotonicity::kIncreasing}});
}

CounterexampleSet traces_with_peaks(std::initializer_list<double> peaks) {
  CounterexampleSet set;
  for (double p : peaks) set.add(Eigen::VectorXd::Zero(1), speed_trace(p));
  return set;
}

// Plant whose single output never changes.
class Flat final : public systems::System {
 public:
  std::string name() const override { return "flat"; }
  const std::vector<acq::Interval>& x0_bounds() const override { return bounds_; }
  double horizon() const override { return 10.0; }
  double dt() const override { return 1.0; }
  const std::vector<std::string>& channels() const override { return channels_; }
  stl::Signal simulate(const Eigen::VectorXd& x0) const override {
    systems::check_in_box(*this, x0);
    return stl::Signal(channels_, 0.0, 1.0, Eigen::MatrixXd::Constant(11, 1, 3.0));
  }

 private:
  std::vector<acq::Interval> bounds_{{0.0, 1.0}};
  std::vector<std::string> channels_{"y"};
};

CounterexampleSet surrogate_traces(std::size_t n, std::uint64_t seed) {
  const systems::TransmissionSurrogate sys;
  std::mt19937_64 rng(seed);
  CounterexampleSet set;
  for (std::size_t i = 0; i < n; ++i) {
    Eigen::VectorXd x0 = acq::uniform_point(sys.x0_bounds(), rng);
    set.add(x0, sys.simulate(x0));
  }
  // One hard-driving trace so every template has something to bind on.
  Eigen::VectorXd hard(4);
  hard << 100, 30, 0, 0;
  set.add(hard, sys.simulate(hard));
  return set;
}

FalsifyConfig quick_falsify(std::size_t budget) {
  FalsifyConfig cfg;
  cfg.acquisition.budget = budget;
  cfg.acquisition.kernel = gp::Kernel::matern(0.2);
  cfg.candidates = 300;
  cfg.seed = 5;
  return cfg;
}

}  // namespace

TEST_CASE("synthesis on one trace lands just above the peak") {
  const auto r = synthesize_parameters(speed_bound(), traces_with_peaks({80}), 1.0, 0.01);
  CHECK(r.valuation.at("pi") > 80.0);
  CHECK(r.valuation.at("pi") <= 81.0);
  CHECK(r.min_robustness == doctest::Approx(r.valuation.at("pi") - 80.0));
  CHECK(r.tight);
}

TEST_CASE("synthesis takes the worst trace") {
  const auto r = synthesize_parameters(speed_bound(), traces_with_peaks({80, 90}), 1.0, 0.01);
  CHECK(r.valuation.at("pi") > 90.0);
  CHECK(r.valuation.at("pi") <= 91.0);
}

TEST_CASE("synthesis infeasible and malformed inputs") {
  CHECK_THROWS_AS(synthesize_parameters(speed_bound(), traces_with_peaks({300}), 1.0, 0.01), InfeasibleError);
  CHECK_THROWS_AS(synthesize_parameters(speed_bound(), CounterexampleSet{}, 1.0, 0.01), std::invalid_argument);
  const auto undeclared = stl::parse_parametric_formula(
      "G[0,30)(speed < $pi)", {{"pi", stl::ParamKind::kScale, 0.0, 200.0, std::nullopt}});
  CHECK_THROWS_AS(synthesize_parameters(undeclared, traces_with_peaks({80}), 1.0, 0.01), stl::FormulaError);
}

TEST_CASE("synthesis reports slack when the tight end is still loose") {
  CounterexampleSet set;
  set.add(Eigen::VectorXd::Zero(1), stl::Signal({"speed"}, 0.0, 1.0, Eigen::MatrixXd::Constant(31, 1, -50.0)));
  const auto r = synthesize_parameters(speed_bound(), set, 1.0, 0.01);
  CHECK(r.valuation.at("pi") == 0.0);
  CHECK_FALSE(r.tight);
}

TEST_CASE("property: synthesis matches a grid oracle on every template") {
  const auto traces = surrogate_traces(8, 21);
  const double tol = 0.01;
  for (const auto& name : template_names()) {
    const auto tpl = make_template(name);
    CAPTURE(name);
    const auto res = synthesize_parameters(tpl.formula, traces, tpl.epsilon, tol);
    CHECK(res.min_robustness > 0.0);
    if (res.tight) CHECK(res.min_robustness <= tpl.epsilon);
    for (const auto& p : tpl.formula.params()) {
      CAPTURE(p.name);
      // Sweep this parameter over 50 grid points with the others held.
      std::vector<double> grid_rob;
      std::vector<double> grid_val;
      for (int g = 0; g < 50; ++g) {
        stl::Valuation theta = res.valuation;
        theta[p.name] = p.lower + (p.upper - p.lower) * g / 49.0;
        try {
          grid_rob.push_back(min_robustness(traces, stl::instantiate(tpl.formula, theta)));
          grid_val.push_back(theta[p.name]);
        } catch (const stl::FormulaError&) {
        }
      }
      double slope = 0.0;
      for (std::size_t i = 1; i < grid_rob.size(); ++i) {
        slope = std::max(slope, std::abs(grid_rob[i] - grid_rob[i - 1]) / (grid_val[i] - grid_val[i - 1]));
      }
      double tightest = std::numeric_limits<double>::infinity();
      for (double r : grid_rob)
        if (r > 0.0) tightest = std::min(tightest, r);
      CHECK(res.min_robustness <= tightest + tol * slope + 1e-9);
    }
  }
}

TEST_CASE("falsify: loose formula survives, speed bound breaks") {
  const systems::TransmissionSurrogate sys;
  const auto loose = falsify(sys, stl::parse_formula("G[0,30)(speed < 1e6)"), quick_falsify(30));
  CHECK_FALSE(loose.falsified);
  CHECK(loose.robustness > 1e6 - 200);
  CHECK(loose.simulations == 30);

  const auto tight = falsify(sys, stl::parse_formula("G[0,30)(speed < 50)"), quick_falsify(200));
  CHECK(tight.falsified);
  CHECK(tight.robustness < 0.0);
  CHECK(tight.simulations <= 200);
  REQUIRE(tight.trace.has_value());
  CHECK(stl::robustness(*tight.trace, stl::parse_formula("G[0,30)(speed < 50)")) == tight.robustness);

  const auto single = falsify(sys, stl::parse_formula("G[0,30)(speed < 50)"), quick_falsify(1));
  CHECK(single.simulations == 1);

  CHECK_THROWS_AS(falsify(sys, stl::parse_formula("G[0,40)(speed < 50)"), quick_falsify(5)), std::invalid_argument);
}

TEST_CASE("falsify with nelder-mead respects the budget") {
  const systems::TransmissionSurrogate sys;
  auto cfg = quick_falsify(25);
  cfg.acquisition.strategy = acq::Strategy::kNelderMead;
  const auto r = falsify(sys, stl::parse_formula("G[0,30)(speed < 1e6)"), cfg);
  CHECK(r.simulations == 25);
}

TEST_CASE("validate") {
  const systems::TransmissionSurrogate sys;
  const auto one = validate(sys, stl::parse_formula("G[0,30)(speed < 1e6)"), 1, 3);
  CHECK(one.simulations == 1);
  const auto many = validate(sys, stl::parse_formula("G[0,30)(speed < 1e6)"), 200, 3);
  // The fastest possible run peaks near 115.6 mph.
  CHECK(many.min_robustness > 1e6 - 116.0);
  CHECK(many.min_robustness < 1e6 - 60.0);
  // G[0,30) covers every sample but the last.
  CHECK(sys.simulate(many.argmin).column(0).head(3000).maxCoeff() == doctest::Approx(1e6 - many.min_robustness));
}

TEST_CASE("mine: flat plant is mined in one round") {
  const Flat sys;
  const auto pf = stl::parse_parametric_formula(
      "G[0,10)(y < $pi)", {{"pi", stl::ParamKind::kScale, 0.0, 10.0, stl::Monotonicity::kIncreasing}});
  MiningConfig cfg;
  cfg.falsification_budget = 10;
  cfg.candidates = 20;
  const auto r = mine(sys, pf, cfg);
  CHECK(r.status == MiningStatus::kMined);
  CHECK(r.rounds == 1);
  CHECK(r.valuation.at("pi") > 3.0);
  CHECK(r.valuation.at("pi") <= 4.0);
}

TEST_CASE("mine: zero rounds stops after the first synthesis") {
  const systems::TransmissionSurrogate sys;
  MiningConfig cfg;
  cfg.max_rounds = 0;
  const auto r = mine(sys, speed_rpm_template().formula, cfg);
  CHECK(r.status == MiningStatus::kBudgetExhausted);
  CHECK(r.rounds == 0);
  CHECK(r.total_simulations == cfg.init_samples);
  CHECK(r.valuation_history.size() == 1);
}

TEST_CASE("mine: infeasible template") {
  const systems::TransmissionSurrogate sys;
  const auto pf = stl::parse_parametric_formula(
      "G[0,30)(RPM < $pi)", {{"pi", stl::ParamKind::kScale, 0.0, 500.0, stl::Monotonicity::kIncreasing}});
  const auto r = mine(sys, pf, MiningConfig{});
  CHECK(r.status == MiningStatus::kInfeasible);
  CHECK_FALSE(r.message.empty());
}

TEST_CASE("mine: speed/RPM template end to end") {
  const systems::TransmissionSurrogate sys;
  const auto tpl = speed_rpm_template();
  MiningConfig cfg;
  cfg.epsilon = tpl.epsilon;
  cfg.acquisition.kernel = gp::Kernel::matern(0.2);
  cfg.seed = 42;
  const auto r = mine(sys, tpl.formula, cfg);
  REQUIRE(r.status == MiningStatus::kMined);
  CHECK(r.min_robustness_on_samples > 0.0);
  CHECK(r.min_robustness_on_samples <= tpl.epsilon);
  const auto mined = stl::instantiate(tpl.formula, r.valuation);
  for (const auto& e : r.counterexamples.entries) CHECK(stl::robustness(e.trace, mined) > 0.0);
  CHECK(validate(sys, mined, 300, 99).min_robustness > 0.0);

  std::size_t sims = r.init_simulations;
  for (std::size_t s : r.round_simulations) sims += s;
  CHECK(r.total_simulations == sims);
  CHECK(r.rounds == r.round_simulations.size());
  CHECK(r.valuation_history.size() == r.rounds);
  // Each counterexample can only loosen an increasing parameter.
  for (std::size_t i = 1; i < r.valuation_history.size(); ++i) {
    for (const auto& p : tpl.formula.params()) {
      CHECK(r.valuation_history[i].at(p.name) >= r.valuation_history[i - 1].at(p.name) - cfg.synthesis_tol);
    }
  }
}

TEST_CASE("mining config validation") {
  MiningConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.epsilon = 0.0;
  CHECK_THROWS(cfg.validate());
  cfg.epsilon = 1.0;
  cfg.init_samples = 0;
  CHECK_THROWS(cfg.validate());
  CHECK_THROWS(make_template("unknown"));
}
