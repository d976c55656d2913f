#include "stlmine/mining/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stlmine/stl/robustness.hpp"

namespace stlmine::mining {

double min_robustness(const CounterexampleSet& traces, const stl::Formula& f) {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& e : traces.entries) lo = std::min(lo, stl::robustness(e.trace, f));
  return lo;
}

SynthesisResult synthesize_parameters(const stl::ParametricFormula& pf, const CounterexampleSet& traces,
                                      double epsilon, double tol) {
  if (traces.empty()) throw std::invalid_argument("synthesize_parameters: no traces");
  if (!(epsilon > 0.0) || !(tol > 0.0)) throw std::invalid_argument("synthesize_parameters: epsilon and tol must be positive");

  SynthesisResult out;
  struct Axis {
    const stl::ParameterSpec* spec;
    double loose;
    double tight;
  };
  std::vector<Axis> axes;
  for (const auto& p : pf.params()) {
    if (!p.monotonicity) throw stl::FormulaError("parameter $" + p.name + " has no declared monotonicity");
    // Robustness grows with an increasing parameter, so its loose end is the upper bound.
    const bool inc = *p.monotonicity == stl::Monotonicity::kIncreasing;
    axes.push_back({&p, inc ? p.upper : p.lower, inc ? p.lower : p.upper});
    out.valuation[p.name] = axes.back().loose;
  }

  auto score = [&](const stl::Valuation& theta) {
    ++out.evaluations;
    return min_robustness(traces, stl::instantiate(pf, theta));
  };
  // Tight ends of time intervals can collapse a window; treat that as violated.
  auto feasible_at = [&](stl::Valuation theta, const std::string& name, double v, double& rob) {
    theta[name] = v;
    try {
      rob = score(theta);
    } catch (const stl::FormulaError&) {
      return false;
    }
    return rob > 0.0;
  };

  double current = score(out.valuation);
  if (!(current > 0.0)) {
    throw InfeasibleError("loosest valuation is violated (min robustness " + std::to_string(current) + ")");
  }

  bool moved = true;
  while (moved) {
    moved = false;
    for (const auto& axis : axes) {
      const std::string& name = axis.spec->name;
      const double start = out.valuation[name];
      double good = start;
      double good_rob = current;
      double rob = 0.0;
      if (feasible_at(out.valuation, name, axis.tight, rob)) {
        good = axis.tight;
        good_rob = rob;
      } else {
        double bad = axis.tight;
        while (std::abs(good - bad) > tol) {
          const double mid = 0.5 * (good + bad);
          if (feasible_at(out.valuation, name, mid, rob)) {
            good = mid;
            good_rob = rob;
          } else {
            bad = mid;
          }
        }
      }
      out.valuation[name] = good;
      current = good_rob;
      if (std::abs(good - start) > tol) moved = true;
    }
  }
  out.min_robustness = current;
  out.tight = current <= epsilon;
  return out;
}

}  // namespace stlmine::mining
