#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <vector>

#include "stlmine/stl/formula.hpp"
#include "stlmine/stl/signal.hpp"

namespace stlmine::mining {

/// Traces collected so far, each with the initial condition that produced it.
struct CounterexampleSet {
  struct Entry {
    Eigen::VectorXd x0;
    stl::Signal trace;
  };
  std::vector<Entry> entries;

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
  void add(Eigen::VectorXd x0, stl::Signal trace) { entries.push_back({std::move(x0), std::move(trace)}); }
};

/// Even the loosest valuation is violated by some trace.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SynthesisResult {
  stl::Valuation valuation;
  /// Minimum robustness of the induced formula over the traces (> 0).
  double min_robustness = 0.0;
  /// min_robustness <= epsilon. False when a parameter hit the tight end of
  /// its range with slack left.
  bool tight = false;
  std::size_t evaluations = 0;
};

/// Minimum over traces of the robustness of `f` at time 0.
double min_robustness(const CounterexampleSet& traces, const stl::Formula& f);

/// Tightest valuation with positive minimum robustness on `traces`.
///
/// Starts from the loosest corner of the parameter box and runs a binary
/// search per parameter in declaration order, towards the tightening
/// direction given by its monotonicity, until the bracket is narrower than
/// `tol`. Passes repeat until no parameter moves by more than `tol`.
///
/// Throws InfeasibleError when the loosest corner is violated and
/// stl::FormulaError when a parameter has no declared monotonicity.
SynthesisResult synthesize_parameters(const stl::ParametricFormula& pf, const CounterexampleSet& traces,
                                      double epsilon, double tol);

}  // namespace stlmine::mining
