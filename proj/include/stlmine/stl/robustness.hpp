#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "stlmine/stl/formula.hpp"
#include "stlmine/stl/signal.hpp"

namespace stlmine::stl {

class EvalError : public std::runtime_error {
 public:
  enum class Kind { kUnknownChannel, kTraceTooShort, kOffGrid, kUnboundParameter };

  EvalError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Quantitative robustness of `f` on `s` at time `t` (default: first sample).
///
/// Predicates: r(x < d) = d - x, r(x >= d) = x - d; negation flips the sign;
/// && / || take min / max; F[a,b) / G[a,b) take max / min over the grid
/// samples k*dt with t + a <= k*dt < t + b. Temporal operators use a sliding
/// window extremum, so evaluating G[0,T) over n samples is O(n) per node.
double robustness(const Signal& s, const Formula& f, double t);
double robustness(const Signal& s, const Formula& f);

/// Robustness at each sample index in [first, last). Throws kTraceTooShort if
/// any index needed by a window is past the end of the trace.
std::vector<double> robustness_series(const Signal& s, const Formula& f, std::size_t first, std::size_t last);

/// Boolean verdict derived from robustness; robustness exactly 0 counts as
/// not satisfied.
bool satisfied(const Signal& s, const Formula& f, double t);

/// Grid offsets [begin, end) covered by the time window [a, b) for step dt.
struct WindowOffsets {
  std::size_t begin;
  std::size_t end;
};
WindowOffsets window_offsets(double a, double b, double dt);

}  // namespace stlmine::stl
