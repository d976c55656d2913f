#include "stlmine/stl/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "stlmine/common/number_format.hpp"

namespace stlmine::stl {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

// Smallest integer k with k >= x, treating x within 1e-9 (relative) of an
// integer as that integer.
std::size_t grid_ceil(double x) {
  const double snapped = std::round(x);
  if (std::abs(x - snapped) <= 1e-9 * std::max(1.0, std::abs(x))) return static_cast<std::size_t>(snapped);
  return static_cast<std::size_t>(std::ceil(x));
}

double constant(const Term& t) {
  if (const double* v = std::get_if<double>(&t)) return *v;
  throw EvalError(EvalError::Kind::kUnboundParameter, "unbound parameter $" + std::get<ParamRef>(t).name);
}

// Sliding-window extremum: out[i] = ext(in[i .. i + width)).
template <typename Better>
std::vector<double> sliding(const std::vector<double>& in, std::size_t width, Better better) {
  const std::size_t n = in.size() + 1 - width;
  std::vector<double> out(n);
  std::deque<std::size_t> q;
  for (std::size_t j = 0; j < in.size(); ++j) {
    while (!q.empty() && !better(in[q.back()], in[j])) q.pop_back();
    q.push_back(j);
    if (j + 1 >= width) {
      const std::size_t i = j + 1 - width;
      while (q.front() < i) q.pop_front();
      out[i] = in[q.front()];
    }
  }
  return out;
}

std::vector<double> eval(const Signal& s, const Formula& f, std::size_t first, std::size_t last) {
  return std::visit(
      overloaded{
          [&](const Predicate& p) {
            const auto ch = s.channel_index(p.channel);
            if (!ch) throw EvalError(EvalError::Kind::kUnknownChannel, "channel '" + p.channel + "' not in signal");
            if (last > s.samples()) {
              throw EvalError(EvalError::Kind::kTraceTooShort,
                              "trace too short: needs sample " + std::to_string(last - 1) + " but has " +
                                  std::to_string(s.samples()));
            }
            const double d = constant(p.threshold);
            std::vector<double> out(last - first);
            for (std::size_t k = first; k < last; ++k) {
              const double x = s.value(k, *ch);
              out[k - first] = p.cmp == Comparator::kLess ? d - x : x - d;
            }
            return out;
          },
          [&](const Negation& n) {
            auto out = eval(s, n.child, first, last);
            for (double& v : out) v = -v;
            return out;
          },
          [&](const Conjunction& c) {
            auto out = eval(s, c.lhs, first, last);
            const auto rhs = eval(s, c.rhs, first, last);
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::min(out[i], rhs[i]);
            return out;
          },
          [&](const Disjunction& d) {
            auto out = eval(s, d.lhs, first, last);
            const auto rhs = eval(s, d.rhs, first, last);
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(out[i], rhs[i]);
            return out;
          },
          [&](const Temporal& t) {
            const auto w = window_offsets(constant(t.begin), constant(t.end), s.dt());
            const std::size_t width = w.end - w.begin;
            const auto child = eval(s, t.child, first + w.begin, last + w.end - 1);
            if (t.op == TemporalOp::kFinally) return sliding(child, width, std::greater<double>());
            return sliding(child, width, std::less<double>());
          }},
      f.node());
}

}  // namespace

WindowOffsets window_offsets(double a, double b, double dt) {
  const WindowOffsets w{grid_ceil(a / dt), grid_ceil(b / dt)};
  if (w.end <= w.begin) {
    throw EvalError(EvalError::Kind::kTraceTooShort, "window [" + format_number(a) + "," + format_number(b) +
                                                         ") contains no grid point for dt=" + format_number(dt));
  }
  return w;
}

std::vector<double> robustness_series(const Signal& s, const Formula& f, std::size_t first, std::size_t last) {
  if (last <= first) return {};
  return eval(s, f, first, last);
}

double robustness(const Signal& s, const Formula& f, double t) {
  const auto k = s.sample_index(t);
  if (!k) {
    throw EvalError(EvalError::Kind::kOffGrid, "time " + format_number(t) + " is not a sample time of the trace");
  }
  return eval(s, f, *k, *k + 1).front();
}

double robustness(const Signal& s, const Formula& f) { return robustness(s, f, s.t0()); }

bool satisfied(const Signal& s, const Formula& f, double t) { return robustness(s, f, t) > 0.0; }

}  // namespace stlmine::stl
