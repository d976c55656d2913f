#include <doctest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "stlmine/mining/templates.hpp"
#include "stlmine/stl/parser.hpp"
#include "stlmine/stl/robustness.hpp"
#include "stlmine/stl/signal.hpp"

using namespace stlmine::stl;

namespace {

Signal one_channel(const std::vector<double>& xs, double dt = 1.0) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(xs.size()), 1);
  for (std::size_t i = 0; i < xs.size(); ++i) m(static_cast<Eigen::Index>(i), 0) = xs[i];
  return Signal({"x"}, 0.0, dt, m);
}

}  // namespace

TEST_CASE("constant signal under G") {
  const Signal s = one_channel(std::vector<double>(11, 5.0));
  CHECK(robustness(s, parse_formula("G[0,5)(x < 10)")) == doctest::Approx(5.0));
}

TEST_CASE("ramp under F uses the half-open window") {
  const Signal s = one_channel({0, 1, 2, 3});
  CHECK(robustness(s, parse_formula("F[0,3)(x >= 2)")) == doctest::Approx(0.0));
  CHECK_FALSE(satisfied(s, parse_formula("F[0,3)(x >= 2)"), 0.0));
  CHECK(robustness(s, parse_formula("F[0,4)(x >= 2)")) == doctest::Approx(1.0));
}

TEST_CASE("conjunction takes the minimum") {
  Eigen::MatrixXd m(1, 2);
  m << 1, 4;
  const Signal s({"x", "y"}, 0.0, 1.0, m);
  CHECK(robustness(s, parse_formula("x < 3 && y < 3")) == doctest::Approx(-1.0));
  CHECK(robustness(s, parse_formula("x < 3 || y < 3")) == doctest::Approx(2.0));
  CHECK(robustness(s, parse_formula("!(x < 3)")) == doctest::Approx(-2.0));
}

TEST_CASE("evaluation at a later time and series") {
  const Signal s = one_channel({0, 1, 2, 3, 4, 5});
  const Formula f = parse_formula("G[0,2)(x < 4)");
  CHECK(robustness(s, f, 2.0) == doctest::Approx(1.0));
  const auto series = robustness_series(s, f, 0, 5);
  CHECK(series == std::vector<double>{3, 2, 1, 0, -1});
  CHECK_THROWS_AS(robustness_series(s, f, 0, 6), EvalError);
}

TEST_CASE("evaluation errors") {
  const Signal s = one_channel({0, 1, 2, 3});
  auto kind_of = [&](const std::string& text, double t) {
    try {
      robustness(s, parse_formula(text), t);
    } catch (const EvalError& e) {
      return e.kind();
    }
    FAIL("expected an evaluation error");
    return EvalError::Kind::kOffGrid;
  };
  CHECK(kind_of("y < 1", 0.0) == EvalError::Kind::kUnknownChannel);
  CHECK(kind_of("G[0,5)(x < 1)", 0.0) == EvalError::Kind::kTraceTooShort);
  CHECK(kind_of("G[0,2)(x < 1)", 3.0) == EvalError::Kind::kTraceTooShort);
  CHECK(kind_of("x < 1", 0.5) == EvalError::Kind::kOffGrid);
  CHECK(kind_of("x < $p", 0.0) == EvalError::Kind::kUnboundParameter);
  // A window shorter than one step between two grid points is empty.
  CHECK(kind_of("F[0.2,0.4)(x < 1)", 0.0) == EvalError::Kind::kTraceTooShort);
}

TEST_CASE("a formula whose horizon equals the trace span is accepted") {
  const Signal s = one_channel({1, 1, 1, 1});
  CHECK(robustness(s, parse_formula("G[0,3)(x < 2)")) == doctest::Approx(1.0));
}

TEST_CASE("window offsets on a fractional step") {
  const auto w = window_offsets(0.01, 0.02, 0.01);
  CHECK(w.begin == 1);
  CHECK(w.end == 2);
  const auto v = window_offsets(0.0, 30.0, 0.01);
  CHECK(v.begin == 0);
  CHECK(v.end == 3000);
}

TEST_CASE("property: robustness equals the unrolled oracle and agrees with Boolean semantics") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> depth(1, 4);
  int checked_sign = 0;
  for (int i = 0; i < 400; ++i) {
    const Formula f = oracle::random_formula(rng, depth(rng));
    const std::size_t need = static_cast<std::size_t>(horizon(f)) + 1;
    if (need > 20) continue;
    std::uniform_int_distribution<std::size_t> len(need, 20);
    const Signal s = oracle::random_signal(rng, len(rng));
    const double r = robustness(s, f);
    CAPTURE(to_string(f));
    CHECK(std::abs(r - oracle::robustness(s, f, 0)) <= 1e-9);
    CHECK(robustness(s, negation(f)) == doctest::Approx(-r));
    if (std::abs(r) > 1e-9) {
      ++checked_sign;
      CHECK((r > 0) == oracle::holds(s, f, 0));
      CHECK(satisfied(s, f, 0.0) == (r > 0));
    }
  }
  CHECK(checked_sign > 300);
}

TEST_CASE("property: a uniform shift smaller than |r| keeps the verdict") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 300; ++i) {
    // Predicate-only or single-temporal formulas over one predicate.
    const bool temporal = i % 2 == 1;
    const Formula p = oracle::random_formula(rng, 1);
    const Formula f = temporal ? (i % 4 == 1 ? always(0.0, 3.0, p) : eventually(1.0, 4.0, p)) : p;
    const Signal s = oracle::random_signal(rng, 6);
    const double r = robustness(s, f);
    if (std::abs(r) < 1e-6) continue;
    for (double frac : {-0.99, -0.5, 0.5, 0.99}) {
      const Signal moved({"x", "y"}, 0.0, 1.0, (s.values().array() + frac * std::abs(r)).matrix());
      CHECK(satisfied(moved, f, 0.0) == (r > 0));
    }
  }
}

TEST_CASE("property: template robustness is monotone in each parameter") {
  using stlmine::mining::make_template;
  // Synthetic trace with speed ramping to 120 mph, RPM oscillating and a
  // short gear-2 visit.
  const std::size_t n = 3001;
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n), 3);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = 0.01 * static_cast<double>(k);
    const auto i = static_cast<Eigen::Index>(k);
    m(i, 0) = 4.0 * t;
    m(i, 1) = 3000.0 + 2000.0 * std::sin(t);
    m(i, 2) = (t >= 3.0 && t < 4.5) ? 2.0 : (t < 3.0 ? 1.0 : 3.0);
  }
  const Signal s({"speed", "RPM", "gear"}, 0.0, 0.01, m);
  for (const auto& name : stlmine::mining::template_names()) {
    const auto tpl = make_template(name);
    const auto& params = tpl.formula.params();
    for (const auto& moving : params) {
      Valuation theta;
      for (const auto& p : params) theta[p.name] = 0.5 * (p.lower + p.upper);
      double prev = 0.0;
      bool first = true;
      for (int g = 1; g < 40; ++g) {
        theta[moving.name] = moving.lower + (moving.upper - moving.lower) * g / 40.0;
        const double r = robustness(s, instantiate(tpl.formula, theta));
        if (!first) {
          CAPTURE(name);
          CAPTURE(moving.name);
          if (*moving.monotonicity == Monotonicity::kIncreasing) CHECK(r >= prev - 1e-12);
          else CHECK(r <= prev + 1e-12);
        }
        prev = r;
        first = false;
      }
    }
  }
}

TEST_CASE("signal csv round trip and validation") {
  Eigen::MatrixXd m(3, 2);
  m << 0.1, 2, 0.2, 3, 1.0 / 3.0, 4;
  const Signal s({"a", "b"}, 0.5, 0.25, m);
  std::stringstream io;
  write_signal_csv(io, s);
  CHECK(io.str().rfind("# stlmine", 0) == 0);
  const Signal back = read_signal_csv(io);
  CHECK(back == s);
  CHECK(back.sample_index(1.0) == std::optional<std::size_t>(2));
  CHECK_FALSE(back.sample_index(0.6).has_value());

  std::istringstream uneven("time,x\n0,1\n1,2\n2.5,3\n");
  CHECK_THROWS_AS(read_signal_csv(uneven), SignalError);
  std::istringstream single("time,x\n0,1\n");
  CHECK_THROWS_AS(read_signal_csv(single), SignalError);
  CHECK_THROWS_AS(Signal({"x", "x"}, 0.0, 1.0, Eigen::MatrixXd::Zero(2, 2)), SignalError);
  CHECK_THROWS_AS(Signal({"x"}, 0.0, 0.0, Eigen::MatrixXd::Zero(2, 1)), SignalError);
  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(2, 1);
  bad(1, 0) = std::nan("");
  CHECK_THROWS_AS(Signal({"x"}, 0.0, 1.0, bad), SignalError);
}
