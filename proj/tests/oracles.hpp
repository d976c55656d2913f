#pragma once

// Reference implementations used to check the library. Each one follows the
// textbook definition directly and shares no code with src/.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "stlmine/gp/kernel.hpp"
#include "stlmine/stl/formula.hpp"
#include "stlmine/stl/signal.hpp"

namespace oracle {

inline double term_value(const stlmine::stl::Term& t) { return std::get<double>(t); }

inline std::size_t channel_of(const stlmine::stl::Signal& s, const std::string& name) {
  for (std::size_t i = 0; i < s.channel_names().size(); ++i) {
    if (s.channel_names()[i] == name) return i;
  }
  throw std::out_of_range("no channel " + name);
}

// Sample indices j >= k with a <= (j - k) dt < b, tolerance 1e-9 dt.
inline std::vector<std::size_t> window(const stlmine::stl::Signal& s, std::size_t k, double a, double b) {
  std::vector<std::size_t> idx;
  const double eps = 1e-9 * s.dt();
  for (std::size_t off = 0;; ++off) {
    const double d = static_cast<double>(off) * s.dt();
    if (d >= b - eps) break;
    if (d >= a - eps) {
      if (k + off >= s.samples()) throw std::out_of_range("window past end of trace");
      idx.push_back(k + off);
    }
  }
  if (idx.empty()) throw std::out_of_range("empty window");
  return idx;
}

// Fully unrolled recursive robustness at sample index k.
inline double robustness(const stlmine::stl::Signal& s, const stlmine::stl::Formula& f, std::size_t k) {
  using namespace stlmine::stl;
  if (auto p = f.as<Predicate>()) {
    const double x = s.value(k, channel_of(s, p->channel));
    const double d = term_value(p->threshold);
    return p->cmp == Comparator::kLess ? d - x : x - d;
  }
  if (auto n = f.as<Negation>()) return -robustness(s, n->child, k);
  if (auto c = f.as<Conjunction>()) return std::min(robustness(s, c->lhs, k), robustness(s, c->rhs, k));
  if (auto d = f.as<Disjunction>()) return std::max(robustness(s, d->lhs, k), robustness(s, d->rhs, k));
  const auto* t = f.as<Temporal>();
  const bool fin = t->op == TemporalOp::kFinally;
  double best = fin ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
  for (std::size_t j : window(s, k, term_value(t->begin), term_value(t->end))) {
    const double r = robustness(s, t->child, j);
    best = fin ? std::max(best, r) : std::min(best, r);
  }
  return best;
}

// Qualitative semantics, evaluated independently of robustness.
inline bool holds(const stlmine::stl::Signal& s, const stlmine::stl::Formula& f, std::size_t k) {
  using namespace stlmine::stl;
  if (auto p = f.as<Predicate>()) {
    const double x = s.value(k, channel_of(s, p->channel));
    const double d = term_value(p->threshold);
    return p->cmp == Comparator::kLess ? x < d : x >= d;
  }
  if (auto n = f.as<Negation>()) return !holds(s, n->child, k);
  if (auto c = f.as<Conjunction>()) return holds(s, c->lhs, k) && holds(s, c->rhs, k);
  if (auto d = f.as<Disjunction>()) return holds(s, d->lhs, k) || holds(s, d->rhs, k);
  const auto* t = f.as<Temporal>();
  const auto idx = window(s, k, term_value(t->begin), term_value(t->end));
  if (t->op == TemporalOp::kFinally) {
    return std::any_of(idx.begin(), idx.end(), [&](std::size_t j) { return holds(s, t->child, j); });
  }
  return std::all_of(idx.begin(), idx.end(), [&](std::size_t j) { return holds(s, t->child, j); });
}

// Random formula over channels x, y with integer windows inside [0, 4].
template <typename Rng>
stlmine::stl::Formula random_formula(Rng& rng, int depth) {
  using namespace stlmine::stl;
  std::uniform_int_distribution<int> pick(0, depth <= 1 ? 0 : 5);
  std::uniform_real_distribution<double> thr(-5.0, 5.0);
  std::uniform_int_distribution<int> coin(0, 1);
  switch (pick(rng)) {
    case 0:
      return predicate(coin(rng) ? "x" : "y", coin(rng) ? Comparator::kLess : Comparator::kGreaterEqual, thr(rng));
    case 1:
      return negation(random_formula(rng, depth - 1));
    case 2:
      return conjunction(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 3:
      return disjunction(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    default: {
      std::uniform_int_distribution<int> a(0, 3);
      const int lo = a(rng);
      std::uniform_int_distribution<int> len(1, 4 - lo);
      const int hi = lo + len(rng);
      auto child = random_formula(rng, depth - 1);
      return coin(rng) ? eventually(double(lo), double(hi), child) : always(double(lo), double(hi), child);
    }
  }
}

// Signal with channels x, y, dt 1 and uniform values in [-5, 5].
template <typename Rng>
stlmine::stl::Signal random_signal(Rng& rng, std::size_t samples) {
  std::uniform_real_distribution<double> v(-5.0, 5.0);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(samples), 2);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    m(i, 0) = v(rng);
    m(i, 1) = v(rng);
  }
  return stlmine::stl::Signal({"x", "y"}, 0.0, 1.0, m);
}

// Closed-form kernels written out term by term.
inline double kernel(const stlmine::gp::Kernel& k, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double r = (a - b).norm();
  const double l = k.lengthscale();
  if (k.family() == stlmine::gp::KernelFamily::kGaussian) return std::exp(-r * r / (2.0 * l * l));
  if (k.nu() == 0.5) return std::exp(-r / l);
  if (k.nu() == 1.5) return (1.0 + std::sqrt(3.0) * r / l) * std::exp(-std::sqrt(3.0) * r / l);
  return (1.0 + std::sqrt(5.0) * r / l + 5.0 * r * r / (3.0 * l * l)) * std::exp(-std::sqrt(5.0) * r / l);
}

struct DensePrediction {
  double mean;
  double variance;
};

// GP prediction through an explicit inverse of K + noise I.
inline DensePrediction dense_predict(const stlmine::gp::Kernel& k, double noise, const Eigen::MatrixXd& X,
                                     const Eigen::VectorXd& y, const Eigen::VectorXd& x) {
  const Eigen::Index n = X.rows();
  if (n == 0) return {0.0, kernel(k, x, x)};
  Eigen::MatrixXd K(n, n);
  Eigen::VectorXd kx(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    kx(i) = kernel(k, X.row(i).transpose(), x);
    for (Eigen::Index j = 0; j < n; ++j) K(i, j) = kernel(k, X.row(i).transpose(), X.row(j).transpose());
  }
  K.diagonal().array() += noise;
  const Eigen::MatrixXd inv = K.fullPivLu().inverse();
  return {kx.dot(inv * y), kernel(k, x, x) - kx.dot(inv * kx)};
}

// beta_t written straight from its definition.
inline double beta(double t, double domain_size, double delta) {
  const double pi = 3.14159265358979323846;
  return 2.0 * std::log(domain_size * (pi * pi * t * t / 6.0) / delta);
}

// Ackley function from its definition.
inline double ackley(double x, double y) {
  const double pi = 3.14159265358979323846;
  return -20.0 * std::exp(-0.2 * std::sqrt(0.5 * (x * x + y * y))) -
         std::exp(0.5 * (std::cos(2 * pi * x) + std::cos(2 * pi * y))) + std::exp(1.0) + 20.0;
}

// Probability of at least `wins` successes in `n` fair coin flips.
inline double sign_test_p(std::size_t wins, std::size_t n) {
  double p = 0.0;
  for (std::size_t k = wins; k <= n; ++k) {
    p += std::exp(std::lgamma(double(n) + 1) - std::lgamma(double(k) + 1) - std::lgamma(double(n - k) + 1) -
                  double(n) * std::log(2.0));
  }
  return p;
}

}  // namespace oracle
