#include "stlmine/stl/formula.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "stlmine/common/number_format.hpp"

namespace stlmine::stl {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

Formula make(Formula::Node node) {
  return Formula(std::make_shared<const Formula::Node>(std::move(node)));
}

void check_interval(const Term& begin, const Term& end) {
  if (const double* a = std::get_if<double>(&begin)) {
    if (!std::isfinite(*a) || *a < 0.0) {
      throw FormulaError("interval begin must be finite and non-negative, got " + format_number(*a));
    }
  }
  if (const double* b = std::get_if<double>(&end)) {
    if (!std::isfinite(*b)) throw FormulaError("interval end must be finite");
  }
  const double* a = std::get_if<double>(&begin);
  const double* b = std::get_if<double>(&end);
  if (a && b && !(*a < *b)) {
    throw FormulaError("malformed interval [" + format_number(*a) + "," + format_number(*b) +
                       "): begin must be < end");
  }
}

std::string term_text(const Term& t) {
  return std::visit(overloaded{[](double v) { return format_number(v); },
                               [](const ParamRef& p) { return "$" + p.name; }},
                    t);
}

// Precedence levels used by the printer: 0 = || , 1 = &&, 2 = unary/atoms.
int level(const Formula& f) {
  return std::visit(overloaded{[](const Disjunction&) { return 0; },
                               [](const Conjunction&) { return 1; },
                               [](const auto&) { return 2; }},
                    f.node());
}

std::string print(const Formula& f);

std::string wrap(const Formula& f, int min_level) {
  std::string s = print(f);
  return level(f) < min_level ? "(" + s + ")" : s;
}

std::string print(const Formula& f) {
  return std::visit(
      overloaded{
          [](const Predicate& p) {
            return p.channel + (p.cmp == Comparator::kLess ? " < " : " >= ") + term_text(p.threshold);
          },
          [](const Negation& n) {
            // Predicates are wrapped so that "!x < 1" is never produced.
            const bool atom = level(n.child) == 2 && !n.child.as<Predicate>();
            return "!" + (atom ? print(n.child) : "(" + print(n.child) + ")");
          },
          [](const Conjunction& c) { return wrap(c.lhs, 1) + " && " + wrap(c.rhs, 2); },
          [](const Disjunction& d) { return wrap(d.lhs, 0) + " || " + wrap(d.rhs, 1); },
          [](const Temporal& t) {
            std::string head = (t.op == TemporalOp::kFinally ? "F[" : "G[") + term_text(t.begin) + "," +
                               term_text(t.end) + ")";
            return head + "(" + print(t.child) + ")";
          }},
      f.node());
}

void collect_params(const Formula& f, std::vector<std::string>& out) {
  auto add = [&out](const Term& t) {
    if (const auto* p = std::get_if<ParamRef>(&t)) {
      if (std::find(out.begin(), out.end(), p->name) == out.end()) out.push_back(p->name);
    }
  };
  std::visit(overloaded{[&](const Predicate& p) { add(p.threshold); },
                        [&](const Negation& n) { collect_params(n.child, out); },
                        [&](const Conjunction& c) {
                          collect_params(c.lhs, out);
                          collect_params(c.rhs, out);
                        },
                        [&](const Disjunction& d) {
                          collect_params(d.lhs, out);
                          collect_params(d.rhs, out);
                        },
                        [&](const Temporal& t) {
                          add(t.begin);
                          add(t.end);
                          collect_params(t.child, out);
                        }},
             f.node());
}

// Records the kind each parameter is used as; a name used both ways is an error.
void collect_usage(const Formula& f, std::map<std::string, ParamKind>& usage) {
  auto note = [&usage](const Term& t, ParamKind kind) {
    const auto* p = std::get_if<ParamRef>(&t);
    if (!p) return;
    auto [it, inserted] = usage.emplace(p->name, kind);
    if (!inserted && it->second != kind) {
      throw FormulaError("parameter $" + p->name + " is used both as a threshold and as a time bound");
    }
  };
  std::visit(overloaded{[&](const Predicate& p) { note(p.threshold, ParamKind::kScale); },
                        [&](const Negation& n) { collect_usage(n.child, usage); },
                        [&](const Conjunction& c) {
                          collect_usage(c.lhs, usage);
                          collect_usage(c.rhs, usage);
                        },
                        [&](const Disjunction& d) {
                          collect_usage(d.lhs, usage);
                          collect_usage(d.rhs, usage);
                        },
                        [&](const Temporal& t) {
                          note(t.begin, ParamKind::kTime);
                          note(t.end, ParamKind::kTime);
                          collect_usage(t.child, usage);
                        }},
             f.node());
}

Formula substitute(const Formula& f, const Valuation& theta) {
  auto value = [&theta](const Term& t) -> Term {
    if (const auto* p = std::get_if<ParamRef>(&t)) return theta.at(p->name);
    return t;
  };
  return std::visit(
      overloaded{[&](const Predicate& p) { return predicate(p.channel, p.cmp, value(p.threshold)); },
                 [&](const Negation& n) { return negation(substitute(n.child, theta)); },
                 [&](const Conjunction& c) {
                   return conjunction(substitute(c.lhs, theta), substitute(c.rhs, theta));
                 },
                 [&](const Disjunction& d) {
                   return disjunction(substitute(d.lhs, theta), substitute(d.rhs, theta));
                 },
                 [&](const Temporal& t) {
                   Term a = value(t.begin);
                   Term b = value(t.end);
                   const double av = std::get<double>(a);
                   const double bv = std::get<double>(b);
                   if (!(av < bv)) {
                     throw FormulaError("valuation induces an empty interval [" + format_number(av) + "," +
                                        format_number(bv) + ")");
                   }
                   Formula child = substitute(t.child, theta);
                   return t.op == TemporalOp::kFinally ? eventually(a, b, child) : always(a, b, child);
                 }},
      f.node());
}

}  // namespace

Formula::Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {
  if (!node_) throw FormulaError("null formula node");
}

bool Formula::is_concrete() const { return parameter_names(*this).empty(); }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->index() != b.node_->index()) return false;
  return std::visit(
      overloaded{[&](const Predicate& p) {
                   const auto& q = *b.as<Predicate>();
                   return p.channel == q.channel && p.cmp == q.cmp && p.threshold == q.threshold;
                 },
                 [&](const Negation& n) { return n.child == b.as<Negation>()->child; },
                 [&](const Conjunction& c) {
                   const auto& o = *b.as<Conjunction>();
                   return c.lhs == o.lhs && c.rhs == o.rhs;
                 },
                 [&](const Disjunction& d) {
                   const auto& o = *b.as<Disjunction>();
                   return d.lhs == o.lhs && d.rhs == o.rhs;
                 },
                 [&](const Temporal& t) {
                   const auto& o = *b.as<Temporal>();
                   return t.op == o.op && t.begin == o.begin && t.end == o.end && t.child == o.child;
                 }},
      a.node());
}

Formula predicate(std::string channel, Comparator cmp, Term threshold) {
  if (channel.empty()) throw FormulaError("predicate channel name is empty");
  if (const double* d = std::get_if<double>(&threshold); d && !std::isfinite(*d)) {
    throw FormulaError("predicate threshold must be finite");
  }
  return make(Predicate{std::move(channel), cmp, std::move(threshold)});
}

Formula negation(Formula child) { return make(Negation{std::move(child)}); }

Formula conjunction(Formula lhs, Formula rhs) { return make(Conjunction{std::move(lhs), std::move(rhs)}); }

Formula disjunction(Formula lhs, Formula rhs) { return make(Disjunction{std::move(lhs), std::move(rhs)}); }

Formula eventually(Term begin, Term end, Formula child) {
  check_interval(begin, end);
  return make(Temporal{TemporalOp::kFinally, std::move(begin), std::move(end), std::move(child)});
}

Formula always(Term begin, Term end, Formula child) {
  check_interval(begin, end);
  return make(Temporal{TemporalOp::kGlobally, std::move(begin), std::move(end), std::move(child)});
}

std::string to_string(const Formula& f) { return print(f); }

std::vector<std::string> parameter_names(const Formula& f) {
  std::vector<std::string> out;
  collect_params(f, out);
  return out;
}

double horizon(const Formula& f) {
  return std::visit(
      overloaded{[](const Predicate&) { return 0.0; },
                 [](const Negation& n) { return horizon(n.child); },
                 [](const Conjunction& c) { return std::max(horizon(c.lhs), horizon(c.rhs)); },
                 [](const Disjunction& d) { return std::max(horizon(d.lhs), horizon(d.rhs)); },
                 [](const Temporal& t) {
                   const double* b = std::get_if<double>(&t.end);
                   if (!b) throw FormulaError("horizon of a formula with unbound time parameter");
                   return *b + horizon(t.child);
                 }},
      f.node());
}

ParametricFormula::ParametricFormula(Formula formula, std::vector<ParameterSpec> params)
    : formula_(std::move(formula)), params_(std::move(params)) {
  std::map<std::string, ParamKind> usage;
  collect_usage(formula_, usage);
  std::set<std::string> seen;
  for (const auto& spec : params_) {
    if (!seen.insert(spec.name).second) throw FormulaError("duplicate parameter spec $" + spec.name);
    auto it = usage.find(spec.name);
    if (it == usage.end()) throw FormulaError("parameter spec $" + spec.name + " is not used by the formula");
    if (it->second != spec.kind) {
      throw FormulaError("parameter $" + spec.name + " is declared " + std::string(to_string(spec.kind)) +
                         " but used as " + std::string(to_string(it->second)));
    }
    if (!std::isfinite(spec.lower) || !std::isfinite(spec.upper) || !(spec.lower < spec.upper)) {
      throw FormulaError("parameter $" + spec.name + " needs finite bounds with lower < upper");
    }
    if (spec.kind == ParamKind::kTime && spec.lower < 0.0) {
      throw FormulaError("time parameter $" + spec.name + " must have lower >= 0");
    }
  }
  for (const auto& [name, kind] : usage) {
    if (!seen.count(name)) throw FormulaError("parameter $" + name + " has no spec");
  }
}

const ParameterSpec& ParametricFormula::param(std::string_view name) const {
  for (const auto& p : params_) {
    if (p.name == name) return p;
  }
  throw FormulaError("unknown parameter $" + std::string(name));
}

Formula instantiate(const ParametricFormula& pf, const Valuation& theta) {
  for (const auto& [name, value] : theta) {
    const auto& spec = pf.param(name);
    if (!std::isfinite(value) || value < spec.lower || value > spec.upper) {
      throw FormulaError("value " + format_number(value) + " for $" + name + " is outside [" +
                         format_number(spec.lower) + "," + format_number(spec.upper) + "]");
    }
  }
  for (const auto& spec : pf.params()) {
    if (!theta.count(spec.name)) throw FormulaError("missing value for parameter $" + spec.name);
  }
  return substitute(pf.formula(), theta);
}

std::string_view to_string(ParamKind kind) { return kind == ParamKind::kScale ? "scale" : "time"; }

std::string_view to_string(Monotonicity m) {
  return m == Monotonicity::kIncreasing ? "increasing" : "decreasing";
}

}  // namespace stlmine::stl
