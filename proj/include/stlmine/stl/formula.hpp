#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace stlmine::stl {

/// Raised for structurally invalid formulas and failed instantiations.
class FormulaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParamRef {
  std::string name;
  bool operator==(const ParamRef&) const = default;
};

/// A threshold or interval endpoint: either a constant or a named parameter.
using Term = std::variant<double, ParamRef>;

enum class Comparator { kLess, kGreaterEqual };
enum class TemporalOp { kFinally, kGlobally };

struct Predicate;
struct Negation;
struct Conjunction;
struct Disjunction;
struct Temporal;

/// Immutable STL syntax tree. Copies share structure, so a Formula is cheap to
/// pass by value and safe to read from several threads.
class Formula {
 public:
  using Node = std::variant<Predicate, Negation, Conjunction, Disjunction, Temporal>;

  explicit Formula(std::shared_ptr<const Node> node);

  const Node& node() const;

  template <typename T>
  const T* as() const;

  /// True when no threshold or interval endpoint is a parameter.
  bool is_concrete() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  std::shared_ptr<const Node> node_;
};

struct Predicate {
  std::string channel;
  Comparator cmp;
  Term threshold;
};

struct Negation {
  Formula child;
};

struct Conjunction {
  Formula lhs;
  Formula rhs;
};

struct Disjunction {
  Formula lhs;
  Formula rhs;
};

/// F[begin, end) child or G[begin, end) child.
struct Temporal {
  TemporalOp op;
  Term begin;
  Term end;
  Formula child;
};

inline const Formula::Node& Formula::node() const { return *node_; }

template <typename T>
const T* Formula::as() const {
  return std::get_if<T>(node_.get());
}

Formula predicate(std::string channel, Comparator cmp, Term threshold);
Formula negation(Formula child);
Formula conjunction(Formula lhs, Formula rhs);
Formula disjunction(Formula lhs, Formula rhs);
Formula eventually(Term begin, Term end, Formula child);
Formula always(Term begin, Term end, Formula child);

/// Canonical text form; parse_formula(to_string(f)) == f.
std::string to_string(const Formula& f);

/// Parameter names in order of first appearance (left to right).
std::vector<std::string> parameter_names(const Formula& f);

/// Required trace length past the evaluation time. Requires a concrete formula.
double horizon(const Formula& f);

enum class ParamKind { kScale, kTime };
enum class Monotonicity { kIncreasing, kDecreasing };

/// Declared range of one PSTL parameter. `monotonicity` is the direction in
/// which robustness of the induced formula moves as the parameter grows.
struct ParameterSpec {
  std::string name;
  ParamKind kind = ParamKind::kScale;
  double lower = 0.0;
  double upper = 1.0;
  std::optional<Monotonicity> monotonicity;
};

using Valuation = std::map<std::string, double>;

class ParametricFormula {
 public:
  /// Throws FormulaError unless every parameter of `formula` has exactly one
  /// spec, every spec is used, bounds are ordered, and kinds match usage.
  ParametricFormula(Formula formula, std::vector<ParameterSpec> params);

  const Formula& formula() const { return formula_; }
  const std::vector<ParameterSpec>& params() const { return params_; }
  const ParameterSpec& param(std::string_view name) const;

 private:
  Formula formula_;
  std::vector<ParameterSpec> params_;
};

/// Substitutes every parameter. Throws FormulaError on missing, unknown or
/// out-of-bounds values and on induced intervals with begin >= end.
Formula instantiate(const ParametricFormula& pf, const Valuation& theta);

std::string_view to_string(ParamKind kind);
std::string_view to_string(Monotonicity m);

}  // namespace stlmine::stl
