#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stlmine/stl/formula.hpp"

namespace stlmine::stl {

/// Syntax error with a 1-based source position.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Grammar (precedence `!` > `&&` > `||`, binary operators left-associative):
///
///   phi   := pred | "!" phi | phi "&&" phi | phi "||" phi
///          | ("F"|"G") "[" bound "," bound ")" phi | "(" phi ")"
///   pred  := ident ("<" | ">=") (num | "$" ident)
///   bound := num | "$" ident
///
/// Temporal operators bind to the immediately following unary term. The
/// result may contain parameters; wrap it in a ParametricFormula to attach
/// their specs, or call parse_concrete_formula to reject them.
Formula parse_formula(std::string_view text);

/// parse_formula followed by a check that no `$` parameter remains.
Formula parse_concrete_formula(std::string_view text);

ParametricFormula parse_parametric_formula(std::string_view text, std::vector<ParameterSpec> params);

}  // namespace stlmine::stl
