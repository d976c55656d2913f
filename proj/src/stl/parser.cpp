#include "stlmine/stl/parser.hpp"

#include <cctype>
#include <cmath>

#include "stlmine/common/number_format.hpp"

namespace stlmine::stl {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " +
                         message),
      line_(line),
      column_(column) {}

namespace {

enum class Tok {
  kIdent,
  kNumber,
  kParam,
  kLParen,
  kRParen,
  kLBracket,
  kRBracket,
  kComma,
  kBang,
  kAnd,
  kOr,
  kLess,
  kGreaterEqual,
  kBadComparator,
  kEnd,
};

struct Token {
  Tok kind;
  std::string text;
  double number = 0.0;
  std::size_t line = 1;
  std::size_t column = 1;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.line = line_;
      t.column = col_;
      if (pos_ >= src_.size()) {
        t.kind = Tok::kEnd;
        out.push_back(t);
        return out;
      }
      const char c = src_[pos_];
      const char n = pos_ + 1 < src_.size() ? src_[pos_ + 1] : '\0';
      if (ident_start(c)) {
        t.kind = Tok::kIdent;
        t.text = take_while(ident_char);
      } else if (c == '$') {
        advance(1);
        if (pos_ >= src_.size() || !ident_start(src_[pos_])) {
          throw ParseError("expected parameter name after '$'", line_, col_);
        }
        t.kind = Tok::kParam;
        t.text = take_while(ident_char);
      } else if (digit(c) || c == '.' || ((c == '-' || c == '+') && (digit(n) || n == '.'))) {
        t.kind = Tok::kNumber;
        t.text = lex_number();
        auto v = parse_number(t.text);
        if (!v || !std::isfinite(*v)) throw ParseError("malformed number '" + t.text + "'", t.line, t.column);
        t.number = *v;
      } else if (c == '&' && n == '&') {
        t.kind = Tok::kAnd;
        t.text = "&&";
        advance(2);
      } else if (c == '|' && n == '|') {
        t.kind = Tok::kOr;
        t.text = "||";
        advance(2);
      } else if (c == '>' && n == '=') {
        t.kind = Tok::kGreaterEqual;
        t.text = ">=";
        advance(2);
      } else if (c == '<' && n == '=') {
        t.kind = Tok::kBadComparator;
        t.text = "<=";
        advance(2);
      } else if ((c == '=' || c == '!') && n == '=') {
        t.kind = Tok::kBadComparator;
        t.text = std::string{c, n};
        advance(2);
      } else {
        switch (c) {
          case '<': t.kind = Tok::kLess; break;
          case '>': t.kind = Tok::kBadComparator; break;
          case '=': t.kind = Tok::kBadComparator; break;
          case '(': t.kind = Tok::kLParen; break;
          case ')': t.kind = Tok::kRParen; break;
          case '[': t.kind = Tok::kLBracket; break;
          case ']': t.kind = Tok::kRBracket; break;
          case ',': t.kind = Tok::kComma; break;
          case '!': t.kind = Tok::kBang; break;
          default: throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
        }
        t.text = std::string(1, c);
        advance(1);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  void advance(std::size_t count) {
    for (std::size_t i = 0; i < count && pos_ < src_.size(); ++i, ++pos_) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance(1);
  }

  template <typename Pred>
  std::string take_while(Pred pred) {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && pred(src_[pos_])) advance(1);
    return std::string(src_.substr(start, pos_ - start));
  }

  std::string lex_number() {
    const std::size_t start = pos_;
    if (src_[pos_] == '-' || src_[pos_] == '+') advance(1);
    while (pos_ < src_.size() && (digit(src_[pos_]) || src_[pos_] == '.')) advance(1);
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      advance(1);
      if (pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) advance(1);
      while (pos_ < src_.size() && digit(src_[pos_])) advance(1);
    }
    return std::string(src_.substr(start, pos_ - start));
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Formula parse() {
    Formula f = parse_or();
    if (peek().kind != Tok::kEnd) fail("unexpected '" + peek().text + "' after formula");
    return f;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }

  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const { fail_at(peek(), msg); }

  [[noreturn]] static void fail_at(const Token& t, const std::string& msg) {
    throw ParseError(msg, t.line, t.column);
  }

  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) {
      fail(std::string("expected ") + what + (peek().kind == Tok::kEnd ? " but reached end of input"
                                                                       : ", found '" + peek().text + "'"));
    }
    return next();
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    while (peek().kind == Tok::kOr) {
      next();
      lhs = disjunction(lhs, parse_and());
    }
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_unary();
    while (peek().kind == Tok::kAnd) {
      next();
      lhs = conjunction(lhs, parse_unary());
    }
    return lhs;
  }

  Formula parse_unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::kBang:
        next();
        return negation(parse_unary());
      case Tok::kLParen: {
        next();
        Formula inner = parse_or();
        expect(Tok::kRParen, "')'");
        return inner;
      }
      case Tok::kIdent:
        if ((t.text == "F" || t.text == "G") && peek(1).kind == Tok::kLBracket) return parse_temporal();
        return parse_predicate();
      case Tok::kEnd:
        fail("expected a formula but reached end of input");
      default:
        fail("expected a formula, found '" + t.text + "'");
    }
  }

  Term parse_bound() {
    const Token& t = peek();
    if (t.kind == Tok::kNumber) return next().number;
    if (t.kind == Tok::kParam) return ParamRef{next().text};
    fail("expected a number or $parameter in interval");
  }

  Formula parse_temporal() {
    const Token& op = next();
    const Token& open = expect(Tok::kLBracket, "'['");
    Term begin = parse_bound();
    expect(Tok::kComma, "','");
    Term end = parse_bound();
    if (peek().kind == Tok::kRBracket) fail("intervals are half-open [a,b); expected ')'");
    expect(Tok::kRParen, "')' closing the interval");
    const double* a = std::get_if<double>(&begin);
    const double* b = std::get_if<double>(&end);
    if (a && *a < 0.0) fail_at(open, "interval begin must be non-negative");
    if (a && b && !(*a < *b)) {
      fail_at(open, "malformed interval [" + format_number(*a) + "," + format_number(*b) + "): need begin < end");
    }
    Formula child = parse_unary();
    return op.text == "F" ? eventually(std::move(begin), std::move(end), std::move(child))
                          : always(std::move(begin), std::move(end), std::move(child));
  }

  Formula parse_predicate() {
    const Token& name = next();
    const Token& cmp_tok = peek();
    Comparator cmp;
    if (cmp_tok.kind == Tok::kLess) {
      cmp = Comparator::kLess;
    } else if (cmp_tok.kind == Tok::kGreaterEqual) {
      cmp = Comparator::kGreaterEqual;
    } else if (cmp_tok.kind == Tok::kBadComparator) {
      fail("unknown comparator '" + cmp_tok.text + "' (only '<' and '>=' are supported)");
    } else {
      fail("expected comparator '<' or '>=' after channel '" + name.text + "'");
    }
    next();
    const Token& rhs = peek();
    if (rhs.kind == Tok::kNumber) return predicate(name.text, cmp, next().number);
    if (rhs.kind == Tok::kParam) return predicate(name.text, cmp, ParamRef{next().text});
    fail("expected a number or $parameter after comparator");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(Lexer(text).run()).parse(); }

Formula parse_concrete_formula(std::string_view text) {
  Formula f = parse_formula(text);
  auto names = parameter_names(f);
  if (!names.empty()) throw FormulaError("unbound parameter $" + names.front());
  return f;
}

ParametricFormula parse_parametric_formula(std::string_view text, std::vector<ParameterSpec> params) {
  return ParametricFormula(parse_formula(text), std::move(params));
}

}  // namespace stlmine::stl
