#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "maxsusy/chart.hpp"
#include "maxsusy/ring_elem.hpp"

namespace maxsusy::expr {

struct SourceSpan {
  int line = 1;
  int column = 1;
  int length = 0;
};

enum class NodeKind { Number, Variable, Add, Sub, Mul, Div, Pow, Neg, Cos, Sin };

// Syntax tree of one coefficient expression. Pow nodes keep their exponent
// in `exponent`; the single child is the base.
struct Ast {
  NodeKind kind = NodeKind::Number;
  Rational number;
  std::string name;
  unsigned exponent = 0;
  std::vector<std::unique_ptr<Ast>> children;
  SourceSpan span;
};

// Grammar (whitespace-insensitive):
//   sum     := product (('+' | '-') product)*
//   product := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' INTEGER)?
//   primary := NUMBER | IDENT | ('cos' | 'sin') '(' sum ')' | '(' sum ')'
// Throws ParseError on malformed text.
std::unique_ptr<Ast> parse_ast(std::string_view text);

// Lowers a tree onto a chart. Throws ParseError with kinds UnknownVariable,
// IllegalDenominator and IllegalFrequency.
RingElem lower(const Ast& ast, const ChartPtr& chart);

RingElem parse(std::string_view text, const ChartPtr& chart);

// Canonical text; parse(emit(a), chart) == a.
std::string emit(const RingElem& a);
std::string emit(const Poly& p, const std::vector<std::string>& variables);

}  // namespace maxsusy::expr
