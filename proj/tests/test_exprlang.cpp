#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "generators.hpp"
#include "maxsusy/errors.hpp"
#include "maxsusy/exprlang.hpp"

using namespace maxsusy;

namespace {

ChartPtr cw_chart() {
  std::vector<std::string> vars = {"xp", "xm"};
  for (int i = 1; i <= 9; ++i) vars.push_back("x" + std::to_string(i));
  return make_chart(vars, {}, PeriodicVariable{1, Rational(1, 2)});
}

ChartPtr rational_chart() {
  auto z = Poly::variable(0);
  auto r = Poly(Rational(1)) + Poly::variable(1).pow(2) + Poly::variable(2).pow(2);
  return make_chart({"z", "y1", "y2", "t"}, {z, r}, PeriodicVariable{3, Rational(1, 3)});
}

ErrorKind kind_of(const char* text, const ChartPtr& c) {
  try {
    (void)expr::parse(text, c);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected a parse error for " << text);
  return ErrorKind::InvalidInput;
}

}  // namespace

TEST_CASE("parse examples") {
  auto c = cw_chart();
  RingElem five = expr::parse("2*xm^0 + 3", c);
  CHECK(five.is_constant());
  CHECK(five.constant_value() == Rational(5));

  RingElem block = expr::parse("-(x1^2 + (1/4)*x4^2)", c);
  RingElem x1 = RingElem::variable(c, 2), x4 = RingElem::variable(c, 5);
  CHECK(block == -(x1 * x1) - RingElem(Rational(1, 4)) * x4 * x4);

  CHECK(kind_of("cos((1/3)*xm)", c) == ErrorKind::IllegalFrequency);
}

TEST_CASE("precedence: power binds tighter than unary minus") {
  auto c = cw_chart();
  CHECK(expr::parse("-x1^2", c) == -(expr::parse("x1*x1", c)));
  CHECK(expr::parse("2*-x1", c) == expr::parse("-2*x1", c));
  CHECK(expr::parse("1 - 2 - 3", c) == RingElem(c, Rational(-4)));
  CHECK(expr::parse("12 / 4 / 3", c) == RingElem(c, Rational(1)));
  CHECK(expr::parse(" ( x1 +\n x2 ) * 2 ", c) == expr::parse("2*x1+2*x2", c));
  CHECK(expr::parse("0.5*x1", c) == expr::parse("1/2*x1", c));
}

TEST_CASE("parse errors carry positions and kinds") {
  auto c = cw_chart();
  try {
    (void)expr::parse("x1 +\n  * x2", c);
    FAIL("expected error");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ErrorKind::SyntaxError);
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
  CHECK(kind_of("x1 + q", c) == ErrorKind::UnknownVariable);
  CHECK(kind_of("1/x1", c) == ErrorKind::IllegalDenominator);
  CHECK(kind_of("1/(x1 - x1)", c) == ErrorKind::IllegalDenominator);
  CHECK(kind_of("x1^-1", c) == ErrorKind::SyntaxError);
  CHECK(kind_of("x1^1.5", c) == ErrorKind::SyntaxError);
  CHECK(kind_of("x1^2^2", c) == ErrorKind::SyntaxError);
  CHECK(kind_of("cos(x1)", c) == ErrorKind::IllegalFrequency);
  CHECK(kind_of("cos(xm^2)", c) == ErrorKind::IllegalFrequency);
  CHECK(kind_of("(x1", c) == ErrorKind::SyntaxError);
  CHECK(kind_of("x1 $ 2", c) == ErrorKind::SyntaxError);
  CHECK(kind_of("", c) == ErrorKind::SyntaxError);
  CHECK(kind_of("cos(xm)", make_chart({"xm"})) == ErrorKind::IllegalFrequency);
}

TEST_CASE("registered denominators parse; others are rejected") {
  auto rc = rational_chart();
  RingElem a = expr::parse("y1/(z^2*(1 + y1^2 + y2^2))", rc);
  CHECK(a.denominator() == std::vector<int>{2, 1});
  CHECK(expr::parse("1/(2*z)", rc) * RingElem(Rational(2)) * RingElem::variable(rc, 0) ==
        RingElem(rc, Rational(1)));
  CHECK(kind_of("1/(z + 1)", rc) == ErrorKind::IllegalDenominator);
  CHECK(kind_of("1/(1 + y1^2)", rc) == ErrorKind::IllegalDenominator);
}

TEST_CASE("emit examples") {
  auto c = make_chart({"x1", "x2"});
  CHECK(expr::emit(expr::parse("x1^2 - 1", c)) == "x1^2 - 1");
  CHECK(expr::emit(RingElem()) == "0");
  CHECK(expr::emit(expr::parse("-1/2*x1*x2 + 3", c)) == "-1/2*x1*x2 + 3");
  auto cw = cw_chart();
  CHECK(expr::emit(expr::parse("x1*cos(xm) - sin(1/2*xm)", cw)) == "-sin(1/2*xm) + x1*cos(xm)");
  auto rc = rational_chart();
  CHECK(expr::emit(expr::parse("1/z + 1/z^2", rc)) == "(z + 1)/z^2");
}

TEST_CASE("parse(emit(a)) == a on random elements") {
  maxsusy::testing::Rng rng(2024);
  std::vector<ChartPtr> charts = {cw_chart(), rational_chart(), make_chart({"a", "b", "c"})};
  for (int i = 0; i < 1000; ++i) {
    const auto& c = charts[i % charts.size()];
    RingElem a = maxsusy::testing::random_elem(rng, c);
    std::string text = expr::emit(a);
    REQUIRE_MESSAGE(expr::parse(text, c) == a, text);
  }
}

TEST_CASE("the AST records node kinds and spans") {
  auto ast = expr::parse_ast("x1 + 2*cos(xm)");
  CHECK(ast->kind == expr::NodeKind::Add);
  CHECK(ast->children[1]->kind == expr::NodeKind::Mul);
  CHECK(ast->children[1]->children[1]->kind == expr::NodeKind::Cos);
  CHECK(ast->children[1]->children[1]->span.column == 8);
}
