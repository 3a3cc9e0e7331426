#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <tuple>

#include "generators.hpp"
#include "maxsusy/errors.hpp"
#include "maxsusy/exprlang.hpp"
#include "maxsusy/ring_elem.hpp"

using namespace maxsusy;
using maxsusy::testing::random_elem;
using maxsusy::testing::Rng;

namespace {

ChartPtr plain_chart() { return make_chart({"x1", "x2", "x3"}); }

ChartPtr cw_chart() {
  std::vector<std::string> vars = {"xp", "xm"};
  for (int i = 1; i <= 9; ++i) vars.push_back("x" + std::to_string(i));
  return make_chart(vars, {}, PeriodicVariable{1, Rational(1, 2)});
}

ChartPtr rational_chart() {
  // z and 1 + y1^2 + y2^2 registered; t periodic with base frequency 1
  auto z = Poly::variable(0);
  auto r = Poly(Rational(1)) + Poly::variable(1) * Poly::variable(1) +
           Poly::variable(2) * Poly::variable(2);
  return make_chart({"z", "y1", "y2", "t"}, {z, r}, PeriodicVariable{3, Rational(1)});
}

RingElem P(const char* s, const ChartPtr& c) { return expr::parse(s, c); }

}  // namespace

TEST_CASE("rational arithmetic stays reduced and spills to big integers") {
  Rational a(6, -4);
  CHECK(a == Rational(-3, 2));
  CHECK(a.str() == "-3/2");
  Rational big = Rational(std::int64_t{1} << 62) * Rational(std::int64_t{1} << 62);
  CHECK(big / Rational(std::int64_t{1} << 62) == Rational(std::int64_t{1} << 62));
  CHECK(Rational::parse("0.25") == Rational(1, 4));
  CHECK(Rational::parse("-7/21") == Rational(-1, 3));
  CHECK(!Rational::parse("1/0"));
  CHECK(Rational(9, 4).sqrt() == Rational(3, 2));
  CHECK(!Rational(3, 4).sqrt());
  CHECK(Rational(3, 4).mod(7) == std::optional<std::uint64_t>{(3 * 2) % 7});
}

TEST_CASE("ring_add_mul examples") {
  auto c = plain_chart();
  CHECK(P("(x1 + 1)*(x1 - 1)", c) == P("x1^2 - 1", c));

  auto cw = cw_chart();
  CHECK(P("cos(1/2*xm)*cos(1/2*xm)", cw) == P("1/2 + 1/2*cos(xm)", cw));

  auto rc = rational_chart();
  RingElem sum = P("1/z", rc) + P("1/z^2", rc);
  CHECK(sum == P("(z + 1)/z^2", rc));
  CHECK(sum.denominator() == std::vector<int>{2, 0});
}

TEST_CASE("mixed charts are rejected") {
  auto a = RingElem::variable(plain_chart(), 0);
  auto b = RingElem::variable(make_chart({"u", "v"}), 0);
  CHECK_THROWS_AS(a + b, Error);
  try {
    (void)(a * b);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MixedChart);
  }
}

TEST_CASE("differentiate examples") {
  auto c = plain_chart();
  CHECK(P("x1^2*x2", c).derivative(0) == P("2*x1*x2", c));
  auto rc = rational_chart();
  CHECK(P("1/z^2", rc).derivative(0) == P("-2/z^3", rc));
  CHECK(P("1/(1 + y1^2 + y2^2)", rc).derivative(1) == P("-2*y1/(1 + y1^2 + y2^2)^2", rc));
  auto cw = cw_chart();
  CHECK(P("sin(1/2*xm)", cw).derivative(1) == P("1/2*cos(1/2*xm)", cw));
  CHECK(P("cos(xm)", cw).derivative(1) == P("-sin(xm)", cw));
}

TEST_CASE("is_identically_zero examples") {
  auto cw = cw_chart();
  CHECK(is_identically_zero(P("cos(1/2*xm)^2 + sin(1/2*xm)^2 - 1", cw)));
  CHECK_FALSE(is_identically_zero(P("x1 - x2", cw)));
  auto rc = rational_chart();
  CHECK(is_identically_zero(P("(z^2 - z^2)/z^4", rc)));
  CHECK(is_identically_zero(P("z/z - 1", rc)));
}

TEST_CASE("evaluate examples") {
  auto c = plain_chart();
  CHECK(P("x1^2 - 1", c).evaluate(std::map<std::string, Rational>{{"x1", 3}, {"x2", 0}, {"x3", 0}}) ==
        Rational(8));
  auto rc = rational_chart();
  std::vector<Rational> origin(4, Rational(0));
  try {
    (void)P("1/z", rc).evaluate(std::span<const Rational>(origin));
    FAIL("expected DenominatorZero");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DenominatorZero);
  }
  auto cw = cw_chart();
  std::vector<Rational> pt(11, Rational(0));
  CHECK(P("x1 + cos(1/2*xm)", cw).evaluate(std::span<const Rational>(pt)) == Rational(1));
  pt[1] = Rational(1);
  try {
    (void)P("x1 + cos(1/2*xm)", cw).evaluate(std::span<const Rational>(pt));
    FAIL("expected TrigInExactMode");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TrigInExactMode);
  }
  std::vector<long double> fp(11, 0.0L);
  fp[1] = 2.0L;
  CHECK(P("cos(1/2*xm)", cw).evaluate(std::span<const long double>(fp)) ==
        doctest::Approx(std::cos(1.0)).epsilon(1e-15));
}

TEST_CASE("units, inverses and square roots") {
  auto rc = rational_chart();
  RingElem u = P("3*z^2*(1 + y1^2 + y2^2)", rc);
  CHECK(u.is_unit());
  CHECK(u * u.inverse() == RingElem(rc, Rational(1)));
  CHECK_FALSE(P("z + 1", rc).is_unit());
  CHECK_THROWS_AS(P("z + 1", rc).inverse(), Error);
  RingElem sq = P("(z + 2*y1)^2/(1 + y1^2 + y2^2)^2", rc);
  CHECK(sq.sqrt() * sq.sqrt() == sq);
  CHECK_THROWS_AS(P("z", rc).sqrt(), Error);
}

TEST_CASE("ring axioms hold on random triples") {
  Rng rng(1234);
  std::vector<ChartPtr> charts = {plain_chart(), cw_chart(), rational_chart()};
  for (int iter = 0; iter < 1000; ++iter) {
    const auto& c = charts[iter % charts.size()];
    RingElem a = random_elem(rng, c), b = random_elem(rng, c), d = random_elem(rng, c);
    REQUIRE((a + b) + d == a + (b + d));
    REQUIRE((a * b) * d == a * (b * d));
    REQUIRE(a * (b + d) == a * b + a * d);
    REQUIRE(a + b == b + a);
    REQUIRE(a * b == b * a);
    REQUIRE(is_identically_zero(a - a));
  }
}

TEST_CASE("mixed partial derivatives commute") {
  Rng rng(99);
  auto c = rational_chart();
  for (int iter = 0; iter < 200; ++iter) {
    RingElem a = random_elem(rng, c);
    int i = iter % 4, j = (iter / 4) % 4;
    REQUIRE(a.derivative(i).derivative(j) == a.derivative(j).derivative(i));
  }
}

TEST_CASE("derivative obeys the Leibniz rule") {
  Rng rng(7);
  auto c = rational_chart();
  for (int iter = 0; iter < 200; ++iter) {
    RingElem a = random_elem(rng, c), b = random_elem(rng, c);
    int i = iter % 4;
    REQUIRE((a * b).derivative(i) == a.derivative(i) * b + a * b.derivative(i));
  }
}

TEST_CASE("evaluate is a ring homomorphism") {
  Rng rng(5);
  auto c = rational_chart();
  std::uniform_int_distribution<int> coord(-4, 4);
  for (int iter = 0; iter < 300; ++iter) {
    RingElem a = random_elem(rng, c), b = random_elem(rng, c);
    std::vector<Rational> pt = {Rational(coord(rng) == 0 ? 1 : coord(rng), 3),
                                Rational(coord(rng), 2), Rational(coord(rng), 5), Rational(0)};
    if (pt[0].is_zero()) pt[0] = Rational(1);
    std::span<const Rational> s(pt);
    REQUIRE((a * b).evaluate(s) == a.evaluate(s) * b.evaluate(s));
    REQUIRE((a + b).evaluate(s) == a.evaluate(s) + b.evaluate(s));
    // float mode agrees with exact mode
    std::vector<long double> fp;
    for (auto& q : pt) fp.push_back(q.to_long_double());
    long double ex = (a * b).evaluate(s).to_long_double();
    REQUIRE((a * b).evaluate(std::span<const long double>(fp)) ==
            doctest::Approx(static_cast<double>(ex)).epsilon(1e-12));
  }
}

TEST_CASE("transfer renames variables and factors") {
  auto src = rational_chart();
  auto dst = make_chart({"t", "y2", "y1", "z"},
                        {Poly::variable(3),
                         Poly(Rational(1)) + Poly::variable(1).pow(2) + Poly::variable(2).pow(2)},
                        PeriodicVariable{0, Rational(1)});
  std::vector<int> map = {3, 2, 1, 0};
  RingElem a = P("y1*cos(t)/(z*(1 + y1^2 + y2^2))", src);
  RingElem b = a.transfer(dst, map);
  CHECK(expr::emit(b) == expr::emit(P("y1*cos(t)/(z*(1 + y1^2 + y2^2))", dst)));
}

TEST_CASE("coefficients over a common denominator") {
  auto c = rational_chart();
  RingElem a = P("(2*y1*cos(t) - sin(2*t))/z", c);
  std::vector<std::tuple<int, bool, std::string, Rational>> got;
  std::vector<int> common = {2, 1};
  a.for_each_coefficient(common, [&](int k, bool is_sin, const Monomial& m, const Rational& q) {
    got.emplace_back(k, is_sin, expr::emit(Poly::from_terms({{m, Rational(1)}}), c->variables()), q);
  });
  // numerator times z (1 + y1^2 + y2^2)
  std::sort(got.begin(), got.end());
  std::vector<std::tuple<int, bool, std::string, Rational>> want = {
      {1, false, "z*y1", Rational(2)},      {1, false, "z*y1*y2^2", Rational(2)},
      {1, false, "z*y1^3", Rational(2)},    {2, true, "z*y1^2", Rational(-1)},
      {2, true, "z*y2^2", Rational(-1)},    {2, true, "z", Rational(-1)},
  };
  std::sort(want.begin(), want.end());
  CHECK(got == want);

  std::vector<int> small = {0, 0};
  CHECK_THROWS_AS(a.for_each_coefficient(small, [](int, bool, const Monomial&, const Rational&) {}), Error);
}
