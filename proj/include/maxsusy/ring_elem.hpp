#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "maxsusy/chart.hpp"
#include "maxsusy/poly.hpp"
#include "maxsusy/rational.hpp"

namespace maxsusy {

// One frequency slot of the Fourier layer: cos_part * cos(k w0 t) +
// sin_part * sin(k w0 t), where t is the chart's periodic variable.
struct Harmonic {
  int k = 0;
  Poly cos_part;
  Poly sin_part;  // always zero for k == 0
  friend bool operator==(const Harmonic&, const Harmonic&) = default;
};

// Exact scalar function on a chart:
//
//   (sum_k  c_k(x) cos(k w0 t) + s_k(x) sin(k w0 t)) / prod_j f_j(x)^{e_j}
//
// with the f_j the chart's registered denominator factors. The
// representation is canonical: harmonics sorted by k with no zero slots,
// and no f_j with e_j > 0 divides every numerator polynomial. Zero has no
// harmonics and no denominator. An element without a chart is a bare
// rational constant that combines with elements of any chart.
class RingElem {
 public:
  RingElem() = default;
  RingElem(const Rational& c);  // NOLINT(implicit)
  RingElem(int c) : RingElem(Rational(c)) {}  // NOLINT(implicit)
  RingElem(ChartPtr chart, const Rational& c);
  RingElem(ChartPtr chart, const Poly& p);

  static RingElem variable(const ChartPtr& chart, int index);
  // 1 / f_j
  static RingElem inverse_factor(const ChartPtr& chart, int factor);
  // cos(k w0 t) or sin(k w0 t); negative k allowed.
  static RingElem cos_harmonic(const ChartPtr& chart, int k);
  static RingElem sin_harmonic(const ChartPtr& chart, int k);
  static RingElem from_parts(ChartPtr chart, std::vector<Harmonic> numerator,
                             std::vector<int> denominator_powers);

  const ChartPtr& chart() const { return chart_; }
  const std::vector<Harmonic>& numerator() const { return num_; }
  // Power of each registered factor in the denominator (empty means none).
  const std::vector<int>& denominator() const { return den_; }

  bool is_zero() const { return num_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;  // requires is_constant()
  bool has_fourier() const;
  bool has_denominator() const { return !den_.empty(); }
  bool is_polynomial() const { return !has_fourier() && !has_denominator(); }
  // Numerator as a plain polynomial; requires no Fourier terms.
  Poly numerator_poly() const;

  // Nonzero rational times a product of integer powers of registered factors.
  bool is_unit() const;
  RingElem inverse() const;  // throws NotAUnit
  // Exact square root with positive leading coefficient (no Fourier terms).
  RingElem sqrt() const;     // throws NotASquare

  RingElem operator-() const;
  RingElem& operator+=(const RingElem& o);
  RingElem& operator-=(const RingElem& o);
  RingElem& operator*=(const RingElem& o);
  friend RingElem operator+(RingElem a, const RingElem& b) { return a += b; }
  friend RingElem operator-(RingElem a, const RingElem& b) { return a -= b; }
  friend RingElem operator*(const RingElem& a, const RingElem& b);
  // Division by a unit.
  friend RingElem operator/(const RingElem& a, const RingElem& b) { return a * b.inverse(); }
  RingElem pow(unsigned e) const;

  RingElem derivative(int var) const;
  bool depends_on(int var) const;

  Rational evaluate(std::span<const Rational> point) const;
  long double evaluate(std::span<const long double> point) const;
  Rational evaluate(const std::map<std::string, Rational>& point) const;

  // Moves the element to another chart. var_map[i] is the target index of
  // source variable i, or -1 if the variable must not occur.
  RingElem transfer(const ChartPtr& target, std::span<const int> var_map) const;

  friend bool operator==(const RingElem& a, const RingElem& b);

  // Calls f for every coefficient of the expanded numerator after
  // multiplying by `common` (a denominator power vector that dominates this
  // element's). Keys are (k, is_sin, monomial).
  void for_each_coefficient(std::span<const int> common,
                            const std::function<void(int, bool, const Monomial&,
                                                     const Rational&)>& f) const;

 private:
  void canonicalize();
  const Chart* chart_or_null() const { return chart_.get(); }
  static ChartPtr join_charts(const RingElem& a, const RingElem& b);

  ChartPtr chart_;
  std::vector<Harmonic> num_;
  std::vector<int> den_;
};

bool is_identically_zero(const RingElem& a);

}  // namespace maxsusy
