#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "maxsusy/rational.hpp"

namespace maxsusy {

inline constexpr int kMaxVars = 16;

// Dense exponent vector. Variables beyond the owning chart's dimension are
// always zero, so monomials from charts of different sizes still compare.
struct Monomial {
  std::array<std::uint8_t, kMaxVars> exp{};

  int degree() const;
  bool is_one() const;
  bool divides(const Monomial& other) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial& a, const Monomial& b) { return a.exp <=> b.exp; }
};

Monomial operator*(const Monomial& a, const Monomial& b);
Monomial operator/(const Monomial& a, const Monomial& b);  // requires b | a

struct Term {
  Monomial mono;
  Rational coeff;
  friend bool operator==(const Term&, const Term&) = default;
};

// Sparse multivariate polynomial over Q. Terms are kept sorted ascending by
// lexicographic exponent order (variable 0 most significant) with no zero
// coefficients, so structural equality is polynomial equality.
class Poly {
 public:
  Poly() = default;
  Poly(const Rational& c);  // NOLINT(implicit)
  static Poly variable(int index);
  static Poly monomial(const Monomial& m, const Rational& c);
  static Poly from_terms(std::vector<Term> terms);  // any order, duplicates merged

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;  // coefficient of the unit monomial
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  const Term& leading() const { return terms_.back(); }
  int degree() const;
  int degree_in(int var) const;
  bool depends_on(int var) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(const Rational& c) const;
  Poly times_term(const Monomial& m, const Rational& c) const;
  Poly pow(unsigned e) const;

  Poly derivative(int var) const;

  // Exact quotient p / f, or nullopt if f does not divide p.
  std::optional<Poly> divide_exact(const Poly& f) const;
  // q with q*q == p and positive leading coefficient, if one exists.
  std::optional<Poly> sqrt_exact() const;

  // Renames variables: var_map[i] is the new index of variable i, or -1 if
  // variable i must not occur (returns nullopt when it does).
  std::optional<Poly> remap(std::span<const int> var_map) const;

  Rational evaluate(std::span<const Rational> point) const;
  long double evaluate(std::span<const long double> point) const;

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  explicit Poly(std::vector<Term> sorted) : terms_(std::move(sorted)) {}
  static std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b,
                                 bool subtract);

  std::vector<Term> terms_;
};

}  // namespace maxsusy
