#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace maxsusy {

// Exact rational number. Values whose reduced numerator and denominator fit
// in int64 are stored inline; anything larger spills to a shared immutable
// GMP rational. The representation is always reduced with a positive
// denominator, and a value that fits inline is never stored as big.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(implicit)
  Rational(int n) : num_(n), den_(1) {}            // NOLINT(implicit)
  Rational(std::int64_t n, std::int64_t d);
  explicit Rational(const mpq_class& q);

  // Accepts "p", "-p", "p/q" and finite decimals such as "0.25" or "-1.5".
  static std::optional<Rational> parse(std::string_view text);

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const;
  int sign() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  Rational abs() const { return sign() < 0 ? -*this : *this; }
  Rational inverse() const;
  Rational pow(unsigned e) const;

  // Exact square root when this is the square of a rational.
  std::optional<Rational> sqrt() const;

  mpq_class to_mpq() const;
  double to_double() const;
  long double to_long_double() const;
  std::string str() const;

  // Numerator and denominator as GMP integers.
  mpz_class numerator() const;
  mpz_class denominator() const;

  // Residue modulo a prime p, or nullopt when p divides the denominator.
  std::optional<std::uint64_t> mod(std::uint64_t p) const;

  std::size_t hash() const;

  static Rational gcd(const Rational& a, const Rational& b);

 private:
  void assign_reduced(__int128 n, __int128 d);
  void assign_big(mpq_class q);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

}  // namespace maxsusy
