#include "maxsusy/rational.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <limits>

#include "maxsusy/errors.hpp"

namespace maxsusy {

namespace {

constexpr __int128 kMin64 = std::numeric_limits<std::int64_t>::min();
constexpr __int128 kMax64 = std::numeric_limits<std::int64_t>::max();

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

mpz_class to_mpz(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                            : static_cast<unsigned __int128>(v);
  mpz_class hi = static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64));
  mpz_class lo = static_cast<unsigned long>(static_cast<std::uint64_t>(u));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

bool fits64(const mpz_class& z) {
  return mpz_fits_slong_p(z.get_mpz_t()) != 0;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw Error(ErrorKind::DenominatorZero, "rational with zero denominator");
  assign_reduced(n, d);
}

Rational::Rational(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  assign_big(std::move(c));
}

void Rational::assign_reduced(__int128 n, __int128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  if (n == 0) d = 1;
  if (n >= kMin64 && n <= kMax64 && d <= kMax64) {
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
    big_.reset();
    return;
  }
  mpq_class q;
  q.get_num() = to_mpz(n);
  q.get_den() = to_mpz(d);
  big_ = std::make_shared<const mpq_class>(std::move(q));
  num_ = 0;
  den_ = 1;
}

void Rational::assign_big(mpq_class q) {
  if (fits64(q.get_num()) && fits64(q.get_den())) {
    num_ = q.get_num().get_si();
    den_ = q.get_den().get_si();
    big_.reset();
    return;
  }
  big_ = std::make_shared<const mpq_class>(std::move(q));
  num_ = 0;
  den_ = 1;
}

std::optional<Rational> Rational::parse(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) return std::nullopt;
  bool neg = false;
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  std::string body = s.substr(i);
  if (body.empty()) return std::nullopt;
  auto all_digits = [](const std::string& t) {
    if (t.empty()) return false;
    for (char c : t)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  mpq_class q;
  auto slash = body.find('/');
  auto dot = body.find('.');
  if (slash != std::string::npos) {
    std::string a = body.substr(0, slash), b = body.substr(slash + 1);
    if (!all_digits(a) || !all_digits(b)) return std::nullopt;
    mpz_class den(b);
    if (den == 0) return std::nullopt;
    q = mpq_class(mpz_class(a), den);
  } else if (dot != std::string::npos) {
    std::string a = body.substr(0, dot), b = body.substr(dot + 1);
    if (a.empty()) a = "0";
    if (!all_digits(a) || (!b.empty() && !all_digits(b))) return std::nullopt;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, b.size());
    mpz_class whole(a);
    mpz_class frac = b.empty() ? mpz_class(0) : mpz_class(b);
    q = mpq_class(whole * scale + frac, scale);
  } else {
    if (!all_digits(body)) return std::nullopt;
    q = mpq_class(mpz_class(body));
  }
  q.canonicalize();
  if (neg) q = -q;
  return Rational(q);
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

Rational Rational::operator-() const {
  if (!big_ && num_ != std::numeric_limits<std::int64_t>::min()) {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  return Rational(mpq_class(-to_mpq()));
}

Rational& Rational::operator+=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (o.num_ == 0) return *this;
    if (num_ == 0) return *this = o;
    if (den_ == 1 && o.den_ == 1) {
      std::int64_t r;
      if (!__builtin_add_overflow(num_, o.num_, &r)) {
        num_ = r;
        return *this;
      }
    }
    __int128 n = static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_;
    __int128 d = static_cast<__int128>(den_) * o.den_;
    assign_reduced(n, d);
    return *this;
  }
  assign_big(to_mpq() + o.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (num_ == 0 || o.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    if (den_ == 1 && o.den_ == 1) {
      std::int64_t r;
      if (!__builtin_mul_overflow(num_, o.num_, &r)) {
        num_ = r;
        return *this;
      }
    }
    __int128 n = static_cast<__int128>(num_) * o.num_;
    __int128 d = static_cast<__int128>(den_) * o.den_;
    assign_reduced(n, d);
    return *this;
  }
  assign_big(to_mpq() * o.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& o) { return *this *= o.inverse(); }

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (!a.big_ || !b.big_) return false;  // canonical: small never equals big
  return *a.big_ == *b.big_;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    __int128 l = static_cast<__int128>(a.num_) * b.den_;
    __int128 r = static_cast<__int128>(b.num_) * a.den_;
    return l <=> r;
  }
  int c = cmp(a.to_mpq(), b.to_mpq());
  return c <=> 0;
}

Rational Rational::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DenominatorZero, "inverse of zero rational");
  if (!big_) return Rational(den_, num_);
  return Rational(mpq_class(1 / *big_));
}

Rational Rational::pow(unsigned e) const {
  Rational r(1), b = *this;
  while (e) {
    if (e & 1u) r *= b;
    e >>= 1u;
    if (e) b *= b;
  }
  return r;
}

std::optional<Rational> Rational::sqrt() const {
  if (sign() < 0) return std::nullopt;
  mpz_class n = numerator(), d = denominator();
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0 || mpz_perfect_square_p(d.get_mpz_t()) == 0)
    return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return Rational(mpq_class(rn, rd));
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  mpq_class q;
  q.get_num() = static_cast<long>(num_);
  q.get_den() = static_cast<long>(den_);
  return q;
}

double Rational::to_double() const {
  if (!big_) return static_cast<double>(num_) / static_cast<double>(den_);
  return big_->get_d();
}

long double Rational::to_long_double() const {
  if (!big_) return static_cast<long double>(num_) / static_cast<long double>(den_);
  return static_cast<long double>(big_->get_d());
}

std::string Rational::str() const {
  if (!big_) {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }
  return big_->get_str();
}

mpz_class Rational::numerator() const {
  if (big_) return big_->get_num();
  return mpz_class(static_cast<long>(num_));
}

mpz_class Rational::denominator() const {
  if (big_) return big_->get_den();
  return mpz_class(static_cast<long>(den_));
}

std::optional<std::uint64_t> Rational::mod(std::uint64_t p) const {
  mpz_class n = numerator(), d = denominator(), pp;
  mpz_set_ui(pp.get_mpz_t(), p);
  mpz_class dm = d % pp;
  if (dm == 0) return std::nullopt;
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), dm.get_mpz_t(), pp.get_mpz_t());
  mpz_class r = (n * inv) % pp;
  if (r < 0) r += pp;
  return static_cast<std::uint64_t>(mpz_get_ui(r.get_mpz_t()));
}

std::size_t Rational::hash() const {
  if (!big_) {
    std::size_t h = std::hash<std::int64_t>{}(num_);
    return h ^ (std::hash<std::int64_t>{}(den_) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }
  return std::hash<std::string>{}(big_->get_str());
}

Rational Rational::gcd(const Rational& a, const Rational& b) {
  // gcd(p/q, r/s) = gcd(p, r) / lcm(q, s) for reduced fractions.
  mpz_class g, l;
  mpz_class an = a.numerator(), bn = b.numerator();
  mpz_gcd(g.get_mpz_t(), an.get_mpz_t(), bn.get_mpz_t());
  mpz_class ad = a.denominator(), bd = b.denominator();
  mpz_lcm(l.get_mpz_t(), ad.get_mpz_t(), bd.get_mpz_t());
  return Rational(mpq_class(g, l));
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MixedChart: return "MixedChart";
    case ErrorKind::UnregisteredDenominator: return "UnregisteredDenominator";
    case ErrorKind::DenominatorZero: return "DenominatorZero";
    case ErrorKind::TrigInExactMode: return "TrigInExactMode";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::NotASquare: return "NotASquare";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::IllegalDenominator: return "IllegalDenominator";
    case ErrorKind::IllegalFrequency: return "IllegalFrequency";
    case ErrorKind::BadSignature: return "BadSignature";
    case ErrorKind::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::NonUniqueSolution: return "NonUniqueSolution";
    case ErrorKind::BasisMismatch: return "BasisMismatch";
    case ErrorKind::DegreeZero: return "DegreeZero";
    case ErrorKind::FrameBasis: return "FrameBasis";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::SingularCoframe: return "SingularCoframe";
    case ErrorKind::NoAdmissiblePoint: return "NoAdmissiblePoint";
    case ErrorKind::DegenerateA: return "DegenerateA";
    case ErrorKind::IrrationalFlux: return "IrrationalFlux";
    case ErrorKind::WrongSign: return "WrongSign";
    case ErrorKind::IrrationalFrequency: return "IrrationalFrequency";
    case ErrorKind::ZeroInput: return "ZeroInput";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::NotSpacelike: return "NotSpacelike";
    case ErrorKind::TimelikeFiber: return "TimelikeFiber";
    case ErrorKind::NonAdaptedCoframe: return "NonAdaptedCoframe";
    case ErrorKind::FluxNotClosed: return "FluxNotClosed";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace maxsusy
