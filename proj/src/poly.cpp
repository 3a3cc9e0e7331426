#include "maxsusy/poly.hpp"

#include <algorithm>
#include <cmath>

#include "maxsusy/errors.hpp"

namespace maxsusy {

int Monomial::degree() const {
  int d = 0;
  for (auto e : exp) d += e;
  return d;
}

bool Monomial::is_one() const {
  for (auto e : exp)
    if (e) return false;
  return true;
}

bool Monomial::divides(const Monomial& other) const {
  for (int i = 0; i < kMaxVars; ++i)
    if (exp[i] > other.exp[i]) return false;
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) {
    int s = a.exp[i] + b.exp[i];
    if (s > 255) throw Error(ErrorKind::InvalidInput, "exponent overflow (>255)");
    r.exp[i] = static_cast<std::uint8_t>(s);
  }
  return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) r.exp[i] = static_cast<std::uint8_t>(a.exp[i] - b.exp[i]);
  return r;
}

Poly::Poly(const Rational& c) {
  if (!c.is_zero()) terms_.push_back({Monomial{}, c});
}

Poly Poly::variable(int index) {
  if (index < 0 || index >= kMaxVars) throw Error(ErrorKind::InvalidInput, "variable index out of range");
  Monomial m;
  m.exp[index] = 1;
  return Poly(std::vector<Term>{{m, Rational(1)}});
}

Poly Poly::monomial(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return Poly();
  return Poly(std::vector<Term>{{m, c}});
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.mono < b.mono; });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().mono == t.mono)
      out.back().coeff += t.coeff;
    else
      out.push_back(std::move(t));
    if (out.back().coeff.is_zero()) out.pop_back();
  }
  return Poly(std::move(out));
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

Rational Poly::constant_value() const {
  if (!terms_.empty() && terms_.front().mono.is_one()) return terms_.front().coeff;
  return Rational(0);
}

int Poly::degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

int Poly::degree_in(int var) const {
  int d = 0;
  for (const auto& t : terms_) d = std::max<int>(d, t.mono.exp[var]);
  return d;
}

bool Poly::depends_on(int var) const { return degree_in(var) > 0; }

std::vector<Term> Poly::merge(const std::vector<Term>& a, const std::vector<Term>& b,
                              bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].mono < b[j].mono)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].mono < a[i].mono) {
      out.push_back(subtract ? Term{b[j].mono, -b[j].coeff} : b[j]);
      ++j;
    } else {
      Rational c = subtract ? a[i].coeff - b[j].coeff : a[i].coeff + b[j].coeff;
      if (!c.is_zero()) out.push_back({a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

Poly Poly::operator-() const {
  std::vector<Term> t = terms_;
  for (auto& x : t) x.coeff = -x.coeff;
  return Poly(std::move(t));
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return *this = o;
  terms_ = merge(terms_, o.terms_, false);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge(terms_, o.terms_, true);
  return *this;
}

Poly Poly::scaled(const Rational& c) const {
  if (c.is_zero()) return Poly();
  std::vector<Term> t = terms_;
  for (auto& x : t) x.coeff *= c;
  return Poly(std::move(t));
}

Poly Poly::times_term(const Monomial& m, const Rational& c) const {
  if (c.is_zero()) return Poly();
  std::vector<Term> t;
  t.reserve(terms_.size());
  // Multiplication by a monomial preserves lexicographic order.
  for (const auto& x : terms_) t.push_back({x.mono * m, x.coeff * c});
  return Poly(std::move(t));
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  const Poly& small = a.size() <= b.size() ? a : b;
  const Poly& large = a.size() <= b.size() ? b : a;
  if (small.size() == 1) return large.times_term(small.terms_[0].mono, small.terms_[0].coeff);
  // Pairwise tree merge of the sorted partial products.
  std::vector<std::vector<Term>> parts;
  parts.reserve(small.size());
  for (const auto& t : small.terms_) parts.push_back(large.times_term(t.mono, t.coeff).terms_);
  while (parts.size() > 1) {
    std::vector<std::vector<Term>> next;
    next.reserve((parts.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < parts.size(); i += 2)
      next.push_back(Poly::merge(parts[i], parts[i + 1], false));
    if (parts.size() % 2) next.push_back(std::move(parts.back()));
    parts = std::move(next);
  }
  return Poly(std::move(parts[0]));
}

Poly Poly::pow(unsigned e) const {
  Poly r(Rational(1)), b = *this;
  while (e) {
    if (e & 1u) r = r * b;
    e >>= 1u;
    if (e) b = b * b;
  }
  return r;
}

Poly Poly::derivative(int var) const {
  std::vector<Term> t;
  for (const auto& x : terms_) {
    int e = x.mono.exp[var];
    if (e == 0) continue;
    Term d = x;
    d.mono.exp[var] = static_cast<std::uint8_t>(e - 1);
    d.coeff *= Rational(e);
    t.push_back(std::move(d));
  }
  // Lowering one exponent can reorder terms, so re-sort.
  return from_terms(std::move(t));
}

std::optional<Poly> Poly::divide_exact(const Poly& f) const {
  if (f.is_zero()) throw Error(ErrorKind::DenominatorZero, "polynomial division by zero");
  if (is_zero()) return Poly();
  const Term& lf = f.leading();
  if (f.size() == 1) {
    std::vector<Term> t;
    t.reserve(terms_.size());
    Rational inv = lf.coeff.inverse();
    for (const auto& x : terms_) {
      if (!lf.mono.divides(x.mono)) return std::nullopt;
      t.push_back({x.mono / lf.mono, x.coeff * inv});
    }
    return Poly(std::move(t));
  }
  Rational inv = lf.coeff.inverse();
  Poly r = *this;
  std::vector<Term> q;
  while (!r.is_zero()) {
    const Term& lr = r.leading();
    if (!lf.mono.divides(lr.mono)) return std::nullopt;
    Monomial m = lr.mono / lf.mono;
    Rational c = lr.coeff * inv;
    r -= f.times_term(m, c);
    q.push_back({m, c});
  }
  return from_terms(std::move(q));
}

std::optional<Poly> Poly::sqrt_exact() const {
  if (is_zero()) return Poly();
  std::array<int, kMaxVars> half{};
  for (const auto& t : terms_)
    for (int i = 0; i < kMaxVars; ++i) half[i] = std::max(half[i], static_cast<int>(t.mono.exp[i]));
  const Term& lt = leading();
  Monomial root_mono;
  for (int i = 0; i < kMaxVars; ++i) {
    if (lt.mono.exp[i] % 2) return std::nullopt;
    root_mono.exp[i] = lt.mono.exp[i] / 2;
    half[i] /= 2;
  }
  auto rc = lt.coeff.sqrt();
  if (!rc) return std::nullopt;
  Term lead{root_mono, *rc};
  Poly q = monomial(lead.mono, lead.coeff);
  Poly r = *this - q * q;
  Rational inv2 = (Rational(2) * lead.coeff).inverse();
  while (!r.is_zero()) {
    const Term& lr = r.leading();
    if (!lead.mono.divides(lr.mono)) return std::nullopt;
    Monomial m = lr.mono / lead.mono;
    for (int i = 0; i < kMaxVars; ++i)
      if (m.exp[i] > half[i]) return std::nullopt;
    if (!(m < lead.mono)) return std::nullopt;
    Poly t = monomial(m, lr.coeff * inv2);
    // (q + t)^2 = q^2 + 2 q t + t^2
    r -= (q.scaled(Rational(2)) + t) * t;
    q += t;
  }
  return q;
}

std::optional<Poly> Poly::remap(std::span<const int> var_map) const {
  std::vector<Term> t;
  t.reserve(terms_.size());
  for (const auto& x : terms_) {
    Monomial m;
    for (int i = 0; i < kMaxVars; ++i) {
      if (!x.mono.exp[i]) continue;
      if (i >= static_cast<int>(var_map.size()) || var_map[i] < 0) return std::nullopt;
      m.exp[var_map[i]] = x.mono.exp[i];
    }
    t.push_back({m, x.coeff});
  }
  return from_terms(std::move(t));
}

Rational Poly::evaluate(std::span<const Rational> point) const {
  Rational sum(0);
  for (const auto& t : terms_) {
    Rational v = t.coeff;
    for (int i = 0; i < kMaxVars; ++i)
      if (t.mono.exp[i]) v *= point[i].pow(t.mono.exp[i]);
    sum += v;
  }
  return sum;
}

long double Poly::evaluate(std::span<const long double> point) const {
  long double sum = 0;
  for (const auto& t : terms_) {
    long double v = t.coeff.to_long_double();
    for (int i = 0; i < kMaxVars; ++i)
      if (t.mono.exp[i]) v *= std::pow(point[i], static_cast<long double>(t.mono.exp[i]));
    sum += v;
  }
  return sum;
}

}  // namespace maxsusy
