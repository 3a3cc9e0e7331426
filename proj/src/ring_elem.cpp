#include "maxsusy/ring_elem.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "maxsusy/errors.hpp"

namespace maxsusy {

// ---------------------------------------------------------------- Chart

Chart::Chart(std::vector<std::string> variables, std::vector<Poly> factors,
             std::optional<PeriodicVariable> periodic)
    : variables_(std::move(variables)), periodic_(std::move(periodic)) {
  if (static_cast<int>(variables_.size()) > kMaxVars)
    throw Error(ErrorKind::InvalidInput, "chart has more than 16 variables");
  std::set<std::string> seen;
  for (const auto& v : variables_) {
    if (v.empty()) throw Error(ErrorKind::InvalidInput, "empty variable name");
    if (!seen.insert(v).second) throw Error(ErrorKind::InvalidInput, "duplicate variable " + v);
  }
  if (periodic_) {
    if (periodic_->var < 0 || periodic_->var >= dim())
      throw Error(ErrorKind::InvalidInput, "periodic variable out of range");
    if (periodic_->base_frequency.sign() <= 0)
      throw Error(ErrorKind::InvalidInput, "base frequency must be positive");
  }
  for (auto& f : factors) {
    if (f.is_constant()) throw Error(ErrorKind::InvalidInput, "denominator factor is constant");
    for (const auto& t : f.terms())
      for (int i = dim(); i < kMaxVars; ++i)
        if (t.mono.exp[i]) throw Error(ErrorKind::InvalidInput, "factor uses unknown variable");
    if (periodic_ && f.depends_on(periodic_->var))
      throw Error(ErrorKind::InvalidInput, "factor depends on the periodic variable");
    // Normalize to a lex-monic polynomial so the representation is unique.
    Poly monic = f.scaled(f.leading().coeff.inverse());
    for (const auto& g : factors_)
      if (monic.divide_exact(g) || g.divide_exact(monic))
        throw Error(ErrorKind::InvalidInput, "denominator factors must be pairwise coprime");
    factors_.push_back(std::move(monic));
  }
}

int Chart::index_of(const std::string& name) const {
  for (int i = 0; i < dim(); ++i)
    if (variables_[i] == name) return i;
  return -1;
}

int Chart::factor_index(const Poly& p) const {
  if (p.is_zero()) return -1;
  Poly monic = p.scaled(p.leading().coeff.inverse());
  for (int j = 0; j < factor_count(); ++j)
    if (factors_[j] == monic) return j;
  return -1;
}

bool Chart::same_as(const Chart& other) const {
  if (this == &other) return true;
  if (variables_ != other.variables_ || factors_ != other.factors_) return false;
  if (periodic_.has_value() != other.periodic_.has_value()) return false;
  if (periodic_ && (periodic_->var != other.periodic_->var ||
                    periodic_->base_frequency != other.periodic_->base_frequency))
    return false;
  return true;
}

// ---------------------------------------------------------------- helpers

namespace {

std::vector<Harmonic> add_harmonics(const std::vector<Harmonic>& a, const std::vector<Harmonic>& b,
                                    bool subtract) {
  std::vector<Harmonic> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  auto push = [&](Harmonic h) {
    if (!h.cos_part.is_zero() || !h.sin_part.is_zero()) out.push_back(std::move(h));
  };
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].k < b[j].k)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].k < a[i].k) {
      Harmonic h = b[j++];
      if (subtract) {
        h.cos_part = -h.cos_part;
        h.sin_part = -h.sin_part;
      }
      out.push_back(std::move(h));
    } else {
      Harmonic h{a[i].k, a[i].cos_part, a[i].sin_part};
      if (subtract) {
        h.cos_part -= b[j].cos_part;
        h.sin_part -= b[j].sin_part;
      } else {
        h.cos_part += b[j].cos_part;
        h.sin_part += b[j].sin_part;
      }
      push(std::move(h));
      ++i;
      ++j;
    }
  }
  return out;
}

std::vector<Harmonic> scale_harmonics(const std::vector<Harmonic>& a, const Poly& p) {
  std::vector<Harmonic> out;
  out.reserve(a.size());
  for (const auto& h : a) {
    Harmonic r{h.k, h.cos_part * p, h.sin_part * p};
    if (!r.cos_part.is_zero() || !r.sin_part.is_zero()) out.push_back(std::move(r));
  }
  return out;
}

void accumulate(std::map<int, Harmonic>& acc, int k, const Poly& c, const Poly& s) {
  // cos(-x) = cos x, sin(-x) = -sin x, sin 0 = 0
  Poly cc = c, ss = s;
  if (k < 0) {
    k = -k;
    ss = -ss;
  }
  if (k == 0) ss = Poly();
  if (cc.is_zero() && ss.is_zero()) return;
  auto& h = acc[k];
  h.k = k;
  h.cos_part += cc;
  h.sin_part += ss;
}

std::vector<Harmonic> multiply_harmonics(const std::vector<Harmonic>& a,
                                         const std::vector<Harmonic>& b) {
  if (a.size() == 1 && b.size() == 1 && a[0].k == 0 && b[0].k == 0) {
    Harmonic h{0, a[0].cos_part * b[0].cos_part, Poly()};
    if (h.cos_part.is_zero()) return {};
    return {std::move(h)};
  }
  std::map<int, Harmonic> acc;
  const Rational half(1, 2);
  for (const auto& x : a) {
    for (const auto& y : b) {
      int sum = x.k + y.k, diff = x.k - y.k;
      if (x.k == 0 || y.k == 0) {
        // plain products, no product-to-sum needed
        const Harmonic& z = x.k == 0 ? x : y;  // constant slot
        const Harmonic& w = x.k == 0 ? y : x;
        accumulate(acc, w.k, z.cos_part * w.cos_part, z.cos_part * w.sin_part);
        continue;
      }
      Poly cc = x.cos_part * y.cos_part;
      Poly ss = x.sin_part * y.sin_part;
      Poly cs = x.cos_part * y.sin_part;
      Poly sc = x.sin_part * y.cos_part;
      // cos a cos b = (cos(a-b) + cos(a+b)) / 2
      // sin a sin b = (cos(a-b) - cos(a+b)) / 2
      // cos a sin b = (sin(a+b) - sin(a-b)) / 2
      // sin a cos b = (sin(a+b) + sin(a-b)) / 2
      accumulate(acc, diff, (cc + ss).scaled(half), (sc - cs).scaled(half));
      accumulate(acc, sum, (cc - ss).scaled(half), (cs + sc).scaled(half));
    }
  }
  std::vector<Harmonic> out;
  for (auto& [k, h] : acc)
    if (!h.cos_part.is_zero() || !h.sin_part.is_zero()) out.push_back(std::move(h));
  return out;
}

bool all_zero(const std::vector<int>& v) {
  return std::all_of(v.begin(), v.end(), [](int e) { return e == 0; });
}

}  // namespace

// ---------------------------------------------------------------- RingElem

RingElem::RingElem(const Rational& c) {
  if (!c.is_zero()) num_.push_back({0, Poly(c), Poly()});
}

RingElem::RingElem(ChartPtr chart, const Rational& c) : chart_(std::move(chart)) {
  if (!c.is_zero()) num_.push_back({0, Poly(c), Poly()});
}

RingElem::RingElem(ChartPtr chart, const Poly& p) : chart_(std::move(chart)) {
  if (!p.is_zero()) num_.push_back({0, p, Poly()});
}

RingElem RingElem::variable(const ChartPtr& chart, int index) {
  if (!chart || index < 0 || index >= chart->dim())
    throw Error(ErrorKind::UnknownVariable, "variable index out of range");
  return RingElem(chart, Poly::variable(index));
}

RingElem RingElem::inverse_factor(const ChartPtr& chart, int factor) {
  if (!chart || factor < 0 || factor >= chart->factor_count())
    throw Error(ErrorKind::UnregisteredDenominator, "unknown denominator factor");
  std::vector<int> den(chart->factor_count(), 0);
  den[factor] = 1;
  return from_parts(chart, {{0, Poly(Rational(1)), Poly()}}, std::move(den));
}

RingElem RingElem::cos_harmonic(const ChartPtr& chart, int k) {
  if (!chart || !chart->periodic())
    throw Error(ErrorKind::IllegalFrequency, "chart has no periodic variable");
  RingElem r;
  r.chart_ = chart;
  if (k < 0) k = -k;
  r.num_.push_back({k, Poly(Rational(1)), Poly()});
  return r;
}

RingElem RingElem::sin_harmonic(const ChartPtr& chart, int k) {
  if (!chart || !chart->periodic())
    throw Error(ErrorKind::IllegalFrequency, "chart has no periodic variable");
  RingElem r;
  r.chart_ = chart;
  if (k == 0) return r;
  Rational sgn = k < 0 ? Rational(-1) : Rational(1);
  r.num_.push_back({k < 0 ? -k : k, Poly(), Poly(sgn)});
  return r;
}

RingElem RingElem::from_parts(ChartPtr chart, std::vector<Harmonic> numerator,
                              std::vector<int> denominator_powers) {
  RingElem r;
  r.chart_ = std::move(chart);
  int nf = r.chart_ ? r.chart_->factor_count() : 0;
  if (!denominator_powers.empty() && static_cast<int>(denominator_powers.size()) != nf)
    throw Error(ErrorKind::UnregisteredDenominator, "denominator refers to unregistered factor");
  for (int e : denominator_powers)
    if (e < 0) throw Error(ErrorKind::UnregisteredDenominator, "negative denominator power");
  bool fourier = false;
  std::map<int, Harmonic> acc;
  for (auto& h : numerator) {
    if (h.k != 0) fourier = true;
    accumulate(acc, h.k, h.cos_part, h.sin_part);
  }
  if (fourier && !(r.chart_ && r.chart_->periodic()))
    throw Error(ErrorKind::IllegalFrequency, "Fourier terms on a chart without periodic variable");
  for (auto& [k, h] : acc)
    if (!h.cos_part.is_zero() || !h.sin_part.is_zero()) r.num_.push_back(std::move(h));
  r.den_ = std::move(denominator_powers);
  r.canonicalize();
  return r;
}

void RingElem::canonicalize() {
  std::erase_if(num_, [](const Harmonic& h) { return h.cos_part.is_zero() && h.sin_part.is_zero(); });
  if (num_.empty() || all_zero(den_)) {
    den_.clear();
    return;
  }
  const auto& factors = chart_->factors();
  for (std::size_t j = 0; j < den_.size(); ++j) {
    while (den_[j] > 0) {
      std::vector<Harmonic> divided;
      divided.reserve(num_.size());
      bool ok = true;
      for (const auto& h : num_) {
        Harmonic q{h.k, Poly(), Poly()};
        if (!h.cos_part.is_zero()) {
          auto c = h.cos_part.divide_exact(factors[j]);
          if (!c) { ok = false; break; }
          q.cos_part = std::move(*c);
        }
        if (!h.sin_part.is_zero()) {
          auto s = h.sin_part.divide_exact(factors[j]);
          if (!s) { ok = false; break; }
          q.sin_part = std::move(*s);
        }
        divided.push_back(std::move(q));
      }
      if (!ok) break;
      num_ = std::move(divided);
      --den_[j];
    }
  }
  if (all_zero(den_)) den_.clear();
}

ChartPtr RingElem::join_charts(const RingElem& a, const RingElem& b) {
  if (!a.chart_) return b.chart_;
  if (!b.chart_ || a.chart_ == b.chart_) return a.chart_;
  if (a.chart_->same_as(*b.chart_)) return a.chart_;
  throw Error(ErrorKind::MixedChart, "operands belong to different charts");
}

bool RingElem::is_constant() const {
  return num_.empty() || (num_.size() == 1 && num_[0].k == 0 && den_.empty() &&
                          num_[0].cos_part.is_constant());
}

Rational RingElem::constant_value() const {
  if (num_.empty()) return Rational(0);
  if (!is_constant()) throw Error(ErrorKind::InvalidInput, "element is not constant");
  return num_[0].cos_part.constant_value();
}

bool RingElem::has_fourier() const {
  return std::any_of(num_.begin(), num_.end(), [](const Harmonic& h) { return h.k != 0; });
}

Poly RingElem::numerator_poly() const {
  if (has_fourier()) throw Error(ErrorKind::InvalidInput, "element has Fourier terms");
  return num_.empty() ? Poly() : num_[0].cos_part;
}

bool RingElem::is_unit() const {
  if (num_.size() != 1 || num_[0].k != 0) return false;
  Poly p = num_[0].cos_part;
  if (chart_) {
    for (const auto& f : chart_->factors()) {
      while (!p.is_constant()) {
        auto q = p.divide_exact(f);
        if (!q) break;
        p = std::move(*q);
      }
    }
  }
  return p.is_constant() && !p.is_zero();
}

RingElem RingElem::inverse() const {
  if (num_.size() != 1 || num_[0].k != 0)
    throw Error(ErrorKind::NotAUnit, "element is not a unit");
  Poly p = num_[0].cos_part;
  int nf = chart_ ? chart_->factor_count() : 0;
  std::vector<int> num_powers(nf, 0);
  for (int j = 0; j < nf; ++j) {
    while (!p.is_constant()) {
      auto q = p.divide_exact(chart_->factors()[j]);
      if (!q) break;
      p = std::move(*q);
      ++num_powers[j];
    }
  }
  if (!p.is_constant() || p.is_zero()) throw Error(ErrorKind::NotAUnit, "element is not a unit");
  Poly numer(p.constant_value().inverse());
  for (int j = 0; j < nf; ++j)
    if (!den_.empty() && den_[j] > 0) numer = numer * chart_->factors()[j].pow(den_[j]);
  std::vector<int> den = num_powers;
  if (all_zero(den)) den.clear();
  return from_parts(chart_, {{0, numer, Poly()}}, std::move(den));
}

RingElem RingElem::sqrt() const {
  if (is_zero()) return *this;
  if (has_fourier()) throw Error(ErrorKind::NotASquare, "square root of a Fourier series");
  std::vector<int> half;
  for (int e : den_) {
    if (e % 2) throw Error(ErrorKind::NotASquare, "odd denominator power");
    half.push_back(e / 2);
  }
  auto r = num_[0].cos_part.sqrt_exact();
  if (!r) throw Error(ErrorKind::NotASquare, "numerator is not a perfect square");
  return from_parts(chart_, {{0, *r, Poly()}}, std::move(half));
}

RingElem RingElem::operator-() const {
  RingElem r = *this;
  for (auto& h : r.num_) {
    h.cos_part = -h.cos_part;
    h.sin_part = -h.sin_part;
  }
  return r;
}

RingElem& RingElem::operator+=(const RingElem& o) {
  if (o.is_zero()) {
    if (!chart_) chart_ = o.chart_;
    return *this;
  }
  ChartPtr chart = join_charts(*this, o);
  if (is_zero()) {
    num_ = o.num_;
    den_ = o.den_;
    chart_ = chart;
    return *this;
  }
  chart_ = chart;
  if (den_ == o.den_) {
    num_ = add_harmonics(num_, o.num_, false);
    if (!den_.empty()) canonicalize();
    return *this;
  }
  const int nf = chart_->factor_count();
  std::vector<int> common(nf, 0);
  Poly lhs(Rational(1)), rhs(Rational(1));
  for (int j = 0; j < nf; ++j) {
    int a = den_.empty() ? 0 : den_[j];
    int b = o.den_.empty() ? 0 : o.den_[j];
    common[j] = std::max(a, b);
    if (common[j] > a) lhs = lhs * chart_->factors()[j].pow(common[j] - a);
    if (common[j] > b) rhs = rhs * chart_->factors()[j].pow(common[j] - b);
  }
  num_ = add_harmonics(scale_harmonics(num_, lhs), scale_harmonics(o.num_, rhs), false);
  den_ = std::move(common);
  canonicalize();
  return *this;
}

RingElem& RingElem::operator-=(const RingElem& o) { return *this += -o; }

RingElem operator*(const RingElem& a, const RingElem& b) {
  RingElem r;
  r.chart_ = RingElem::join_charts(a, b);
  if (a.is_zero() || b.is_zero()) return r;
  r.num_ = multiply_harmonics(a.num_, b.num_);
  if (a.den_.empty()) {
    r.den_ = b.den_;
  } else if (b.den_.empty()) {
    r.den_ = a.den_;
  } else {
    r.den_ = a.den_;
    for (std::size_t j = 0; j < r.den_.size(); ++j) r.den_[j] += b.den_[j];
  }
  if (!r.den_.empty()) r.canonicalize();
  return r;
}

RingElem& RingElem::operator*=(const RingElem& o) { return *this = *this * o; }

RingElem RingElem::pow(unsigned e) const {
  RingElem r(chart_, Rational(1)), b = *this;
  while (e) {
    if (e & 1u) r = r * b;
    e >>= 1u;
    if (e) b = b * b;
  }
  return r;
}

bool RingElem::depends_on(int var) const {
  for (const auto& h : num_) {
    if (h.k != 0 && chart_->periodic()->var == var) return true;
    if (h.cos_part.depends_on(var) || h.sin_part.depends_on(var)) return true;
  }
  if (!den_.empty())
    for (std::size_t j = 0; j < den_.size(); ++j)
      if (den_[j] && chart_->factors()[j].depends_on(var)) return true;
  return false;
}

RingElem RingElem::derivative(int var) const {
  if (is_zero()) return *this;
  if (chart_ && (var < 0 || var >= chart_->dim()))
    throw Error(ErrorKind::UnknownVariable, "derivative variable out of range");
  const bool periodic = chart_ && chart_->periodic() && chart_->periodic()->var == var;
  std::vector<Harmonic> d;
  d.reserve(num_.size());
  for (const auto& h : num_) {
    Harmonic r{h.k, h.cos_part.derivative(var), h.sin_part.derivative(var)};
    if (periodic && h.k != 0) {
      Rational w = chart_->periodic()->base_frequency * Rational(h.k);
      // d/dt [c cos(wt) + s sin(wt)] = -w c sin(wt) + w s cos(wt)
      r.cos_part += h.sin_part.scaled(w);
      r.sin_part -= h.cos_part.scaled(w);
    }
    d.push_back(std::move(r));
  }
  RingElem result = from_parts(chart_, std::move(d), den_);
  if (den_.empty()) return result;
  // Quotient rule: d(N / f^e) contributes -e N f' / f^{e+1}.
  for (std::size_t j = 0; j < den_.size(); ++j) {
    if (den_[j] == 0) continue;
    Poly fp = chart_->factors()[j].derivative(var);
    if (fp.is_zero()) continue;
    std::vector<int> den = den_;
    den[j] += 1;
    result += from_parts(chart_, scale_harmonics(num_, fp.scaled(Rational(-den_[j]))), den);
  }
  return result;
}

Rational RingElem::evaluate(std::span<const Rational> point) const {
  if (chart_ && static_cast<int>(point.size()) < chart_->dim())
    throw Error(ErrorKind::InvalidInput, "evaluation point has too few coordinates");
  Rational den(1);
  for (std::size_t j = 0; j < den_.size(); ++j) {
    if (!den_[j]) continue;
    Rational v = chart_->factors()[j].evaluate(point);
    if (v.is_zero()) throw Error(ErrorKind::DenominatorZero, "registered factor vanishes at point");
    den *= v.pow(den_[j]);
  }
  Rational sum(0);
  for (const auto& h : num_) {
    if (h.k == 0) {
      sum += h.cos_part.evaluate(point);
      continue;
    }
    if (!point[chart_->periodic()->var].is_zero())
      throw Error(ErrorKind::TrigInExactMode, "trigonometric term at nonzero angle");
    sum += h.cos_part.evaluate(point);  // cos 0 = 1, sin 0 = 0
  }
  return sum / den;
}

long double RingElem::evaluate(std::span<const long double> point) const {
  if (chart_ && static_cast<int>(point.size()) < chart_->dim())
    throw Error(ErrorKind::InvalidInput, "evaluation point has too few coordinates");
  long double den = 1;
  for (std::size_t j = 0; j < den_.size(); ++j) {
    if (!den_[j]) continue;
    long double v = chart_->factors()[j].evaluate(point);
    if (v == 0) throw Error(ErrorKind::DenominatorZero, "registered factor vanishes at point");
    den *= std::pow(v, static_cast<long double>(den_[j]));
  }
  long double sum = 0;
  for (const auto& h : num_) {
    if (h.k == 0) {
      sum += h.cos_part.evaluate(point);
      continue;
    }
    long double angle = chart_->periodic()->base_frequency.to_long_double() * h.k *
                        point[chart_->periodic()->var];
    sum += h.cos_part.evaluate(point) * std::cos(angle) + h.sin_part.evaluate(point) * std::sin(angle);
  }
  return sum / den;
}

Rational RingElem::evaluate(const std::map<std::string, Rational>& point) const {
  std::vector<Rational> p(chart_ ? chart_->dim() : 0);
  if (chart_) {
    for (int i = 0; i < chart_->dim(); ++i) {
      auto it = point.find(chart_->variable(i));
      if (it == point.end())
        throw Error(ErrorKind::InvalidInput, "point does not assign " + chart_->variable(i));
      p[i] = it->second;
    }
  }
  return evaluate(std::span<const Rational>(p));
}

RingElem RingElem::transfer(const ChartPtr& target, std::span<const int> var_map) const {
  RingElem r;
  r.chart_ = target;
  if (is_zero()) return r;
  auto remap = [&](const Poly& p) {
    auto q = p.remap(var_map);
    if (!q) throw Error(ErrorKind::MixedChart, "element depends on a variable absent from target chart");
    return *q;
  };
  if (has_fourier()) {
    const auto& sp = chart_->periodic();
    const auto& tp = target->periodic();
    if (!tp || var_map[sp->var] != tp->var || sp->base_frequency != tp->base_frequency)
      throw Error(ErrorKind::MixedChart, "target chart lacks the matching periodic variable");
  }
  for (const auto& h : num_) r.num_.push_back({h.k, remap(h.cos_part), remap(h.sin_part)});
  if (!den_.empty()) {
    r.den_.assign(target->factor_count(), 0);
    for (std::size_t j = 0; j < den_.size(); ++j) {
      if (!den_[j]) continue;
      int t = target->factor_index(remap(chart_->factors()[j]));
      if (t < 0) throw Error(ErrorKind::UnregisteredDenominator, "factor not registered on target chart");
      r.den_[t] += den_[j];
    }
  }
  r.canonicalize();
  return r;
}

bool operator==(const RingElem& a, const RingElem& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  if (a.chart_ && b.chart_ && a.chart_ != b.chart_ && !a.chart_->same_as(*b.chart_)) return false;
  return a.num_ == b.num_ && a.den_ == b.den_;
}

void RingElem::for_each_coefficient(
    std::span<const int> common,
    const std::function<void(int, bool, const Monomial&, const Rational&)>& f) const {
  Poly scale(Rational(1));
  for (std::size_t j = 0; j < common.size(); ++j) {
    int have = den_.empty() ? 0 : den_[j];
    if (common[j] < have) throw Error(ErrorKind::InvalidInput, "common denominator too small");
    if (common[j] > have) scale = scale * chart_->factors()[j].pow(common[j] - have);
  }
  if (common.empty() && !den_.empty())
    throw Error(ErrorKind::InvalidInput, "common denominator too small");
  for (const auto& h : num_) {
    Poly c = h.cos_part * scale, s = h.sin_part * scale;
    for (const auto& t : c.terms()) f(h.k, false, t.mono, t.coeff);
    for (const auto& t : s.terms()) f(h.k, true, t.mono, t.coeff);
  }
}

bool is_identically_zero(const RingElem& a) { return a.is_zero(); }

}  // namespace maxsusy
