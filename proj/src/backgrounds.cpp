#include "maxsusy/backgrounds.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "maxsusy/errors.hpp"

namespace maxsusy {

namespace {

RationalSquare diag_eta(int n) {
  RationalSquare eta(n, std::vector<Rational>(n));
  for (int a = 0; a < n; ++a) eta[a][a] = Rational(a == 0 ? -1 : 1);
  return eta;
}

RingElem var(const ChartPtr& c, int i) { return RingElem::variable(c, i); }

}  // namespace

Background minkowski11() {
  std::vector<std::string> v;
  for (int i = 0; i <= 10; ++i) v.push_back("x" + std::to_string(i));
  auto chart = make_chart(v);
  RingMatrix e(11, std::vector<RingElem>(11));
  for (int a = 0; a < 11; ++a) e[a][a] = RingElem(chart, Rational(1));
  return Background(MetricField(chart, e, diag_eta(11)), FormField(chart, 4, Basis::Coordinate),
                    BackgroundMeta{"flat", {}});
}

Background cahen_wallach(const CWData& data, bool strict, std::optional<Rational> periodic_base) {
  if (data.lambda.size() != 9) throw Error(ErrorKind::InvalidInput, "Cahen-Wallach data needs 9 eigenvalues");
  for (const auto& l : data.lambda)
    if (l.is_zero() && strict) throw Error(ErrorKind::DegenerateA, "zero eigenvalue: the space decomposes");
  std::vector<std::string> v = {"xp", "xm"};
  for (int i = 1; i <= 9; ++i) v.push_back("x" + std::to_string(i));
  std::optional<PeriodicVariable> per;
  if (periodic_base) per = PeriodicVariable{1, *periodic_base};
  auto chart = make_chart(v, {}, per);

  RingElem h(chart, Rational(0));
  for (int i = 0; i < 9; ++i)
    if (!data.lambda[i].is_zero()) h += RingElem(data.lambda[i]) * var(chart, i + 2).pow(2);
  RingMatrix e(11, std::vector<RingElem>(11));
  e[0][0] = RingElem(chart, Rational(1));
  e[0][1] = h * RingElem(Rational(1, 2));
  e[1][1] = RingElem(chart, Rational(1));
  for (int i = 2; i < 11; ++i) e[i][i] = RingElem(chart, Rational(1));
  RationalSquare eta(11, std::vector<Rational>(11));
  eta[0][1] = eta[1][0] = Rational(1);
  for (int i = 2; i < 11; ++i) eta[i][i] = Rational(1);

  FormField f(chart, 4, Basis::Coordinate);
  f.add({1, 2, 3, 4}, RingElem(chart, data.mu));

  BackgroundMeta meta{"cw", {}};
  std::string lam;
  for (std::size_t i = 0; i < data.lambda.size(); ++i) lam += (i ? "," : "") + data.lambda[i].str();
  meta.params = {{"lambda", lam}, {"mu", data.mu.str()}};
  return Background(MetricField(chart, e, eta), f, meta);
}

CWData maximal_cw_data() {
  CWData d;
  d.lambda.assign(9, Rational(-1, 4));
  d.lambda[0] = d.lambda[1] = d.lambda[2] = Rational(-1);
  d.mu = Rational(3);
  return d;
}

Background maximal_cw() {
  Background bg = cahen_wallach(maximal_cw_data());
  BackgroundMeta meta = bg.meta();
  meta.kind = "cw-max";
  return Background(bg.metric(), bg.flux(), meta);
}

Background perturbed_cw() {
  Background bg = maximal_cw();
  FormField f = bg.flux();
  f.add({5, 6, 7, 8}, RingElem(bg.chart(), Rational(1)));
  return Background(bg.metric(), f, BackgroundMeta{"cw-perturbed", {}});
}

FreundRubinFactors freund_rubin_factors(FreundRubinKind kind, const Rational& s) {
  if (s.is_zero()) throw Error(ErrorKind::WrongSign, "s must be nonzero");
  bool ads4 = kind == FreundRubinKind::AdS4xS7;
  if (ads4 != (s.sign() < 0))
    throw Error(ErrorKind::WrongSign, ads4 ? "AdS4xS7 needs s < 0" : "AdS7xS4 needs s > 0");
  auto m = (Rational(6) * s.abs()).sqrt();
  if (!m) throw Error(ErrorKind::IrrationalFlux, "6|s| = " + (Rational(6) * s.abs()).str() + " is not a rational square");
  // 4d factor: scalar 8s; 7d factor: scalar -7s. With 6|s| = m^2 the radii
  // are 3/m for the 4d factor and 6/m for the 7d factor.
  FreundRubinFactors f;
  f.ads_dim = ads4 ? 4 : 7;
  f.flux = *m;
  Rational r4 = Rational(3) / *m, r7 = Rational(6) / *m;
  f.ads_radius = ads4 ? r4 : r7;
  f.sphere_radius = ads4 ? r7 : r4;
  return f;
}

Background freund_rubin(FreundRubinKind kind, const Rational& s) {
  FreundRubinFactors fr = freund_rubin_factors(kind, s);
  int na = fr.ads_dim, ns = 11 - na;
  std::vector<std::string> v = {"t"};
  for (int k = 1; k <= na - 2; ++k) v.push_back("u" + std::to_string(k));
  v.push_back("z");
  for (int k = 1; k <= ns; ++k) v.push_back("y" + std::to_string(k));
  Poly z = Poly::variable(na - 1);
  Poly p(Rational(1));
  for (int k = 0; k < ns; ++k) p = p + Poly::variable(na + k).pow(2);
  auto chart = make_chart(v, {z, p});
  int zf = chart->factor_index(z), pf = chart->factor_index(p);

  RingMatrix e(11, std::vector<RingElem>(11));
  RingElem ads = RingElem(chart, fr.ads_radius) * RingElem::inverse_factor(chart, zf);
  RingElem sph = RingElem(chart, Rational(2) * fr.sphere_radius) * RingElem::inverse_factor(chart, pf);
  for (int a = 0; a < na; ++a) e[a][a] = ads;
  for (int a = na; a < 11; ++a) e[a][a] = sph;
  MetricField g(chart, e, diag_eta(11));

  FormField f(chart, 4, Basis::Frame);
  IndexMask vol4 = na == 4 ? IndexMask{0b1111} : IndexMask{0b1111} << 7;
  f.add(vol4, RingElem(chart, fr.flux));
  BackgroundMeta meta{na == 4 ? "ads4xs7" : "ads7xs4", {{"s", s.str()}}};
  return Background(g, f, meta);
}

std::pair<RingElem, RingElem> block_scalars(const MetricField& g, const Curvature& cur, int split) {
  RingElem a, b;
  for (int i = 0; i < g.dim(); ++i)
    for (int j = 0; j < g.dim(); ++j) {
      if ((i < split) != (j < split) || g.ginv(i, j).is_zero()) continue;
      (i < split ? a : b) += g.ginv(i, j) * cur.ricci[i][j];
    }
  return {a, b};
}

// --------------------------------------------------------------- Lie algebra

LieAlgebraTable::LieAlgebraTable(std::vector<Rational> lambda)
    : m_(static_cast<int>(lambda.size())), lambda_(std::move(lambda)) {
  int n = dim();
  labels_ = {"e+", "e-"};
  for (int i = 1; i <= m_; ++i) labels_.push_back("v" + std::to_string(i));
  for (int i = 1; i <= m_; ++i) labels_.push_back("v*" + std::to_string(i));
  table_.assign(n * n, {});
  auto set = [&](int i, int j, int k, const Rational& c) {
    if (c.is_zero()) return;
    table_[i * n + j][k] = c;
    table_[j * n + i][k] = -c;
  };
  for (int i = 0; i < m_; ++i) {
    set(e_minus(), v(i), v_star(i), Rational(1));       // [e-, v] = v_flat
    set(e_minus(), v_star(i), v(i), lambda_[i]);        // [e-, a] = A(a_sharp)
    set(v_star(i), v(i), e_plus(), lambda_[i]);         // [a, v] = A(v, a_sharp) e+
  }
  b_.assign(n, std::vector<Rational>(n));
  b_[e_plus()][e_minus()] = b_[e_minus()][e_plus()] = Rational(1);
  for (int i = 0; i < m_; ++i) b_[v(i)][v(i)] = Rational(1);
}

linalg::SparseVec LieAlgebraTable::bracket(const linalg::SparseVec& x, const linalg::SparseVec& y) const {
  linalg::SparseVec out;
  for (const auto& [i, a] : x)
    for (const auto& [j, b] : y)
      for (const auto& [k, c] : bracket(static_cast<int>(i), static_cast<int>(j))) out[k] += a * b * c;
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

bool LieAlgebraTable::jacobi_holds() const {
  int n = dim();
  auto unit = [](int i) { return linalg::SparseVec{{static_cast<std::size_t>(i), Rational(1)}}; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        linalg::SparseVec s;
        for (auto [a, b, c] : {std::tuple{i, j, k}, std::tuple{j, k, i}, std::tuple{k, i, j}})
          for (const auto& [idx, val] : bracket(unit(a), bracket(b, c))) s[idx] += val;
        for (const auto& [idx, val] : s)
          if (!val.is_zero()) return false;
      }
  return true;
}

bool LieAlgebraTable::symmetric_split_holds() const {
  auto in_k = [&](const linalg::SparseVec& x) {
    for (const auto& [i, c] : x)
      if (static_cast<int>(i) < v_star(0)) return false;
    return true;
  };
  auto in_p = [&](const linalg::SparseVec& x) {
    for (const auto& [i, c] : x)
      if (static_cast<int>(i) >= v_star(0)) return false;
    return true;
  };
  int n = dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      bool ik = i >= v_star(0), jk = j >= v_star(0);
      const auto& br = bracket(i, j);
      if (ik && jk && !in_k(br)) return false;
      if (ik != jk && !in_p(br)) return false;
      if (!ik && !jk && !in_k(br)) return false;
    }
  return true;
}

bool LieAlgebraTable::second_derived_central() const {
  int n = dim();
  auto span_of_brackets = [&](const std::vector<linalg::SparseVec>& a, const std::vector<linalg::SparseVec>& b) {
    linalg::SparseEchelon ech;
    for (const auto& x : a)
      for (const auto& y : b) ech.insert(bracket(x, y));
    return ech.reduced_rows();
  };
  std::vector<linalg::SparseVec> basis;
  for (int i = 0; i < n; ++i) basis.push_back({{static_cast<std::size_t>(i), Rational(1)}});
  auto d1 = span_of_brackets(basis, basis);
  auto d2 = span_of_brackets(d1, d1);
  for (const auto& z : d2)
    for (const auto& x : basis)
      if (!bracket(z, x).empty()) return false;
  return true;
}

LieAlgebraTable cw_lie_algebra(const std::vector<Rational>& lambda) { return LieAlgebraTable(lambda); }

ModuliForm moduli_canonicalize(const std::vector<Rational>& lambda) {
  Rational mx(0);
  for (const auto& l : lambda) mx = std::max(mx, l.abs());
  if (mx.is_zero()) throw Error(ErrorKind::ZeroInput, "eigenvalue vector is zero");
  ModuliForm out;
  for (const auto& l : lambda) out.direction.push_back(l / mx);
  std::sort(out.direction.begin(), out.direction.end(), std::greater<>());
  for (const auto& d : out.direction) out.norm_sq += d * d;
  return out;
}

// ----------------------------------------------------------- Killing basis

KillingBasis cw_killing_basis(const CWData& data) {
  std::vector<Rational> freq;
  for (const auto& l : data.lambda) {
    if (l.sign() >= 0)
      throw Error(ErrorKind::IrrationalFrequency, "eigenvalue " + l.str() + " is not negative");
    auto w = (-l).sqrt();
    if (!w) throw Error(ErrorKind::IrrationalFrequency, "-(" + l.str() + ") is not a rational square");
    freq.push_back(*w);
  }
  Rational base = freq[0];
  for (const auto& w : freq) base = Rational::gcd(base, w);
  Background bg = cahen_wallach(data, true, base);
  auto c = bg.chart();
  KillingBasis kb{bg, {}, {}};
  auto add = [&](VectorField f, std::string name) {
    kb.fields.push_back(std::move(f));
    kb.names.push_back(std::move(name));
  };
  add(VectorField::coordinate(c, 0), "d+");
  add(VectorField::coordinate(c, 1), "d-");
  for (int i = 0; i < 9; ++i) {
    int k = (freq[i] / base).numerator().get_si();
    RingElem cs = RingElem::cos_harmonic(c, k), sn = RingElem::sin_harmonic(c, k);
    RingElem wx = RingElem(freq[i]) * var(c, i + 2);
    // f'' = lambda f with f = cos, sin
    VectorField a(c), b(c);
    a.comps[i + 2] = cs;
    a.comps[0] = wx * sn;
    b.comps[i + 2] = sn;
    b.comps[0] = -(wx * cs);
    std::string idx = std::to_string(i + 1);
    add(a, "cos" + idx);
    add(b, "sin" + idx);
  }
  for (int i = 0; i < 9; ++i)
    for (int j = i + 1; j < 9; ++j) {
      if (!(data.lambda[i] == data.lambda[j])) continue;
      VectorField r(c);
      r.comps[j + 2] = var(c, i + 2);
      r.comps[i + 2] = -var(c, j + 2);
      add(r, "rot" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  return kb;
}

std::size_t constant_rank(const std::vector<VectorField>& fields) {
  std::map<std::tuple<int, int, bool, std::vector<std::uint8_t>>, std::size_t> keys;
  linalg::SparseEchelon ech;
  for (const auto& f : fields) {
    std::vector<int> common;
    for (const auto& x : f.comps)
      if (x.denominator().size() > common.size()) common.resize(x.denominator().size(), 0);
    for (const auto& x : f.comps)
      for (std::size_t j = 0; j < x.denominator().size(); ++j) common[j] = std::max(common[j], x.denominator()[j]);
    linalg::SparseVec v;
    for (int comp = 0; comp < f.dim(); ++comp) {
      if (f.comps[comp].is_zero()) continue;
      std::vector<int> cd = common;
      if (f.chart) cd.resize(f.chart->factor_count(), 0);
      f.comps[comp].for_each_coefficient(cd, [&](int k, bool is_sin, const Monomial& m, const Rational& q) {
        std::vector<std::uint8_t> e(m.exp.begin(), m.exp.end());
        auto key = std::make_tuple(comp, k, is_sin, e);
        auto it = keys.try_emplace(key, keys.size()).first;
        v[it->second] += q;
      });
    }
    ech.insert(std::move(v));
  }
  return ech.rank();
}

}  // namespace maxsusy
