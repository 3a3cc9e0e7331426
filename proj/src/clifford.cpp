#include "maxsusy/clifford.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "maxsusy/errors.hpp"
#include "maxsusy/linalg.hpp"

namespace maxsusy {

// ---------------------------------------------------------------- matrices

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = Rational(1);
  return m;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool RationalMatrix::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

RationalMatrix& RationalMatrix::operator+=(const RationalMatrix& o) {
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

RationalMatrix& RationalMatrix::operator-=(const RationalMatrix& o) {
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

RationalMatrix& RationalMatrix::operator*=(const Rational& s) {
  for (auto& x : a_) x *= s;
  return *this;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  int n = a.n_;
  RationalMatrix c(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const Rational& x = a(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < n; ++j)
        if (!b(k, j).is_zero()) c(i, j) += x * b(k, j);
    }
  return c;
}

SparseMatrix to_sparse(const RationalMatrix& m) {
  SparseMatrix s;
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j)
      if (!m(i, j).is_zero())
        s.push_back({static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j), m(i, j)});
  return s;
}

SpinorMatrix::SpinorMatrix(ChartPtr chart, const RationalMatrix& m) : SpinorMatrix(std::move(chart)) {
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      if (!m(i, j).is_zero()) (*this)(i, j) = RingElem(chart_, m(i, j));
}

SpinorMatrix SpinorMatrix::identity(ChartPtr chart) {
  SpinorMatrix m(chart);
  for (int i = 0; i < N; ++i) m(i, i) = RingElem(chart, Rational(1));
  return m;
}

void SpinorMatrix::add_scaled(const SparseMatrix& m, const RingElem& c) {
  if (c.is_zero()) return;
  for (const auto& e : m) (*this)(e.row, e.col) += c * RingElem(e.value);
}

bool SpinorMatrix::is_zero() const {
  for (const auto& x : e_)
    if (!x.is_zero()) return false;
  return true;
}

std::size_t SpinorMatrix::nonzero_count() const {
  std::size_t n = 0;
  for (const auto& x : e_) n += !x.is_zero();
  return n;
}

SpinorMatrix& SpinorMatrix::operator+=(const SpinorMatrix& o) {
  if (!chart_) chart_ = o.chart_;
  for (int i = 0; i < N * N; ++i)
    if (!o.e_[i].is_zero()) e_[i] += o.e_[i];
  return *this;
}

SpinorMatrix& SpinorMatrix::operator-=(const SpinorMatrix& o) {
  if (!chart_) chart_ = o.chart_;
  for (int i = 0; i < N * N; ++i)
    if (!o.e_[i].is_zero()) e_[i] -= o.e_[i];
  return *this;
}

SpinorMatrix& SpinorMatrix::operator*=(const RingElem& s) {
  for (auto& x : e_)
    if (!x.is_zero()) x *= s;
  return *this;
}

SpinorMatrix operator*(const SpinorMatrix& a, const SpinorMatrix& b) {
  constexpr int N = SpinorMatrix::N;
  SpinorMatrix c(a.chart_ ? a.chart_ : b.chart_);
  // nonzero columns of each row of b
  std::array<std::vector<int>, N> bcols;
  for (int k = 0; k < N; ++k)
    for (int j = 0; j < N; ++j)
      if (!b(k, j).is_zero()) bcols[k].push_back(j);
  for (int i = 0; i < N; ++i)
    for (int k = 0; k < N; ++k) {
      const RingElem& x = a(i, k);
      if (x.is_zero()) continue;
      for (int j : bcols[k]) c(i, j) += x * b(k, j);
    }
  return c;
}

bool operator==(const SpinorMatrix& a, const SpinorMatrix& b) {
  for (int i = 0; i < SpinorMatrix::N * SpinorMatrix::N; ++i)
    if (!(a.e_[i] == b.e_[i])) return false;
  return true;
}

SpinorMatrix SpinorMatrix::derivative(int var) const {
  SpinorMatrix d(chart_);
  for (int i = 0; i < N * N; ++i)
    if (!e_[i].is_zero()) d.e_[i] = e_[i].derivative(var);
  return d;
}

RationalMatrix SpinorMatrix::evaluate(std::span<const Rational> point) const {
  RationalMatrix m(N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      if (!(*this)(i, j).is_zero()) m(i, j) = (*this)(i, j).evaluate(point);
  return m;
}

std::vector<long double> SpinorMatrix::evaluate(std::span<const long double> point) const {
  std::vector<long double> m(N * N, 0.0L);
  for (int i = 0; i < N * N; ++i)
    if (!e_[i].is_zero()) m[i] = e_[i].evaluate(point);
  return m;
}

SpinorMatrix commutator(const SpinorMatrix& a, const SpinorMatrix& b) { return a * b - b * a; }

// ------------------------------------------------------------------ gammas

namespace {

constexpr int kN = GammaRep::kSpinor;
constexpr int kD = GammaRep::kDim;

// Matrix with a single nonzero per row: row i has sign[i] in column perm[i].
struct SignedPerm {
  std::array<std::uint8_t, kN> perm{};
  std::array<std::int8_t, kN> sign{};

  static SignedPerm identity() {
    SignedPerm p;
    for (int i = 0; i < kN; ++i) {
      p.perm[i] = static_cast<std::uint8_t>(i);
      p.sign[i] = 1;
    }
    return p;
  }
  SignedPerm operator*(const SignedPerm& b) const {
    SignedPerm c;
    for (int i = 0; i < kN; ++i) {
      c.perm[i] = b.perm[perm[i]];
      c.sign[i] = static_cast<std::int8_t>(sign[i] * b.sign[perm[i]]);
    }
    return c;
  }
  SignedPerm negated() const {
    SignedPerm c = *this;
    for (auto& s : c.sign) s = static_cast<std::int8_t>(-s);
    return c;
  }
  // +1 / -1 if this is +-Identity, 0 otherwise
  int scalar() const {
    for (int i = 0; i < kN; ++i)
      if (perm[i] != i || sign[i] != sign[0]) return 0;
    return sign[0];
  }
  RationalMatrix matrix() const {
    RationalMatrix m(kN);
    for (int i = 0; i < kN; ++i) m(i, perm[i]) = Rational(sign[i]);
    return m;
  }
};

// Single-qubit factors: identity, sigma_x, sigma_z, and e = [[0,1],[-1,0]].
enum Pauli : std::uint8_t { I = 0, X = 1, Z = 2, E = 3 };

SignedPerm pauli_string(const std::array<std::uint8_t, 5>& s) {
  SignedPerm p;
  for (int row = 0; row < kN; ++row) {
    int col = 0, sign = 1;
    for (int q = 0; q < 5; ++q) {
      int bit = (row >> (4 - q)) & 1;
      int out = bit;
      switch (s[q]) {
        case X: out = 1 - bit; break;
        case Z: sign *= bit ? -1 : 1; break;
        case E: out = 1 - bit; sign *= bit ? -1 : 1; break;
        default: break;
      }
      col |= out << (4 - q);
    }
    p.perm[row] = static_cast<std::uint8_t>(col);
    p.sign[row] = static_cast<std::int8_t>(sign);
  }
  return p;
}

bool anticommute(const std::array<std::uint8_t, 5>& a, const std::array<std::uint8_t, 5>& b) {
  int n = 0;
  for (int q = 0; q < 5; ++q) n += (a[q] != I && b[q] != I && a[q] != b[q]);
  return n & 1;
}

int count_e(const std::array<std::uint8_t, 5>& a) {
  int n = 0;
  for (auto x : a) n += (x == E);
  return n;
}

// Eleven mutually anticommuting Pauli strings, the first squaring to -1 and
// the rest to +1, whose product is a multiple of the identity. Deterministic
// depth-first search in lexicographic string order.
std::array<SignedPerm, kD> orthonormal_generators() {
  std::vector<std::array<std::uint8_t, 5>> all;
  for (int code = 1; code < 1024; ++code) {
    std::array<std::uint8_t, 5> s{};
    for (int q = 0; q < 5; ++q) s[q] = static_cast<std::uint8_t>((code >> (2 * (4 - q))) & 3);
    all.push_back(s);
  }
  std::vector<int> chosen;
  std::function<bool(std::size_t)> extend = [&](std::size_t start) -> bool {
    if (chosen.size() == kD) {
      SignedPerm prod = SignedPerm::identity();
      for (int c : chosen) prod = prod * pauli_string(all[c]);
      return prod.scalar() != 0;
    }
    bool want_timelike = chosen.empty();
    for (std::size_t c = chosen.empty() ? 0 : start; c < all.size(); ++c) {
      if ((count_e(all[c]) & 1) != (want_timelike ? 1 : 0)) continue;
      bool ok = true;
      for (int o : chosen)
        if (!anticommute(all[o], all[c])) {
          ok = false;
          break;
        }
      if (!ok) continue;
      chosen.push_back(static_cast<int>(c));
      if (extend(want_timelike ? 0 : c + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!extend(0)) throw Error(ErrorKind::NoSolution, "no Pauli-string Clifford generators found");
  std::array<SignedPerm, kD> g;
  for (int b = 0; b < kD; ++b) g[b] = pauli_string(all[chosen[b]]);
  return g;
}

Rational determinant(std::vector<std::vector<Rational>> m) {
  int n = static_cast<int>(m.size());
  Rational det(1);
  for (int c = 0; c < n; ++c) {
    int piv = c;
    while (piv < n && m[piv][c].is_zero()) ++piv;
    if (piv == n) return Rational(0);
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    Rational inv = m[c][c].inverse();
    for (int r = c + 1; r < n; ++r) {
      if (m[r][c].is_zero()) continue;
      Rational f = m[r][c] * inv;
      for (int k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

}  // namespace

std::vector<std::vector<Rational>> minkowski_frame_metric() {
  std::vector<std::vector<Rational>> eta(kD, std::vector<Rational>(kD));
  for (int a = 0; a < kD; ++a) eta[a][a] = Rational(a == 0 ? -1 : 1);
  return eta;
}

std::vector<std::vector<Rational>> lightcone_frame_metric() {
  std::vector<std::vector<Rational>> eta(kD, std::vector<Rational>(kD));
  eta[0][1] = eta[1][0] = Rational(1);
  for (int a = 2; a < kD; ++a) eta[a][a] = Rational(1);
  return eta;
}

GammaRep build_gamma(const std::vector<std::vector<Rational>>& eta) {
  if (eta.size() != kD) throw Error(ErrorKind::BadSignature, "frame metric must be 11x11");
  for (const auto& row : eta)
    if (row.size() != kD) throw Error(ErrorKind::BadSignature, "frame metric must be 11x11");

  // Classify: one timelike diagonal entry, or one null pair.
  int timelike = -1, p = -1, q = -1;
  for (int a = 0; a < kD; ++a)
    for (int b = 0; b < kD; ++b) {
      const Rational& x = eta[a][b];
      if (!(x == eta[b][a])) throw Error(ErrorKind::BadSignature, "frame metric not symmetric");
      if (a == b) {
        if (x == Rational(-1)) {
          if (timelike >= 0) throw Error(ErrorKind::BadSignature, "more than one timelike direction");
          timelike = a;
        } else if (!x.is_one() && !x.is_zero()) {
          throw Error(ErrorKind::BadSignature, "diagonal entries must be 0 or +-1");
        }
      } else if (a < b && !x.is_zero()) {
        if (!x.is_one() || p >= 0) throw Error(ErrorKind::BadSignature, "frame metric not admissible");
        p = a;
        q = b;
      }
    }
  bool lightcone = p >= 0;
  for (int a = 0; a < kD; ++a) {
    bool null_slot = lightcone && (a == p || a == q);
    if (null_slot != eta[a][a].is_zero()) throw Error(ErrorKind::BadSignature, "frame metric not admissible");
  }
  if (lightcone == (timelike >= 0)) throw Error(ErrorKind::BadSignature, "signature is not (1,10)");

  GammaRep rep;
  rep.eta_ = eta;
  rep.eta_inv_ = eta;  // both admissible families are involutions
  rep.lightcone_ = lightcone;

  // Coframe change to the orthonormal coframe theta.
  rep.n_.assign(kD, std::vector<Rational>(kD));
  int next = lightcone ? 2 : 1;
  for (int a = 0; a < kD; ++a) {
    if (lightcone && a == p) {
      rep.n_[a][0] = Rational(1);
      rep.n_[a][1] = Rational(1);
    } else if (lightcone && a == q) {
      rep.n_[a][0] = Rational(-1, 2);
      rep.n_[a][1] = Rational(1, 2);
    } else if (a == timelike) {
      rep.n_[a][0] = Rational(1);
    } else {
      rep.n_[a][next++] = Rational(1);
    }
  }
  Rational det_n = determinant(rep.n_);

  auto gens = orthonormal_generators();
  SignedPerm vol = SignedPerm::identity();
  for (const auto& g : gens) vol = vol * g;
  // c(frame volume) = det N * theta-volume; pin it to +Identity.
  if (vol.scalar() * det_n.sign() < 0) gens[kD - 1] = gens[kD - 1].negated();

  for (int b = 0; b < kD; ++b) rep.ortho_[b] = gens[b].matrix();
  for (int a = 0; a < kD; ++a) {
    RationalMatrix g(kN);
    for (int b = 0; b < kD; ++b)
      if (!rep.n_[a][b].is_zero()) g += rep.n_[a][b] * rep.ortho_[b];
    rep.gammas_[a] = std::move(g);
  }

  // Products of orthonormal generators in increasing index order.
  std::vector<SignedPerm> ortho_prod(1 << kD);
  ortho_prod[0] = SignedPerm::identity();
  for (IndexMask m = 1; m < (1u << kD); ++m) {
    int top = 31 - __builtin_clz(m);
    ortho_prod[m] = ortho_prod[m & ~(1u << top)] * gens[top];
  }

  // e^{a1} ^ ... ^ e^{ap} expanded in theta monomials, then mapped through c.
  rep.basis_.resize(1 << kD);
  for (IndexMask m = 0; m < (1u << kD); ++m) {
    std::map<IndexMask, Rational> expansion{{0, Rational(1)}};
    for (int a : mask_indices(m)) {
      std::map<IndexMask, Rational> next_exp;
      for (const auto& [bm, coef] : expansion)
        for (int b = 0; b < kD; ++b) {
          if (rep.n_[a][b].is_zero() || (bm >> b) & 1) continue;
          int above = __builtin_popcount(bm >> (b + 1));
          Rational c = coef * rep.n_[a][b];
          next_exp[bm | (1u << b)] += (above & 1) ? -c : c;
        }
      expansion.clear();
      for (auto& [bm, c] : next_exp)
        if (!c.is_zero()) expansion.emplace(bm, c);
    }
    if (expansion.size() == 1 && expansion.begin()->second.is_one()) {
      const SignedPerm& sp = ortho_prod[expansion.begin()->first];
      SparseMatrix s;
      for (int i = 0; i < kN; ++i)
        s.push_back({static_cast<std::uint8_t>(i), sp.perm[i], Rational(sp.sign[i])});
      std::sort(s.begin(), s.end(), [](const SparseEntry& x, const SparseEntry& y) {
        return x.row != y.row ? x.row < y.row : x.col < y.col;
      });
      rep.basis_[m] = std::move(s);
      continue;
    }
    RationalMatrix acc(kN);
    for (const auto& [bm, c] : expansion) {
      const SignedPerm& sp = ortho_prod[bm];
      for (int i = 0; i < kN; ++i) acc(i, sp.perm[i]) += sp.sign[i] > 0 ? c : -c;
    }
    rep.basis_[m] = to_sparse(acc);
  }
  return rep;
}

SpinorMatrix clifford_action(const FormField& form, const GammaRep& rep) {
  if (form.degree() > GammaRep::kDim)
    throw Error(ErrorKind::DegreeOutOfRange, "clifford action of a form of degree > 11");
  if (form.basis() != Basis::Frame)
    throw Error(ErrorKind::BasisMismatch, "clifford action needs a frame-basis form");
  SpinorMatrix out(form.chart());
  for (const auto& [m, c] : form.components()) out.add_scaled(rep.basis_action(m), c);
  return out;
}

SymplecticForm build_symplectic(const GammaRep& rep) {
  auto u = [](int i, int j) { return static_cast<std::size_t>(i * kN + j); };
  std::vector<linalg::SparseVec> rows;
  for (int i = 0; i < kN; ++i)
    for (int j = i; j < kN; ++j) {
      linalg::SparseVec r;
      r[u(i, j)] += Rational(1);
      r[u(j, i)] += Rational(1);
      rows.push_back(std::move(r));
    }
  for (int a = 0; a < kD; ++a) {
    auto g = to_sparse(rep.gamma(a));
    // column lists of gamma: (C gamma)_{ij} = sum_k C_ik gamma_kj
    std::array<std::vector<std::pair<int, Rational>>, kN> by_col;
    for (const auto& e : g) by_col[e.col].emplace_back(e.row, e.value);
    for (int i = 0; i < kN; ++i)
      for (int j = i + 1; j < kN; ++j) {
        linalg::SparseVec r;
        for (const auto& [k, v] : by_col[j]) r[u(i, k)] += v;
        for (const auto& [k, v] : by_col[i]) r[u(j, k)] -= v;
        std::erase_if(r, [](const auto& kv) { return kv.second.is_zero(); });
        if (!r.empty()) rows.push_back(std::move(r));
      }
  }
  auto kernel = linalg::nullspace(rows, kN * kN);
  if (kernel.empty()) throw Error(ErrorKind::NoSolution, "no spin-invariant symplectic form");
  if (kernel.size() > 1)
    throw Error(ErrorKind::NonUniqueSolution,
                "symplectic form not unique: kernel dimension " + std::to_string(kernel.size()));
  const auto& v = kernel.front();
  Rational scale = v.begin()->second.inverse();
  SymplecticForm s{RationalMatrix(kN)};
  for (const auto& [idx, x] : v) s.C(static_cast<int>(idx / kN), static_cast<int>(idx % kN)) = x * scale;
  return s;
}

std::vector<RingElem> spinor_bilinear_vector(std::span<const RingElem> eps1,
                                             std::span<const RingElem> eps2, const GammaRep& rep,
                                             const SymplecticForm& C) {
  // r = eps1^T C
  std::vector<RingElem> r(kN);
  for (int i = 0; i < kN; ++i) {
    if (eps1[i].is_zero()) continue;
    for (int k = 0; k < kN; ++k)
      if (!C.C(i, k).is_zero()) r[k] += eps1[i] * RingElem(C.C(i, k));
  }
  std::vector<RingElem> v(kD);
  for (int a = 0; a < kD; ++a)
    for (const auto& e : to_sparse(rep.gamma(a)))
      if (!r[e.row].is_zero() && !eps2[e.col].is_zero())
        v[a] += r[e.row] * RingElem(e.value) * eps2[e.col];
  return v;
}

}  // namespace maxsusy
