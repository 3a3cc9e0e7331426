#include "maxsusy/chartgeom.hpp"

#include <map>

#include "maxsusy/errors.hpp"

namespace maxsusy {

namespace {

RationalSquare invert_rational(const RationalSquare& m) {
  int n = static_cast<int>(m.size());
  RationalSquare a = m, inv(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i) inv[i][i] = Rational(1);
  for (int c = 0; c < n; ++c) {
    int piv = c;
    while (piv < n && a[piv][c].is_zero()) ++piv;
    if (piv == n) throw Error(ErrorKind::SingularCoframe, "frame metric is degenerate");
    std::swap(a[piv], a[c]);
    std::swap(inv[piv], inv[c]);
    Rational s = a[c][c].inverse();
    for (int k = 0; k < n; ++k) {
      a[c][k] *= s;
      inv[c][k] *= s;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      Rational f = a[r][c];
      for (int k = 0; k < n; ++k) {
        a[r][k] -= f * a[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

RingMatrix to_ring(const RationalSquare& m, const ChartPtr& chart) {
  RingMatrix r(m.size(), std::vector<RingElem>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (!m[i][j].is_zero()) r[i][j] = RingElem(chart, m[i][j]);
  return r;
}

// sign of the permutation listing the indices of `first` then those of `second`
int concat_sign(IndexMask first, IndexMask second) {
  int inv = 0;
  for (IndexMask m = second; m; m &= m - 1) {
    int j = __builtin_ctz(m);
    inv += __builtin_popcount(first >> (j + 1));
  }
  return (inv & 1) ? -1 : 1;
}

}  // namespace

VectorField VectorField::coordinate(const ChartPtr& c, int i) {
  VectorField v(c);
  v.comps[i] = RingElem(c, Rational(1));
  return v;
}

bool VectorField::is_zero() const {
  for (const auto& x : comps)
    if (!x.is_zero()) return false;
  return true;
}

RingMatrix invert_unit_matrix(const RingMatrix& m) {
  int n = static_cast<int>(m.size());
  RingMatrix a = m, inv(n, std::vector<RingElem>(n));
  for (int i = 0; i < n; ++i) inv[i][i] = RingElem(1);
  for (int c = 0; c < n; ++c) {
    int piv = c;
    while (piv < n && !a[piv][c].is_unit()) ++piv;
    if (piv == n) throw Error(ErrorKind::SingularCoframe, "no unit pivot in column " + std::to_string(c));
    std::swap(a[piv], a[c]);
    std::swap(inv[piv], inv[c]);
    RingElem s = a[c][c].inverse();
    for (int k = 0; k < n; ++k) {
      if (!a[c][k].is_zero()) a[c][k] *= s;
      if (!inv[c][k].is_zero()) inv[c][k] *= s;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      RingElem f = a[r][c];
      for (int k = 0; k < n; ++k) {
        if (!a[c][k].is_zero()) a[r][k] -= f * a[c][k];
        if (!inv[c][k].is_zero()) inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

MetricField::MetricField(ChartPtr chart, RingMatrix coframe, RationalSquare frame_metric)
    : chart_(std::move(chart)), e_(std::move(coframe)), eta_(std::move(frame_metric)) {
  int n = dim();
  if (static_cast<int>(e_.size()) != n || static_cast<int>(eta_.size()) != n)
    throw Error(ErrorKind::InvalidInput, "coframe size does not match chart dimension");
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(e_[a].size()) != n || static_cast<int>(eta_[a].size()) != n)
      throw Error(ErrorKind::InvalidInput, "coframe must be square");
    for (int b = 0; b < n; ++b)
      if (!(eta_[a][b] == eta_[b][a])) throw Error(ErrorKind::InvalidInput, "frame metric not symmetric");
  }
  eta_inv_ = invert_rational(eta_);
  einv_ = invert_unit_matrix(e_);
  g_.assign(n, std::vector<RingElem>(n));
  ginv_.assign(n, std::vector<RingElem>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      RingElem s, t;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          if (!eta_[a][b].is_zero() && !e_[a][i].is_zero() && !e_[b][j].is_zero())
            s += RingElem(eta_[a][b]) * e_[a][i] * e_[b][j];
          if (!eta_inv_[a][b].is_zero() && !einv_[i][a].is_zero() && !einv_[j][b].is_zero())
            t += RingElem(eta_inv_[a][b]) * einv_[i][a] * einv_[j][b];
        }
      g_[i][j] = g_[j][i] = s;
      ginv_[i][j] = ginv_[j][i] = t;
    }
}

MetricField MetricField::from_coframe(ChartPtr chart, const std::vector<FormField>& coframe,
                                      RationalSquare frame_metric) {
  int n = chart->dim();
  if (static_cast<int>(coframe.size()) != n)
    throw Error(ErrorKind::InvalidInput, "need one coframe form per dimension");
  RingMatrix e(n, std::vector<RingElem>(n));
  for (int a = 0; a < n; ++a) {
    if (coframe[a].degree() != 1 || coframe[a].basis() != Basis::Coordinate)
      throw Error(ErrorKind::InvalidInput, "coframe entries must be coordinate one-forms");
    for (int i = 0; i < n; ++i) e[a][i] = coframe[a].component(IndexMask{1} << i);
  }
  return MetricField(std::move(chart), std::move(e), std::move(frame_metric));
}

FormField MetricField::coframe_form(int a) const {
  FormField f(chart_, 1, Basis::Coordinate);
  for (int i = 0; i < dim(); ++i) f.add(IndexMask{1} << i, e_[a][i]);
  return f;
}

FormField change_basis(const FormField& f, const RingMatrix& m, Basis target) {
  int n = f.dim();
  std::vector<std::vector<int>> nz(n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      if (!m[k][l].is_zero()) nz[k].push_back(l);
  FormField out(f.chart(), f.degree(), target);
  for (const auto& [mask, c] : f.components()) {
    std::map<IndexMask, RingElem> exp{{0, RingElem(1)}};
    for (int k : mask_indices(mask)) {
      std::map<IndexMask, RingElem> next;
      for (const auto& [bm, coef] : exp)
        for (int l : nz[k]) {
          if ((bm >> l) & 1) continue;
          RingElem t = coef * m[k][l];
          if (__builtin_popcount(bm >> (l + 1)) & 1) t = -t;
          next[bm | (IndexMask{1} << l)] += t;
        }
      exp.clear();
      for (auto& [bm, t] : next)
        if (!t.is_zero()) exp.emplace(bm, std::move(t));
    }
    for (const auto& [bm, t] : exp) out.add(bm, c * t);
  }
  return out;
}

FormField MetricField::to_frame(const FormField& f) const {
  if (f.basis() == Basis::Frame) return f;
  return change_basis(f, einv_, Basis::Frame);  // dx^i = einv[i][a] e^a
}

FormField MetricField::to_coordinate(const FormField& f) const {
  if (f.basis() == Basis::Coordinate) return f;
  return change_basis(f, e_, Basis::Coordinate);
}

FormField MetricField::flat(const VectorField& x) const {
  FormField f(chart_, 1, Basis::Coordinate);
  for (int i = 0; i < dim(); ++i) {
    RingElem s;
    for (int j = 0; j < dim(); ++j)
      if (!g_[i][j].is_zero() && !x.comps[j].is_zero()) s += g_[i][j] * x.comps[j];
    f.add(IndexMask{1} << i, s);
  }
  return f;
}

VectorField MetricField::sharp(const FormField& one) const {
  if (one.degree() != 1) throw Error(ErrorKind::DegreeMismatch, "sharp needs a one-form");
  FormField c = to_coordinate(one);
  VectorField x(chart_);
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) {
      RingElem oj = c.component(IndexMask{1} << j);
      if (!ginv_[i][j].is_zero() && !oj.is_zero()) x.comps[i] += ginv_[i][j] * oj;
    }
  return x;
}

std::vector<RingElem> MetricField::frame_components(const VectorField& x) const {
  std::vector<RingElem> out(dim());
  for (int a = 0; a < dim(); ++a)
    for (int i = 0; i < dim(); ++i)
      if (!e_[a][i].is_zero() && !x.comps[i].is_zero()) out[a] += e_[a][i] * x.comps[i];
  return out;
}

FormField interior(std::span<const RingElem> x, const FormField& a) {
  if (a.degree() == 0) throw Error(ErrorKind::DegreeZero, "interior product of a 0-form");
  FormField out(a.chart(), a.degree() - 1, a.basis());
  for (const auto& [m, c] : a.components())
    for (IndexMask rest = m; rest; rest &= rest - 1) {
      int i = __builtin_ctz(rest);
      if (x[i].is_zero()) continue;
      IndexMask bit = IndexMask{1} << i;
      RingElem t = x[i] * c;
      out.add(m ^ bit, (__builtin_popcount(m & (bit - 1)) & 1) ? -t : t);
    }
  return out;
}

FormField interior(const VectorField& x, const FormField& a) {
  if (a.basis() != Basis::Coordinate)
    throw Error(ErrorKind::BasisMismatch, "coordinate vector contracted with a frame form");
  return interior(std::span<const RingElem>(x.comps), a);
}

FormField exterior_derivative(const FormField& a) {
  if (a.basis() != Basis::Coordinate)
    throw Error(ErrorKind::FrameBasis, "exterior derivative needs the coordinate basis");
  FormField out(a.chart(), a.degree() + 1, Basis::Coordinate);
  for (const auto& [m, c] : a.components())
    for (int j = 0; j < a.dim(); ++j) {
      IndexMask bit = IndexMask{1} << j;
      if (m & bit || !c.depends_on(j)) continue;
      RingElem t = c.derivative(j);
      out.add(m | bit, (__builtin_popcount(m & (bit - 1)) & 1) ? -t : t);
    }
  return out;
}

FormField frame_volume_form(const MetricField& g) {
  FormField v(g.chart(), g.dim(), Basis::Frame);
  v.add((IndexMask{1} << g.dim()) - 1, RingElem(g.chart(), Rational(1)));
  return v;
}

FormField hodge_star(const FormField& a, const MetricField& g) {
  int n = g.dim();
  FormField raised = change_basis(g.to_frame(a), to_ring(g.frame_metric_inverse(), g.chart()), Basis::Frame);
  IndexMask full = (IndexMask{1} << n) - 1;
  FormField out(g.chart(), n - a.degree(), Basis::Frame);
  for (const auto& [m, c] : raised.components()) {
    IndexMask rest = full ^ m;
    out.add(rest, concat_sign(m, rest) > 0 ? c : -c);
  }
  return a.basis() == Basis::Frame ? out : g.to_coordinate(out);
}

RingElem form_inner(const FormField& a, const FormField& b, const MetricField& g) {
  if (a.degree() != b.degree()) throw Error(ErrorKind::DegreeMismatch, "inner product of different degrees");
  FormField fa = g.to_frame(a);
  FormField rb = change_basis(g.to_frame(b), to_ring(g.frame_metric_inverse(), g.chart()), Basis::Frame);
  RingElem s(g.chart(), Rational(0));
  for (const auto& [m, c] : fa.components()) {
    auto it = rb.components().find(m);
    if (it != rb.components().end()) s += c * it->second;
  }
  return s;
}

Christoffel christoffel(const MetricField& g) {
  int n = g.dim();
  // dg[(l*n + i)*n + j] = d_l g_ij
  std::vector<RingElem> dg(n * n * n);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        if (g.g(i, j).depends_on(l)) dg[(l * n + i) * n + j] = dg[(l * n + j) * n + i] = g.g(i, j).derivative(l);
  auto d = [&](int l, int i, int j) -> const RingElem& { return dg[(l * n + i) * n + j]; };
  Christoffel gam{n, std::vector<RingElem>(n * n * n)};
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      std::vector<RingElem> lowered(n);
      bool any = false;
      for (int l = 0; l < n; ++l) {
        lowered[l] = (d(i, j, l) + d(j, i, l) - d(l, i, j)) * RingElem(Rational(1, 2));
        any |= !lowered[l].is_zero();
      }
      if (!any) continue;
      for (int k = 0; k < n; ++k) {
        RingElem s;
        for (int l = 0; l < n; ++l)
          if (!g.ginv(k, l).is_zero() && !lowered[l].is_zero()) s += g.ginv(k, l) * lowered[l];
        gam(k, i, j) = s;
        gam(k, j, i) = s;
      }
    }
  return gam;
}

Curvature riemann_ricci_scalar(const MetricField& g) { return riemann_ricci_scalar(g, christoffel(g)); }

Curvature riemann_ricci_scalar(const MetricField& g, const Christoffel& gam) {
  int n = g.dim();
  Curvature cur;
  cur.n = n;
  cur.riemann.assign(n * n * n * n, RingElem());
  auto R = [&](int k, int l, int i, int j) -> RingElem& { return cur.riemann[((k * n + l) * n + i) * n + j]; };
  // dgam[((i*n + k)*n + j)*n + l] = d_i Gamma^k_jl
  std::vector<RingElem> dgam(n * n * n * n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (int l = j; l < n; ++l)
          if (gam(k, j, l).depends_on(i))
            dgam[((i * n + k) * n + j) * n + l] = dgam[((i * n + k) * n + l) * n + j] = gam(k, j, l).derivative(i);
  auto dG = [&](int i, int k, int j, int l) -> const RingElem& { return dgam[((i * n + k) * n + j) * n + l]; };
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          RingElem s = dG(i, k, j, l) - dG(j, k, i, l);
          for (int m = 0; m < n; ++m) {
            if (!gam(k, i, m).is_zero() && !gam(m, j, l).is_zero()) s += gam(k, i, m) * gam(m, j, l);
            if (!gam(k, j, m).is_zero() && !gam(m, i, l).is_zero()) s -= gam(k, j, m) * gam(m, i, l);
          }
          if (s.is_zero()) continue;
          R(k, l, j, i) = -s;
          R(k, l, i, j) = std::move(s);
        }
  cur.ricci.assign(n, std::vector<RingElem>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (!R(k, i, k, j).is_zero()) cur.ricci[i][j] += R(k, i, k, j);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!g.ginv(i, j).is_zero() && !cur.ricci[i][j].is_zero()) cur.scalar += g.ginv(i, j) * cur.ricci[i][j];
  return cur;
}

std::vector<RingMatrix> spin_connection(const MetricField& g) {
  int n = g.dim();
  const auto& eta = g.frame_metric();
  // C^a_bc with de^a = 1/2 C^a_bc e^b ^ e^c
  std::vector<std::vector<RingElem>> up(n, std::vector<RingElem>(n * n));
  for (int a = 0; a < n; ++a) {
    FormField dea = g.to_frame(exterior_derivative(g.coframe_form(a)));
    for (const auto& [m, c] : dea.components()) {
      auto idx = mask_indices(m);
      up[a][idx[0] * n + idx[1]] = c;
      up[a][idx[1] * n + idx[0]] = -c;
    }
  }
  std::vector<RingElem> low(n * n * n);  // C_abc
  for (int a = 0; a < n; ++a)
    for (int d = 0; d < n; ++d) {
      if (eta[a][d].is_zero()) continue;
      for (int bc = 0; bc < n * n; ++bc)
        if (!up[d][bc].is_zero()) low[a * n * n + bc] += RingElem(eta[a][d]) * up[d][bc];
    }
  auto C = [&](int a, int b, int c) -> const RingElem& { return low[(a * n + b) * n + c]; };
  std::vector<RingMatrix> omega(n, RingMatrix(n, std::vector<RingElem>(n)));
  const RingElem half(Rational(1, 2));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        RingElem w = (C(a, b, c) + C(b, c, a) - C(c, a, b)) * half;
        if (w.is_zero()) continue;
        for (int i = 0; i < n; ++i) {
          if (g.coframe()[c][i].is_zero()) continue;
          RingElem t = w * g.coframe()[c][i];
          omega[i][a][b] += t;
          omega[i][b][a] -= t;
        }
      }
  return omega;
}

RingMatrix killing_check(const VectorField& xi, const MetricField& g) {
  int n = g.dim();
  RingMatrix dxi(n, std::vector<RingElem>(n));  // dxi[i][k] = d_i xi^k
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (xi.comps[k].depends_on(i)) dxi[i][k] = xi.comps[k].derivative(i);
  RingMatrix res(n, std::vector<RingElem>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      RingElem s;
      for (int k = 0; k < n; ++k) {
        if (!xi.comps[k].is_zero() && g.g(i, j).depends_on(k)) s += xi.comps[k] * g.g(i, j).derivative(k);
        if (!g.g(k, j).is_zero() && !dxi[i][k].is_zero()) s += g.g(k, j) * dxi[i][k];
        if (!g.g(i, k).is_zero() && !dxi[j][k].is_zero()) s += g.g(i, k) * dxi[j][k];
      }
      res[i][j] = s;
      res[j][i] = s;
    }
  return res;
}

}  // namespace maxsusy
