#pragma once

// Central-difference reference values for Christoffel symbols and the
// Riemann tensor, independent of the symbolic derivative code: only metric
// values g_ij(x) are taken from the exact engine.

#include <cmath>
#include <vector>

#include "maxsusy/chartgeom.hpp"

namespace maxsusy::testing {

struct FdCurvature {
  int n = 0;
  std::vector<long double> gamma;    // (k*n + i)*n + j
  std::vector<long double> riemann;  // ((k*n + l)*n + i)*n + j
};

inline std::vector<long double> metric_at(const MetricField& g, std::vector<long double> x) {
  int n = g.dim();
  std::vector<long double> out(n * n);
  std::span<const long double> s(x);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) out[i * n + j] = out[j * n + i] = g.g(i, j).evaluate(s);
  return out;
}

inline std::vector<long double> invert(std::vector<long double> a, int n) {
  std::vector<long double> inv(n * n, 0.0L);
  for (int i = 0; i < n; ++i) inv[i * n + i] = 1.0L;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::fabs(a[r * n + c]) > std::fabs(a[piv * n + c])) piv = r;
    for (int k = 0; k < n; ++k) {
      std::swap(a[piv * n + k], a[c * n + k]);
      std::swap(inv[piv * n + k], inv[c * n + k]);
    }
    long double s = 1.0L / a[c * n + c];
    for (int k = 0; k < n; ++k) {
      a[c * n + k] *= s;
      inv[c * n + k] *= s;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      long double f = a[r * n + c];
      if (f == 0.0L) continue;
      for (int k = 0; k < n; ++k) {
        a[r * n + k] -= f * a[c * n + k];
        inv[r * n + k] -= f * inv[c * n + k];
      }
    }
  }
  return inv;
}

inline FdCurvature fd_curvature(const MetricField& g, const std::vector<long double>& x,
                                long double h = 1e-4L) {
  int n = g.dim();
  auto shifted = [&](int a, long double da, int b, long double db) {
    auto y = x;
    y[a] += da;
    y[b] += db;
    return metric_at(g, y);
  };
  auto g0 = metric_at(g, x);
  auto gi = invert(g0, n);
  // dg[(l*n + i)*n + j] = d_l g_ij ; ddg[((a*n + b)*n + i)*n + j] = d_a d_b g_ij
  std::vector<long double> dg(n * n * n), ddg(n * n * n * n);
  for (int l = 0; l < n; ++l) {
    auto p = shifted(l, h, l, 0), m = shifted(l, -h, l, 0);
    auto p2 = shifted(l, h / 2, l, 0), m2 = shifted(l, -h / 2, l, 0);
    for (int ij = 0; ij < n * n; ++ij) {
      // one Richardson step on the central difference
      long double coarse = (p[ij] - m[ij]) / (2 * h), fine = (p2[ij] - m2[ij]) / h;
      dg[l * n * n + ij] = (4 * fine - coarse) / 3;
      ddg[(l * n + l) * n * n + ij] = (p[ij] - 2 * g0[ij] + m[ij]) / (h * h);
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      auto pp = shifted(a, h, b, h), pm = shifted(a, h, b, -h), mp = shifted(a, -h, b, h),
           mm = shifted(a, -h, b, -h);
      for (int ij = 0; ij < n * n; ++ij) {
        long double v = (pp[ij] - pm[ij] - mp[ij] + mm[ij]) / (4 * h * h);
        ddg[(a * n + b) * n * n + ij] = v;
        ddg[(b * n + a) * n * n + ij] = v;
      }
    }
  auto Gi = [&](int i, int j) { return gi[i * n + j]; };
  auto D = [&](int l, int i, int j) { return dg[(l * n + i) * n + j]; };
  auto DD = [&](int a, int b, int i, int j) { return ddg[((a * n + b) * n + i) * n + j]; };

  FdCurvature out;
  out.n = n;
  out.gamma.assign(n * n * n, 0.0L);
  // lowered Gamma_{l,ij} and its derivative d_a Gamma_{l,ij}
  auto low = [&](int l, int i, int j) { return 0.5L * (D(i, j, l) + D(j, i, l) - D(l, i, j)); };
  auto dlow = [&](int a, int l, int i, int j) {
    return 0.5L * (DD(a, i, j, l) + DD(a, j, i, l) - DD(a, l, i, j));
  };
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        long double s = 0;
        for (int l = 0; l < n; ++l) s += Gi(k, l) * low(l, i, j);
        out.gamma[(k * n + i) * n + j] = s;
      }
  auto gam = [&](int k, int i, int j) { return out.gamma[(k * n + i) * n + j]; };
  // d_a g^{kl} = -g^{km} d_a g_mp g^{pl}
  std::vector<long double> dgi(n * n * n, 0.0L);
  for (int a = 0; a < n; ++a)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        long double s = 0;
        for (int m = 0; m < n; ++m)
          for (int p = 0; p < n; ++p) s -= Gi(k, m) * D(a, m, p) * Gi(p, l);
        dgi[(a * n + k) * n + l] = s;
      }
  // d_a Gamma^k_ij
  auto dgam = [&](int a, int k, int i, int j) {
    long double s = 0;
    for (int l = 0; l < n; ++l) s += dgi[(a * n + k) * n + l] * low(l, i, j) + Gi(k, l) * dlow(a, l, i, j);
    return s;
  };
  out.riemann.assign(n * n * n * n, 0.0L);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (i == j) continue;
          long double s = dgam(i, k, j, l) - dgam(j, k, i, l);
          for (int m = 0; m < n; ++m) s += gam(k, i, m) * gam(m, j, l) - gam(k, j, m) * gam(m, i, l);
          out.riemann[((k * n + l) * n + i) * n + j] = s;
        }
  return out;
}

// Largest componentwise deviation relative to max(|exact|_inf, 1).
inline long double relative_deviation(const std::vector<long double>& exact,
                                      const std::vector<long double>& approx) {
  long double scale = 1.0L, dev = 0.0L;
  for (long double v : exact) scale = std::max(scale, std::fabs(v));
  for (std::size_t i = 0; i < exact.size(); ++i) dev = std::max(dev, std::fabs(exact[i] - approx[i]));
  return dev / scale;
}

}  // namespace maxsusy::testing
