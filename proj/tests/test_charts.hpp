#pragma once

// Small geometries used to exercise chartgeom independently of the
// supergravity catalog.

#include <string>
#include <vector>

#include "maxsusy/chartgeom.hpp"

namespace maxsusy::testing {

inline RationalSquare identity_eta(int n, int timelike = -1) {
  RationalSquare eta(n, std::vector<Rational>(n));
  for (int a = 0; a < n; ++a) eta[a][a] = Rational(a == timelike ? -1 : 1);
  return eta;
}

inline MetricField flat_metric(int n, bool lorentzian = true) {
  std::vector<std::string> v;
  for (int i = 0; i < n; ++i) v.push_back("x" + std::to_string(i));
  auto chart = make_chart(v);
  RingMatrix e(n, std::vector<RingElem>(n));
  for (int a = 0; a < n; ++a) e[a][a] = RingElem(chart, Rational(1));
  return MetricField(chart, e, identity_eta(n, lorentzian ? 0 : -1));
}

// Unit round sphere in stereographic coordinates: 4 |dy|^2 / (1 + |y|^2)^2.
inline MetricField sphere_metric(int n) {
  std::vector<std::string> v;
  Poly p(Rational(1));
  for (int i = 0; i < n; ++i) {
    v.push_back("y" + std::to_string(i + 1));
    p = p + Poly::variable(i).pow(2);
  }
  auto chart = make_chart(v, {p});
  RingMatrix e(n, std::vector<RingElem>(n));
  for (int a = 0; a < n; ++a) e[a][a] = RingElem(chart, Rational(2)) * RingElem::inverse_factor(chart, 0);
  return MetricField(chart, e, identity_eta(n));
}

// 2 dx+ dx- + (sum_i a_i x_i^2) dx-^2 + |dx|^2 with lightcone frame
// e+ = dx+ + H/2 dx-, e- = dx-, e^i = dx^i.
inline MetricField cw_metric(const std::vector<Rational>& a_diag) {
  int m = static_cast<int>(a_diag.size());
  std::vector<std::string> v = {"xp", "xm"};
  for (int i = 1; i <= m; ++i) v.push_back("x" + std::to_string(i));
  auto chart = make_chart(v);
  int n = m + 2;
  RingElem h(chart, Rational(0));
  for (int i = 0; i < m; ++i) h += RingElem(a_diag[i]) * RingElem::variable(chart, i + 2).pow(2);
  RingMatrix e(n, std::vector<RingElem>(n));
  e[0][0] = RingElem(chart, Rational(1));
  e[0][1] = h * RingElem(Rational(1, 2));
  e[1][1] = RingElem(chart, Rational(1));
  for (int i = 2; i < n; ++i) e[i][i] = RingElem(chart, Rational(1));
  RationalSquare eta(n, std::vector<Rational>(n));
  eta[0][1] = eta[1][0] = Rational(1);
  for (int i = 2; i < n; ++i) eta[i][i] = Rational(1);
  return MetricField(chart, e, eta);
}

inline std::vector<Rational> maximal_cw_eigenvalues() {
  std::vector<Rational> a(9, Rational(-1, 4));
  a[0] = a[1] = a[2] = Rational(-1);
  return a;
}

}  // namespace maxsusy::testing
