#pragma once

// Random generators shared by the property tests. All draws go through a
// seeded std::mt19937_64 so failures reproduce.

#include <random>
#include <vector>

#include "maxsusy/chart.hpp"
#include "maxsusy/poly.hpp"
#include "maxsusy/ring_elem.hpp"

namespace maxsusy::testing {

using Rng = std::mt19937_64;

inline Rational random_rational(Rng& rng, int num_range = 5, int den_range = 3) {
  std::uniform_int_distribution<int> n(-num_range, num_range), d(1, den_range);
  return Rational(n(rng), d(rng));
}

inline Rational random_nonzero_rational(Rng& rng, int num_range = 5, int den_range = 3) {
  for (;;) {
    Rational q = random_rational(rng, num_range, den_range);
    if (!q.is_zero()) return q;
  }
}

inline Poly random_poly(Rng& rng, int nvars, int max_terms = 4, int max_exp = 2) {
  std::uniform_int_distribution<int> nterms(0, max_terms), e(0, max_exp), v(0, nvars - 1);
  std::vector<Term> terms;
  int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    Monomial m;
    // a couple of variables per term keeps the products small
    for (int j = 0; j < 2; ++j) m.exp[v(rng)] = static_cast<std::uint8_t>(e(rng));
    terms.push_back({m, random_rational(rng)});
  }
  return Poly::from_terms(std::move(terms));
}

// Random element of the chart's ring, using its denominator factors and
// Fourier layer when present.
inline RingElem random_elem(Rng& rng, const ChartPtr& chart, int max_terms = 3) {
  RingElem r(chart, random_poly(rng, chart->dim(), max_terms));
  std::uniform_int_distribution<int> coin(0, 2), k(1, 3), pw(0, 2);
  if (chart->periodic() && coin(rng) == 0) {
    RingElem h = coin(rng) ? RingElem::cos_harmonic(chart, k(rng)) : RingElem::sin_harmonic(chart, k(rng));
    r += RingElem(chart, random_poly(rng, chart->dim(), 2)) * h;
  }
  for (int j = 0; j < chart->factor_count(); ++j) {
    int p = pw(rng);
    for (int i = 0; i < p; ++i) r *= RingElem::inverse_factor(chart, j);
  }
  return r;
}

}  // namespace maxsusy::testing
