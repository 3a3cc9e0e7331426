#pragma once

#include <string>

#include "maxsusy/sugra.hpp"

namespace maxsusy {

// Type IIA fields on the 10d base of a circle reduction. The dilaton is kept
// exponentiated. Forms are in the coordinate basis of chart10. The fiber_*
// fields say where the circle coordinate and its frame row sit in 11d, so
// oxidize can rebuild the original ordering.
struct IIAData {
  ChartPtr chart10;
  MetricField h;
  RingElem dilaton_exp;
  FormField H3, A1, G4;
  std::string fiber_var = "x10";
  int fiber_coord = 10;
  int fiber_frame = 10;
};

bool operator==(const IIAData& a, const IIAData& b);

// Reduction along the coordinate vector field d_theta. Requires every metric
// and flux coefficient to be theta-independent, g_theta,theta to be a
// positive unit, and an adapted coframe: exactly one row e^a* with a dtheta
// component, orthonormal to the rest with eta_a*a* = 1.
IIAData reduce(const Background& bg, int theta);

// g = h + e^Phi (dtheta + A)^2, F = (dtheta + A) ^ H + G. e^Phi must have
// an exact square root; throws FluxNotClosed when dF != 0.
Background oxidize(const IIAData& iia);

}  // namespace maxsusy
