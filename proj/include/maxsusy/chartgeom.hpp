#pragma once

#include <span>
#include <vector>

#include "maxsusy/form.hpp"
#include "maxsusy/ring_elem.hpp"

namespace maxsusy {

using RingMatrix = std::vector<std::vector<RingElem>>;
using RationalSquare = std::vector<std::vector<Rational>>;

struct VectorField {
  ChartPtr chart;
  std::vector<RingElem> comps;  // coordinate basis

  VectorField() = default;
  explicit VectorField(ChartPtr c) : chart(std::move(c)), comps(chart->dim()) {}
  VectorField(ChartPtr c, std::vector<RingElem> v) : chart(std::move(c)), comps(std::move(v)) {}
  static VectorField coordinate(const ChartPtr& c, int i);

  int dim() const { return static_cast<int>(comps.size()); }
  bool is_zero() const;
};

// Inverse of a square RingElem matrix by Gauss-Jordan elimination with unit
// pivots. Throws SingularCoframe if some column has no unit pivot.
RingMatrix invert_unit_matrix(const RingMatrix& m);

// Metric g = eta_ab e^a e^b from a coframe e^a = E[a][i] dx^i and a
// constant frame metric eta.
class MetricField {
 public:
  MetricField() = default;
  MetricField(ChartPtr chart, RingMatrix coframe, RationalSquare frame_metric);
  static MetricField from_coframe(ChartPtr chart, const std::vector<FormField>& coframe,
                                  RationalSquare frame_metric);

  const ChartPtr& chart() const { return chart_; }
  int dim() const { return chart_->dim(); }
  const RingMatrix& coframe() const { return e_; }          // E[a][i]
  const RingMatrix& frame_vectors() const { return einv_; } // E_a = einv[i][a] d_i
  const RationalSquare& frame_metric() const { return eta_; }
  const RationalSquare& frame_metric_inverse() const { return eta_inv_; }
  const RingElem& g(int i, int j) const { return g_[i][j]; }
  const RingElem& ginv(int i, int j) const { return ginv_[i][j]; }
  const RingMatrix& metric() const { return g_; }
  const RingMatrix& inverse_metric() const { return ginv_; }

  FormField coframe_form(int a) const;  // e^a in the coordinate basis
  FormField to_frame(const FormField& f) const;
  FormField to_coordinate(const FormField& f) const;

  FormField flat(const VectorField& x) const;       // g(x, .)
  VectorField sharp(const FormField& one) const;    // g^{-1}(one, .)
  // Frame components x^a of a coordinate vector field.
  std::vector<RingElem> frame_components(const VectorField& x) const;

 private:
  ChartPtr chart_;
  RingMatrix e_, einv_, g_, ginv_;
  RationalSquare eta_, eta_inv_;
};

// Rewrites f with old basis one-forms b^k = sum_l m[k][l] n^l in terms of
// the new basis n.
FormField change_basis(const FormField& f, const RingMatrix& m, Basis target);

FormField interior(const VectorField& x, const FormField& a);
// Contraction with components given in a's own basis.
FormField interior(std::span<const RingElem> x, const FormField& a);
FormField exterior_derivative(const FormField& a);
FormField hodge_star(const FormField& a, const MetricField& g);
RingElem form_inner(const FormField& a, const FormField& b, const MetricField& g);
FormField frame_volume_form(const MetricField& g);  // e^0 ^ ... ^ e^{n-1}, frame basis

// Flat index helpers for curvature arrays.
struct Christoffel {
  int n = 0;
  std::vector<RingElem> v;  // Gamma^k_ij at (k*n + i)*n + j
  const RingElem& operator()(int k, int i, int j) const { return v[(k * n + i) * n + j]; }
  RingElem& operator()(int k, int i, int j) { return v[(k * n + i) * n + j]; }
};

struct Curvature {
  int n = 0;
  std::vector<RingElem> riemann;  // R^k_lij at ((k*n + l)*n + i)*n + j
  RingMatrix ricci;               // Ric_ij = R^k_ikj
  RingElem scalar;
  const RingElem& R(int k, int l, int i, int j) const {
    return riemann[((k * n + l) * n + i) * n + j];
  }
};

Christoffel christoffel(const MetricField& g);
Curvature riemann_ricci_scalar(const MetricField& g);
Curvature riemann_ricci_scalar(const MetricField& g, const Christoffel& gamma);

// omega[i][a][b]: the connection one-forms omega_ab (frame indices lowered
// with eta) evaluated on the coordinate direction d_i. Satisfies
// de^a + omega^a_b ^ e^b = 0 and omega_ab = -omega_ba.
std::vector<RingMatrix> spin_connection(const MetricField& g);

// (L_xi g)_ij
RingMatrix killing_check(const VectorField& xi, const MetricField& g);

}  // namespace maxsusy
