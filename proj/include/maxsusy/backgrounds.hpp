#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maxsusy/linalg.hpp"
#include "maxsusy/sugra.hpp"

namespace maxsusy {

// Flat mostly-plus metric on x0..x10, F = 0.
Background minkowski11();

struct CWData {
  std::vector<Rational> lambda;  // eigenvalues of A, one per transverse direction
  Rational mu;                   // flux magnitude
};

// Cahen-Wallach background on (xp, xm, x1..x9):
//   g = 2 dxp dxm + (sum lambda_i x_i^2) dxm^2 + |dx|^2,  F = mu dxm ^ dx1 ^ dx2 ^ dx3.
// `periodic_base`, if set, registers xm as periodic with that base
// frequency so trigonometric fields in xm can live on the same chart.
Background cahen_wallach(const CWData& data, bool strict = true,
                         std::optional<Rational> periodic_base = std::nullopt);

// The eigenvalues (-1 x3, -1/4 x6) and mu = 3.
CWData maximal_cw_data();
Background maximal_cw();

// Documented non-solution: the maximal pp-wave with dx4 ^ dx5 ^ dx6 ^ dx7
// added to the flux. Its curvature leaves the symplectic algebra.
Background perturbed_cw();

enum class FreundRubinKind { AdS4xS7, AdS7xS4 };

// AdS factor on a Poincare patch (t, u.., z), sphere stereographically
// (y..). Flux sqrt(6|s|) times the volume form of the 4-dimensional factor.
Background freund_rubin(FreundRubinKind kind, const Rational& s);

struct FreundRubinFactors {
  int ads_dim = 0;  // 4 or 7
  Rational ads_radius, sphere_radius, flux;
};
FreundRubinFactors freund_rubin_factors(FreundRubinKind kind, const Rational& s);

// Traces of the Ricci tensor over coordinates [0, split) and [split, n):
// the factor scalar curvatures of a product metric.
std::pair<RingElem, RingElem> block_scalars(const MetricField& g, const Curvature& cur, int split);

// The Lie algebra g_A with basis e+, e-, v_1..v_m, v*_1..v*_m.
class LieAlgebraTable {
 public:
  explicit LieAlgebraTable(std::vector<Rational> lambda);

  int dim() const { return 2 + 2 * m_; }
  int m() const { return m_; }
  const std::vector<std::string>& labels() const { return labels_; }
  int e_plus() const { return 0; }
  int e_minus() const { return 1; }
  int v(int i) const { return 2 + i; }
  int v_star(int i) const { return 2 + m_ + i; }

  // [x_i, x_j] as a sparse vector over the basis
  const linalg::SparseVec& bracket(int i, int j) const { return table_[i * dim() + j]; }
  linalg::SparseVec bracket(const linalg::SparseVec& x, const linalg::SparseVec& y) const;

  // B on p = span{e+, e-, v}, as a dim x dim matrix (zero on k)
  const std::vector<std::vector<Rational>>& B() const { return b_; }

  bool jacobi_holds() const;
  bool symmetric_split_holds() const;
  bool second_derived_central() const;

 private:
  int m_;
  std::vector<Rational> lambda_;
  std::vector<std::string> labels_;
  std::vector<linalg::SparseVec> table_;
  std::vector<std::vector<Rational>> b_;
};

LieAlgebraTable cw_lie_algebra(const std::vector<Rational>& lambda);

// Canonical representative under positive scaling and permutation: sorted
// descending, divided by max |lambda_i|.
struct ModuliForm {
  std::vector<Rational> direction;
  Rational norm_sq;  // |direction|^2
  friend bool operator==(const ModuliForm& a, const ModuliForm& b) { return a.direction == b.direction; }
};
ModuliForm moduli_canonicalize(const std::vector<Rational>& lambda);

struct KillingBasis {
  Background background;  // on a chart with xm periodic
  std::vector<VectorField> fields;
  std::vector<std::string> names;
};

// Requires every -lambda_i to be the square of a positive rational.
KillingBasis cw_killing_basis(const CWData& data);

// Linear independence over constants: rank of the coefficient vectors of
// the fields expanded in monomial x harmonic functions.
std::size_t constant_rank(const std::vector<VectorField>& fields);

}  // namespace maxsusy
