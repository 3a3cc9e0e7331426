#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "maxsusy/form.hpp"
#include "maxsusy/rational.hpp"
#include "maxsusy/ring_elem.hpp"

namespace maxsusy {

// Dense square rational matrix.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n) {}
  static RationalMatrix identity(int n);

  int size() const { return n_; }
  const Rational& operator()(int i, int j) const { return a_[i * n_ + j]; }
  Rational& operator()(int i, int j) { return a_[i * n_ + j]; }

  RationalMatrix transpose() const;
  bool is_zero() const;

  RationalMatrix& operator+=(const RationalMatrix& o);
  RationalMatrix& operator-=(const RationalMatrix& o);
  RationalMatrix& operator*=(const Rational& s);
  friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) { return a += b; }
  friend RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b) { return a -= b; }
  friend RationalMatrix operator*(RationalMatrix a, const Rational& s) { return a *= s; }
  friend RationalMatrix operator*(const Rational& s, RationalMatrix a) { return a *= s; }
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  int n_ = 0;
  std::vector<Rational> a_;
};

struct SparseEntry {
  std::uint8_t row, col;
  Rational value;
};
// Entries sorted by (row, col), no zeros.
using SparseMatrix = std::vector<SparseEntry>;

SparseMatrix to_sparse(const RationalMatrix& m);

// 32x32 matrix of ring elements on one chart.
class SpinorMatrix {
 public:
  static constexpr int N = 32;

  SpinorMatrix() : e_(N * N) {}
  explicit SpinorMatrix(ChartPtr chart) : chart_(std::move(chart)), e_(N * N) {}
  SpinorMatrix(ChartPtr chart, const RationalMatrix& m);
  static SpinorMatrix identity(ChartPtr chart);

  const ChartPtr& chart() const { return chart_; }
  const RingElem& operator()(int i, int j) const { return e_[i * N + j]; }
  RingElem& operator()(int i, int j) { return e_[i * N + j]; }

  // this += c * m
  void add_scaled(const SparseMatrix& m, const RingElem& c);

  bool is_zero() const;
  std::size_t nonzero_count() const;

  SpinorMatrix& operator+=(const SpinorMatrix& o);
  SpinorMatrix& operator-=(const SpinorMatrix& o);
  SpinorMatrix& operator*=(const RingElem& s);
  friend SpinorMatrix operator+(SpinorMatrix a, const SpinorMatrix& b) { return a += b; }
  friend SpinorMatrix operator-(SpinorMatrix a, const SpinorMatrix& b) { return a -= b; }
  friend SpinorMatrix operator*(SpinorMatrix a, const RingElem& s) { return a *= s; }
  friend SpinorMatrix operator*(const RingElem& s, SpinorMatrix a) { return a *= s; }
  friend SpinorMatrix operator*(const SpinorMatrix& a, const SpinorMatrix& b);
  friend bool operator==(const SpinorMatrix& a, const SpinorMatrix& b);

  SpinorMatrix derivative(int var) const;
  RationalMatrix evaluate(std::span<const Rational> point) const;
  std::vector<long double> evaluate(std::span<const long double> point) const;

 private:
  ChartPtr chart_;
  std::vector<RingElem> e_;
};

SpinorMatrix commutator(const SpinorMatrix& a, const SpinorMatrix& b);

// Real 32-dimensional representation of the Clifford algebra of an
// admissible constant frame metric (diagonal mostly-plus, or a lightcone
// pair replacing one (-1,+1) pair). gamma(a) is the image c(e^a) of the
// a-th frame coframe element, so gamma(a)gamma(b) + gamma(b)gamma(a) =
// 2 eta^{ab}. c applied to the frame volume form is +Identity.
class GammaRep {
 public:
  static constexpr int kDim = 11;
  static constexpr int kSpinor = 32;

  const std::vector<std::vector<Rational>>& frame_metric() const { return eta_; }
  const std::vector<std::vector<Rational>>& inverse_metric() const { return eta_inv_; }
  const RationalMatrix& gamma(int a) const { return gammas_[a]; }
  // Orthonormal generators: index 0 squares to -1, the rest to +1.
  const RationalMatrix& orthonormal_gamma(int b) const { return ortho_[b]; }
  // e^a = sum_b coframe_change[a][b] theta^b, theta the orthonormal coframe.
  const std::vector<std::vector<Rational>>& coframe_change() const { return n_; }
  // c(e^{a1} ^ ... ^ e^{ap}) for the frame indices in the mask.
  const SparseMatrix& basis_action(IndexMask m) const { return basis_[m]; }
  bool is_lightcone() const { return lightcone_; }

 private:
  friend GammaRep build_gamma(const std::vector<std::vector<Rational>>& frame_metric);

  std::vector<std::vector<Rational>> eta_, eta_inv_, n_;
  std::array<RationalMatrix, kDim> gammas_, ortho_;
  std::vector<SparseMatrix> basis_;  // 2^11 entries
  bool lightcone_ = false;
};

GammaRep build_gamma(const std::vector<std::vector<Rational>>& frame_metric);

// diag(-1, +1, ..., +1)
std::vector<std::vector<Rational>> minkowski_frame_metric();
// +1 on the (0,1)/(1,0) slots, +1 on the remaining diagonal
std::vector<std::vector<Rational>> lightcone_frame_metric();

SpinorMatrix clifford_action(const FormField& form, const GammaRep& rep);

struct SymplecticForm {
  RationalMatrix C;
};

SymplecticForm build_symplectic(const GammaRep& rep);

// V^a = eps1^T C gamma(a) eps2: the vector with g(V, X) = (eps1, X . eps2).
std::vector<RingElem> spinor_bilinear_vector(std::span<const RingElem> eps1,
                                             std::span<const RingElem> eps2, const GammaRep& rep,
                                             const SymplecticForm& C);

}  // namespace maxsusy
