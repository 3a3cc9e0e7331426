#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "maxsusy/ring_elem.hpp"

namespace maxsusy {

enum class Basis { Coordinate, Frame };

// Index sets are bitmasks over 0..dim-1; a component stored under mask
// {a1 < ... < ap} is the coefficient of dx^a1 ^ ... ^ dx^ap (or of the
// frame coframe products).
using IndexMask = std::uint32_t;

inline int mask_degree(IndexMask m) { return __builtin_popcount(m); }
std::vector<int> mask_indices(IndexMask m);

// Sign of sorting idx into increasing order, 0 if an index repeats.
int sort_sign(std::span<const int> idx, IndexMask* mask);

class FormField {
 public:
  FormField() = default;
  FormField(ChartPtr chart, int degree, Basis basis);

  const ChartPtr& chart() const { return chart_; }
  int dim() const { return chart_->dim(); }
  int degree() const { return degree_; }
  Basis basis() const { return basis_; }

  const std::map<IndexMask, RingElem>& components() const { return comps_; }
  RingElem component(IndexMask m) const;
  // Coefficient of the wedge of the listed indices in that order.
  RingElem component(std::span<const int> idx) const;

  void set(IndexMask m, RingElem c);
  void add(IndexMask m, const RingElem& c);
  // Adds c * (dx^idx0 ^ dx^idx1 ^ ...), any index order.
  void add(std::span<const int> idx, const RingElem& c);
  void add(std::initializer_list<int> idx, const RingElem& c) {
    add(std::span<const int>(idx.begin(), idx.size()), c);
  }

  bool is_zero() const { return comps_.empty(); }

  FormField& operator+=(const FormField& o);
  FormField& operator-=(const FormField& o);
  FormField& operator*=(const RingElem& s);
  friend FormField operator+(FormField a, const FormField& b) { return a += b; }
  friend FormField operator-(FormField a, const FormField& b) { return a -= b; }
  friend FormField operator*(FormField a, const RingElem& s) { return a *= s; }
  friend FormField operator*(const RingElem& s, FormField a) { return a *= s; }
  FormField operator-() const;

  friend bool operator==(const FormField& a, const FormField& b);

 private:
  void check_compatible(const FormField& o) const;

  ChartPtr chart_;
  int degree_ = 0;
  Basis basis_ = Basis::Coordinate;
  std::map<IndexMask, RingElem> comps_;
};

FormField wedge(const FormField& a, const FormField& b);

}  // namespace maxsusy
