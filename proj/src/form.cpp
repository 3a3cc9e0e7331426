#include "maxsusy/form.hpp"

#include "maxsusy/errors.hpp"

namespace maxsusy {

std::vector<int> mask_indices(IndexMask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(__builtin_ctz(m));
    m &= m - 1;
  }
  return out;
}

int sort_sign(std::span<const int> idx, IndexMask* mask) {
  IndexMask m = 0;
  int sign = 1;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    IndexMask bit = IndexMask{1} << idx[i];
    if (m & bit) return 0;
    // inversions contributed by idx[i]: earlier indices larger than it
    if (__builtin_popcount(m & ~((bit << 1) - 1)) & 1) sign = -sign;
    m |= bit;
  }
  if (mask) *mask = m;
  return sign;
}

FormField::FormField(ChartPtr chart, int degree, Basis basis)
    : chart_(std::move(chart)), degree_(degree), basis_(basis) {
  // degree above dim is allowed and simply has no components
  if (degree < 0)
    throw Error(ErrorKind::DegreeOutOfRange, "form degree " + std::to_string(degree));
}

RingElem FormField::component(IndexMask m) const {
  auto it = comps_.find(m);
  return it == comps_.end() ? RingElem(chart_, Rational(0)) : it->second;
}

RingElem FormField::component(std::span<const int> idx) const {
  IndexMask m = 0;
  int s = sort_sign(idx, &m);
  if (s == 0) return RingElem(chart_, Rational(0));
  RingElem c = component(m);
  return s > 0 ? c : -c;
}

void FormField::set(IndexMask m, RingElem c) {
  if (mask_degree(m) != degree_) throw Error(ErrorKind::DegreeMismatch, "component degree");
  if (c.is_zero())
    comps_.erase(m);
  else
    comps_[m] = std::move(c);
}

void FormField::add(IndexMask m, const RingElem& c) {
  if (c.is_zero()) return;
  if (mask_degree(m) != degree_) throw Error(ErrorKind::DegreeMismatch, "component degree");
  auto it = comps_.find(m);
  if (it == comps_.end()) {
    comps_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) comps_.erase(it);
}

void FormField::add(std::span<const int> idx, const RingElem& c) {
  IndexMask m = 0;
  int s = sort_sign(idx, &m);
  if (s == 0) return;
  add(m, s > 0 ? c : -c);
}

void FormField::check_compatible(const FormField& o) const {
  if (degree_ != o.degree_) throw Error(ErrorKind::DegreeMismatch, "form degrees differ");
  if (basis_ != o.basis_) throw Error(ErrorKind::BasisMismatch, "form bases differ");
  if (!chart_->same_as(*o.chart_)) throw Error(ErrorKind::MixedChart, "forms on different charts");
}

FormField& FormField::operator+=(const FormField& o) {
  check_compatible(o);
  for (const auto& [m, c] : o.comps_) add(m, c);
  return *this;
}

FormField& FormField::operator-=(const FormField& o) {
  check_compatible(o);
  for (const auto& [m, c] : o.comps_) add(m, -c);
  return *this;
}

FormField& FormField::operator*=(const RingElem& s) {
  for (auto it = comps_.begin(); it != comps_.end();) {
    it->second *= s;
    if (it->second.is_zero())
      it = comps_.erase(it);
    else
      ++it;
  }
  return *this;
}

FormField FormField::operator-() const {
  FormField r = *this;
  for (auto& [m, c] : r.comps_) c = -c;
  return r;
}

bool operator==(const FormField& a, const FormField& b) {
  return a.degree_ == b.degree_ && a.basis_ == b.basis_ && a.comps_ == b.comps_;
}

FormField wedge(const FormField& a, const FormField& b) {
  if (a.basis() != b.basis()) throw Error(ErrorKind::BasisMismatch, "wedge of mixed bases");
  if (!a.chart()->same_as(*b.chart())) throw Error(ErrorKind::MixedChart, "wedge across charts");
  FormField r(a.chart(), a.degree() + b.degree(), a.basis());
  for (const auto& [ma, ca] : a.components()) {
    for (const auto& [mb, cb] : b.components()) {
      if (ma & mb) continue;
      // sign of merging two increasing lists: count pairs (i in a, j in b) with i > j
      int inv = 0;
      for (IndexMask m = mb; m; m &= m - 1) {
        IndexMask bit = m & -m;
        inv += __builtin_popcount(ma & ~((bit << 1) - 1));
      }
      RingElem c = ca * cb;
      r.add(ma | mb, (inv & 1) ? -c : c);
    }
  }
  return r;
}

}  // namespace maxsusy
