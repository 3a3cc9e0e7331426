#include "maxsusy/linalg.hpp"

#include <algorithm>

namespace maxsusy::linalg {

namespace {

// v -= c * row, dropping cancelled entries.
void axpy(SparseVec& v, const Rational& c, const SparseVec& row) {
  for (const auto& [k, x] : row) {
    auto it = v.find(k);
    if (it == v.end()) {
      v.emplace(k, -(c * x));
    } else {
      it->second -= c * x;
      if (it->second.is_zero()) v.erase(it);
    }
  }
}

}  // namespace

SparseVec SparseEchelon::reduce(SparseVec v) const {
  auto it = v.begin();
  while (it != v.end()) {
    std::size_t key = it->first;
    auto row = rows_.find(key);
    if (row == rows_.end()) {
      ++it;
      continue;
    }
    Rational c = it->second;
    axpy(v, c, row->second);  // clears `key`; later keys may change
    it = v.upper_bound(key);
  }
  return v;
}

bool SparseEchelon::insert(SparseVec v) {
  std::erase_if(v, [](const auto& kv) { return kv.second.is_zero(); });
  v = reduce(std::move(v));
  if (v.empty()) return false;
  Rational inv = v.begin()->second.inverse();
  for (auto& [k, x] : v) x *= inv;
  std::size_t pivot = v.begin()->first;
  rows_.emplace(pivot, std::move(v));
  return true;
}

bool SparseEchelon::in_span(SparseVec v) const {
  std::erase_if(v, [](const auto& kv) { return kv.second.is_zero(); });
  return reduce(std::move(v)).empty();
}

std::vector<SparseVec> SparseEchelon::reduced_rows() const {
  std::map<std::size_t, SparseVec> rows = rows_;
  // Back substitution from the largest pivot down.
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    for (auto& [p, r] : rows) {
      if (p == it->first) continue;
      auto hit = r.find(it->first);
      if (hit == r.end()) continue;
      Rational c = hit->second;
      axpy(r, c, it->second);
    }
  }
  std::vector<SparseVec> out;
  for (auto& [p, r] : rows) out.push_back(std::move(r));
  return out;
}

std::vector<std::size_t> SparseEchelon::pivots() const {
  std::vector<std::size_t> p;
  for (const auto& [k, r] : rows_) p.push_back(k);
  return p;
}

std::vector<SparseVec> nullspace(const std::vector<SparseVec>& rows, std::size_t ncols) {
  SparseEchelon ech;
  for (const auto& r : rows) ech.insert(r);
  auto reduced = ech.reduced_rows();
  std::vector<bool> is_pivot(ncols, false);
  for (const auto& r : reduced) is_pivot[r.begin()->first] = true;
  std::vector<SparseVec> basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    SparseVec x;
    x[f] = Rational(1);
    for (const auto& r : reduced) {
      auto it = r.find(f);
      if (it != r.end()) x[r.begin()->first] = -it->second;
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

std::size_t rank(const std::vector<std::vector<Rational>>& m) {
  SparseEchelon ech;
  for (const auto& row : m) {
    SparseVec v;
    for (std::size_t j = 0; j < row.size(); ++j)
      if (!row[j].is_zero()) v[j] = row[j];
    ech.insert(std::move(v));
  }
  return ech.rank();
}

std::uint64_t ModpEchelon::inv(std::uint64_t a) {
  // Fermat: a^(p-2)
  std::uint64_t r = 1, b = a, e = kPrime - 2;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

bool ModpEchelon::insert(std::vector<std::uint64_t> v) {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    std::size_t p = pivot_of_row_[i];
    std::uint64_t c = v[p];
    if (!c) continue;
    const auto& row = rows_[i];
    std::uint64_t neg = kPrime - c;
    for (std::size_t j = p; j < width_; ++j)
      if (row[j]) v[j] = reduce(v[j] + neg * row[j]);
  }
  std::size_t p = 0;
  while (p < width_ && v[p] == 0) ++p;
  if (p == width_) return false;
  std::uint64_t inv_p = inv(v[p]);
  for (std::size_t j = p; j < width_; ++j)
    if (v[j]) v[j] = mul(v[j], inv_p);
  // Keep earlier rows free of the new pivot so later reductions stay a
  // single forward pass.
  for (auto& row : rows_) {
    std::uint64_t c = row[p];
    if (!c) continue;
    std::uint64_t neg = kPrime - c;
    for (std::size_t j = p; j < width_; ++j)
      if (v[j]) row[j] = reduce(row[j] + neg * v[j]);
  }
  row_of_pivot_[p] = static_cast<int>(rows_.size());
  pivot_of_row_.push_back(p);
  rows_.push_back(std::move(v));
  return true;
}

}  // namespace maxsusy::linalg
