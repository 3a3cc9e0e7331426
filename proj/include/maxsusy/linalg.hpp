#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "maxsusy/rational.hpp"

namespace maxsusy::linalg {

using SparseVec = std::map<std::size_t, Rational>;

// Incremental exact row reduction. Rows are stored with their smallest key
// as pivot, normalized to 1.
class SparseEchelon {
 public:
  // Reduces v against the current rows; returns true (and keeps the
  // remainder as a new row) if v was independent.
  bool insert(SparseVec v);
  bool in_span(SparseVec v) const;
  std::size_t rank() const { return rows_.size(); }

  // Fully reduced rows (each pivot column zero in all other rows).
  std::vector<SparseVec> reduced_rows() const;
  std::vector<std::size_t> pivots() const;

 private:
  SparseVec reduce(SparseVec v) const;

  std::map<std::size_t, SparseVec> rows_;  // pivot -> row
};

// Basis of {x : rows * x = 0} for x indexed 0..ncols-1.
std::vector<SparseVec> nullspace(const std::vector<SparseVec>& rows, std::size_t ncols);

// Exact rank of a dense rational matrix.
std::size_t rank(const std::vector<std::vector<Rational>>& m);

// Row reduction over F_p for p = 2^31 - 1. Rank over F_p is a lower bound
// for the rank over Q of any rational matrix reducing to it.
class ModpEchelon {
 public:
  static constexpr std::uint64_t kPrime = 2147483647ULL;

  explicit ModpEchelon(std::size_t width) : width_(width) {}

  bool insert(std::vector<std::uint64_t> v);
  std::size_t rank() const { return rows_.size(); }
  std::size_t width() const { return width_; }

  static std::uint64_t reduce(std::uint64_t x) {
    x = (x & kPrime) + (x >> 31);
    x = (x & kPrime) + (x >> 31);
    return x >= kPrime ? x - kPrime : x;
  }
  static std::uint64_t mul(std::uint64_t a, std::uint64_t b) { return reduce(a * b); }
  static std::uint64_t inv(std::uint64_t a);

 private:
  std::size_t width_;
  std::vector<std::vector<std::uint64_t>> rows_;
  std::vector<std::size_t> pivot_of_row_;
  std::vector<int> row_of_pivot_ = std::vector<int>(width_, -1);
};

}  // namespace maxsusy::linalg
