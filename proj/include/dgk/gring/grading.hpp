#pragma once

#include <cstdint>
#include <cstdlib>
#include <utility>
#include <vector>

#include "dgk/errors.hpp"

namespace dgk {

/// Fine degree of a monomial or Koszul basis element: the canonical
/// representative of its exponent vector modulo the grading lattice.
using Grade = std::vector<std::int64_t>;

/// The lattice L ⊂ Z^n spanned by exponent differences inside each ideal
/// generator. Every generator is homogeneous for the Z^n/L grading, and it is
/// the finest such grading; the weighted degree factors through it.
/// Stored in Hermite normal form so cosets have canonical representatives.
class GradingLattice {
 public:
  GradingLattice() = default;

  GradingLattice(std::size_t ambient, std::vector<std::vector<std::int64_t>> generators)
      : ambient_(ambient), rows_(std::move(generators)) {
    hermite_normal_form();
  }

  std::size_t ambient() const noexcept { return ambient_; }
  std::size_t rank() const noexcept { return rows_.size(); }
  const std::vector<std::vector<std::int64_t>>& basis() const noexcept { return rows_; }

  /// Canonical coset representative: each pivot coordinate reduced into
  /// [0, pivot).
  void reduce(Grade& v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const auto& row = rows_[k];
      const std::size_t c = pivot_cols_[k];
      const std::int64_t q = floor_div(v[c], row[c]);
      if (q == 0) continue;
      for (std::size_t j = c; j < ambient_; ++j) v[j] -= q * row[j];
    }
  }

  bool contains(Grade v) const {
    reduce(v);
    for (auto x : v)
      if (x != 0) return false;
    return true;
  }

 private:
  static std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
  }

  void hermite_normal_form() {
    std::vector<std::vector<std::int64_t>> rows;
    for (auto& r : rows_) {
      if (r.size() != ambient_) throw DimensionMismatch("lattice generator has wrong length");
      bool nz = false;
      for (auto x : r) nz |= x != 0;
      if (nz) rows.push_back(std::move(r));
    }
    std::size_t top = 0;
    for (std::size_t col = 0; col < ambient_ && top < rows.size(); ++col) {
      while (true) {
        // smallest nonzero |entry| in this column among the remaining rows
        std::size_t best = rows.size();
        for (std::size_t i = top; i < rows.size(); ++i)
          if (rows[i][col] != 0 &&
              (best == rows.size() || std::llabs(rows[i][col]) < std::llabs(rows[best][col])))
            best = i;
        if (best == rows.size()) break;
        std::swap(rows[top], rows[best]);
        bool cleared = true;
        for (std::size_t i = top + 1; i < rows.size(); ++i) {
          if (rows[i][col] == 0) continue;
          const std::int64_t q = rows[i][col] / rows[top][col];
          for (std::size_t j = col; j < ambient_; ++j) rows[i][j] -= q * rows[top][j];
          if (rows[i][col] != 0) cleared = false;
        }
        if (cleared) break;
      }
      if (top < rows.size() && rows[top][col] != 0) {
        if (rows[top][col] < 0)
          for (auto& x : rows[top]) x = -x;
        for (std::size_t i = 0; i < top; ++i) {
          const std::int64_t q = floor_div(rows[i][col], rows[top][col]);
          if (q != 0)
            for (std::size_t j = col; j < ambient_; ++j) rows[i][j] -= q * rows[top][j];
        }
        pivot_cols_.push_back(col);
        ++top;
      }
    }
    rows.resize(top);
    rows_ = std::move(rows);
  }

  std::size_t ambient_ = 0;
  std::vector<std::vector<std::int64_t>> rows_;
  std::vector<std::size_t> pivot_cols_;
};

}  // namespace dgk
