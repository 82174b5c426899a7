#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "dgk/exactalg/field.hpp"

namespace dgk {

template <ExactField F>
using Vector = std::vector<typename F::value_type>;

/// Dense row-major matrix over an exact field. The field descriptor is held
/// by the matrix, so every entry belongs to the same field by construction.
template <ExactField F>
class Matrix {
 public:
  using value_type = typename F::value_type;

  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols),
        data_(rows * cols, field_.zero()) {}

  static Matrix identity(const F& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  static Matrix from_rows(const F& field, const std::vector<Vector<F>>& rows,
                          std::size_t cols) {
    Matrix m(field, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw DimensionMismatch("ragged matrix rows");
      std::copy(rows[r].begin(), rows[r].end(), m.data_.begin() + r * cols);
    }
    return m;
  }

  static Matrix from_columns(const F& field, std::size_t rows,
                             const std::vector<Vector<F>>& columns) {
    Matrix m(field, rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (columns[c].size() != rows) throw DimensionMismatch("ragged matrix columns");
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
    }
    return m;
  }

  const F& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  value_type& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const value_type& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<value_type> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const value_type> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  Vector<F> row_vector(std::size_t r) const { return {row(r).begin(), row(r).end()}; }
  Vector<F> column(std::size_t c) const {
    Vector<F> v(rows_, field_.zero());
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(),
                       [&](const value_type& x) { return field_.is_zero(x); });
  }
  bool is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if (!field_.equal((*this)(r, c), r == c ? field_.one() : field_.zero()))
          return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (!(a.field_ == b.field_) || a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      if (!a.field_.equal(a.data_[i], b.data_[i])) return false;
    return true;
  }

 private:
  F field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<value_type> data_;
};

template <ExactField F>
Matrix<F> operator*(const Matrix<F>& a, const Matrix<F>& b) {
  require_same_field(a.field(), b.field());
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shape mismatch");
  const F& k = a.field();
  Matrix<F> out(k, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const auto& x = a(i, l);
      if (k.is_zero(x)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!k.is_zero(b(l, j))) out(i, j) = k.add(out(i, j), k.mul(x, b(l, j)));
    }
  return out;
}

template <ExactField F>
Matrix<F> operator-(const Matrix<F>& a, const Matrix<F>& b) {
  require_same_field(a.field(), b.field());
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("matrix difference shape mismatch");
  Matrix<F> out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a.field().sub(a(i, j), b(i, j));
  return out;
}

template <ExactField F>
Vector<F> apply(const Matrix<F>& m, const Vector<F>& v) {
  if (v.size() != m.cols()) throw DimensionMismatch("matrix-vector shape mismatch");
  const F& k = m.field();
  Vector<F> out(m.rows(), k.zero());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!k.is_zero(v[c]) && !k.is_zero(m(r, c))) out[r] = k.add(out[r], k.mul(m(r, c), v[c]));
  return out;
}

template <ExactField F>
bool is_zero_vector(const F& k, const Vector<F>& v) {
  return std::all_of(v.begin(), v.end(), [&](const auto& x) { return k.is_zero(x); });
}

template <ExactField F>
bool vectors_equal(const F& k, const Vector<F>& a, const Vector<F>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!k.equal(a[i], b[i])) return false;
  return true;
}

/// Reduced row echelon form together with its pivot columns.
template <ExactField F>
struct RowEchelon {
  Matrix<F> reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank() const noexcept { return pivots.size(); }
};

namespace detail {

/// Reduced row echelon form over F_2 on rows packed 64 entries to a word.
inline RowEchelon<PrimeField> rref_f2(const Matrix<PrimeField>& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  const std::size_t words = (cols + 63) / 64;
  std::vector<std::uint64_t> bits(rows * words, 0);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (m(r, c)) bits[r * words + c / 64] |= std::uint64_t{1} << (c % 64);

  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    const std::size_t w = c / 64;
    const std::uint64_t mask = std::uint64_t{1} << (c % 64);
    std::size_t pr = rank;
    while (pr < rows && !(bits[pr * words + w] & mask)) ++pr;
    if (pr == rows) continue;
    if (pr != rank)
      std::swap_ranges(bits.begin() + pr * words, bits.begin() + (pr + 1) * words,
                       bits.begin() + rank * words);
    const std::uint64_t* prow = bits.data() + rank * words;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank) continue;
      std::uint64_t* row = bits.data() + r * words;
      if (row[w] & mask)
        for (std::size_t k = w; k < words; ++k) row[k] ^= prow[k];
    }
    pivots.push_back(c);
    ++rank;
  }

  Matrix<PrimeField> out(m.field(), rows, cols);
  for (std::size_t r = 0; r < rank; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (bits[r * words + c / 64] >> (c % 64) & 1) out(r, c) = 1;
  return {std::move(out), std::move(pivots)};
}

}  // namespace detail

/// Gauss-Jordan elimination. The result is unique for a given row space, so
/// equal inputs give bit-identical outputs.
template <ExactField F>
RowEchelon<F> rref(Matrix<F> m) {
  if constexpr (std::is_same_v<F, PrimeField>) {
    if (m.field().characteristic() == 2) return detail::rref_f2(m);
  }
  const F& k = m.field();
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t pr = rank;
    while (pr < m.rows() && k.is_zero(m(pr, c))) ++pr;
    if (pr == m.rows()) continue;
    if (pr != rank) std::swap_ranges(m.row(pr).begin(), m.row(pr).end(), m.row(rank).begin());
    auto prow = m.row(rank);
    const auto inv = k.inv(prow[c]);
    for (std::size_t j = c; j < m.cols(); ++j) prow[j] = k.mul(prow[j], inv);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == rank || k.is_zero(m(r, c))) continue;
      const auto factor = m(r, c);
      auto row = m.row(r);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!k.is_zero(prow[j])) row[j] = k.sub(row[j], k.mul(factor, prow[j]));
    }
    pivots.push_back(c);
    ++rank;
  }
  return {std::move(m), std::move(pivots)};
}

template <ExactField F>
std::size_t rank(const Matrix<F>& m) {
  return rref(m).rank();
}

/// Canonical kernel basis: one vector per free column of the rref, with that
/// free coordinate set to 1 and the other free coordinates 0. Ordered by
/// free column.
template <ExactField F>
std::vector<Vector<F>> kernel_basis(const Matrix<F>& m) {
  const F& k = m.field();
  auto [r, pivots] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector<F>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector<F> v(m.cols(), k.zero());
    v[free] = k.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = k.neg(r(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Incremental echelon basis of a span that remembers how each echelon row
/// was built from the inserted vectors, so membership queries also return
/// coordinates with respect to the inserted generators.
template <ExactField F>
class SpanReducer {
 public:
  using value_type = typename F::value_type;

  SpanReducer(F field, std::size_t ambient) : field_(std::move(field)), ambient_(ambient) {}

  std::size_t ambient() const noexcept { return ambient_; }
  /// Number of vectors inserted (independent or not).
  std::size_t inserted() const noexcept { return inserted_; }
  std::size_t rank() const noexcept { return rows_.size(); }

  /// Inserts v; returns true iff v was independent of the earlier inserts.
  /// A dependent insert still consumes a generator slot (with coefficient
  /// zero in all later coordinate results).
  bool insert(const Vector<F>& v) {
    if (v.size() != ambient_) throw DimensionMismatch("vector length differs from span ambient dimension");
    const std::size_t slot = inserted_++;
    for (auto& row : rows_) row.combo.push_back(field_.zero());
    Vector<F> work = v;
    Vector<F> combo(inserted_, field_.zero());
    combo[slot] = field_.one();
    reduce(work, combo, /*negate=*/true);
    auto piv = std::find_if(work.begin(), work.end(), [&](const auto& x) { return !field_.is_zero(x); });
    if (piv == work.end()) return false;
    const std::size_t p = static_cast<std::size_t>(piv - work.begin());
    const auto inv = field_.inv(work[p]);
    for (auto& x : work) x = field_.mul(x, inv);
    for (auto& x : combo) x = field_.mul(x, inv);
    rows_.push_back({std::move(work), std::move(combo), p});
    return true;
  }

  /// Coordinates c with sum c_j * inserted_j = v, or nullopt if v is outside
  /// the span.
  std::optional<Vector<F>> coordinates(const Vector<F>& v) const {
    if (v.size() != ambient_) throw DimensionMismatch("vector length differs from span ambient dimension");
    Vector<F> work = v;
    Vector<F> coords(inserted_, field_.zero());
    reduce(work, coords, /*negate=*/false);
    if (!is_zero_vector(field_, work)) return std::nullopt;
    return coords;
  }

  bool contains(const Vector<F>& v) const { return coordinates(v).has_value(); }

 private:
  struct Row {
    Vector<F> vec;
    Vector<F> combo;  // vec = sum combo_j * inserted_j
    std::size_t pivot;
  };

  // Eliminates every stored pivot from work. With negate the combo tracks
  // work = v - sum(...) (insertion); otherwise it accumulates the multiples
  // removed (coordinates).
  void reduce(Vector<F>& work, Vector<F>& combo, bool negate) const {
    for (const auto& row : rows_) {
      const auto f = work[row.pivot];
      if (field_.is_zero(f)) continue;
      for (std::size_t j = 0; j < ambient_; ++j)
        if (!field_.is_zero(row.vec[j])) work[j] = field_.sub(work[j], field_.mul(f, row.vec[j]));
      for (std::size_t j = 0; j < row.combo.size(); ++j) {
        if (field_.is_zero(row.combo[j])) continue;
        const auto t = field_.mul(f, row.combo[j]);
        combo[j] = negate ? field_.sub(combo[j], t) : field_.add(combo[j], t);
      }
    }
  }

  F field_;
  std::size_t ambient_;
  std::size_t inserted_ = 0;
  std::vector<Row> rows_;
};

/// Coordinates of v with respect to basis, if v lies in its span.
template <ExactField F>
std::optional<Vector<F>> coords_in_span(const F& field, const Vector<F>& v,
                                        const std::vector<Vector<F>>& basis) {
  SpanReducer<F> span(field, v.size());
  for (const auto& b : basis) span.insert(b);
  return span.coordinates(v);
}

/// rref basis of span(vectors); empty input gives an empty basis.
template <ExactField F>
std::vector<Vector<F>> span_basis(const F& field, const std::vector<Vector<F>>& vectors,
                                  std::size_t ambient) {
  if (vectors.empty()) return {};
  auto ech = rref(Matrix<F>::from_rows(field, vectors, ambient));
  std::vector<Vector<F>> out;
  for (std::size_t r = 0; r < ech.rank(); ++r) out.push_back(ech.reduced.row_vector(r));
  return out;
}

/// Basis (in rref form) of span(U) ∩ span(V), from the kernel of [U | -V].
template <ExactField F>
std::vector<Vector<F>> subspace_intersect(const F& field, const std::vector<Vector<F>>& u,
                                          const std::vector<Vector<F>>& v) {
  if (u.empty() || v.empty()) return {};
  const std::size_t n = u.front().size();
  for (const auto& x : u)
    if (x.size() != n) throw DimensionMismatch("subspace_intersect: ambient dimensions differ");
  for (const auto& x : v)
    if (x.size() != n) throw DimensionMismatch("subspace_intersect: ambient dimensions differ");
  std::vector<Vector<F>> cols;
  cols.reserve(u.size() + v.size());
  for (const auto& x : u) cols.push_back(x);
  for (const auto& x : v) {
    Vector<F> neg(n);
    for (std::size_t i = 0; i < n; ++i) neg[i] = field.neg(x[i]);
    cols.push_back(std::move(neg));
  }
  auto ker = kernel_basis(Matrix<F>::from_columns(field, n, cols));
  std::vector<Vector<F>> meet;
  for (const auto& kv : ker) {
    Vector<F> w(n, field.zero());
    for (std::size_t j = 0; j < u.size(); ++j) {
      if (field.is_zero(kv[j])) continue;
      for (std::size_t i = 0; i < n; ++i) w[i] = field.add(w[i], field.mul(kv[j], u[j][i]));
    }
    meet.push_back(std::move(w));
  }
  return span_basis(field, meet, n);
}

template <ExactField F>
std::string to_string(const Matrix<F>& m) {
  std::string s;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    s += "[";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) s += " ";
      s += m.field().to_string(m(r, c));
    }
    s += "]\n";
  }
  return s;
}

}  // namespace dgk
