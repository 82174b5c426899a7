#include <gtest/gtest.h>

#include <random>

#include "dgk/exactalg/matrix.hpp"

using namespace dgk;

namespace {

const PrimeField F2(2);
const PrimeField F5(5);
const RationalField QQ;

template <ExactField F>
Matrix<F> mat(const F& k, std::vector<std::vector<long long>> rows) {
  Matrix<F> m(k, rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = k.from_int(rows[r][c]);
  return m;
}

template <ExactField F>
Vector<F> vec(const F& k, std::vector<long long> xs) {
  Vector<F> v;
  for (auto x : xs) v.push_back(k.from_int(x));
  return v;
}

template <ExactField F>
Matrix<F> random_matrix(const F& k, std::mt19937& rng, std::size_t rows, std::size_t cols) {
  std::uniform_int_distribution<int> entry(-4, 4);
  Matrix<F> m(k, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = k.from_int(entry(rng) * (entry(rng) > 1));
  return m;
}

}  // namespace

TEST(Field, RationalsAreCanonical) {
  auto a = QQ.from_rational(mpz_class(6), mpz_class(-4));
  EXPECT_EQ(a.get_num(), -3);
  EXPECT_EQ(a.get_den(), 2);
  EXPECT_THROW(QQ.from_rational(mpz_class(1), mpz_class(0)), ValidationError);
}

TEST(Field, PrimeResiduesReduce) {
  EXPECT_EQ(F5.from_int(-1), 4u);
  EXPECT_EQ(F5.from_int(12), 2u);
  EXPECT_EQ(F5.mul(F5.inv(3), 3), 1u);
  EXPECT_EQ(F5.from_rational(mpz_class(1), mpz_class(2)), 3u);
  EXPECT_THROW(F5.from_rational(mpz_class(1), mpz_class(5)), ValidationError);
  EXPECT_THROW(PrimeField(4), ValidationError);
  EXPECT_THROW(F5.inv(0), Error);
}

TEST(Field, AxiomsHoldExactly) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(-50, 50);
  for (int t = 0; t < 200; ++t) {
    auto a = QQ.from_rational(d(rng), 1 + (d(rng) & 7)), b = QQ.from_int(d(rng)), c = QQ.from_int(d(rng));
    EXPECT_EQ(QQ.mul(a, QQ.add(b, c)), QQ.add(QQ.mul(a, b), QQ.mul(a, c)));
    if (!QQ.is_zero(a)) EXPECT_TRUE(QQ.is_one(QQ.mul(a, QQ.inv(a))));
    auto x = F5.from_int(d(rng)), y = F5.from_int(d(rng));
    EXPECT_EQ(F5.add(F5.sub(x, y), y), x);
  }
}

TEST(Rref, ZeroMatrix) {
  auto e = rref(Matrix<PrimeField>(F2, 2, 2));
  EXPECT_TRUE(e.reduced.is_zero());
  EXPECT_TRUE(e.pivots.empty());
}

TEST(Rref, IdentityOverQ) {
  auto e = rref(Matrix<RationalField>::identity(QQ, 3));
  EXPECT_TRUE(e.reduced.is_identity());
  EXPECT_EQ(e.pivots, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Rref, OnesOverF2) {
  auto e = rref(mat(F2, {{1, 1}, {1, 1}}));
  EXPECT_EQ(e.reduced, mat(F2, {{1, 1}, {0, 0}}));
  EXPECT_EQ(e.pivots, (std::vector<std::size_t>{0}));
}

TEST(Rref, WideF2MatricesAcrossWordBoundaries) {
  // more than 64 columns exercises several words per row
  std::mt19937 rng(5);
  for (int t = 0; t < 20; ++t) {
    auto m = random_matrix(F2, rng, 40, 150);
    auto e = rref(m);
    EXPECT_EQ(rref(e.reduced).reduced, e.reduced);
    for (auto& v : kernel_basis(m)) EXPECT_TRUE(is_zero_vector(F2, dgk::apply(m, v)));
    EXPECT_EQ(rank(m) + kernel_basis(m).size(), m.cols());
  }
}

TEST(Kernel, Examples) {
  EXPECT_EQ(kernel_basis(mat(F2, {{1, 1}})), (std::vector<Vector<PrimeField>>{vec(F2, {1, 1})}));
  EXPECT_TRUE(kernel_basis(mat(QQ, {{1, 2}, {3, 4}})).empty());
  // 2a = b: rref [1, -1/2] gives the free-column vector (1/2, 1)
  auto k = kernel_basis(mat(QQ, {{2, -1}}));
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(k[0][0], mpq_class(1, 2));
  EXPECT_EQ(k[0][1], mpq_class(1));
}

TEST(Kernel, RankNullityAndIdempotence) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> dim(1, 7);
  for (int t = 0; t < 100; ++t) {
    auto m = random_matrix(QQ, rng, dim(rng), dim(rng));
    auto e = rref(m);
    EXPECT_EQ(rref(e.reduced).reduced, e.reduced);
    auto ker = kernel_basis(m);
    EXPECT_EQ(e.rank() + ker.size(), m.cols());
    for (auto& v : ker) EXPECT_TRUE(is_zero_vector(QQ, dgk::apply(m, v)));
    auto m5 = random_matrix(F5, rng, dim(rng), dim(rng));
    EXPECT_EQ(rank(m5) + kernel_basis(m5).size(), m5.cols());
  }
}

TEST(Span, CoordinatesExamples) {
  std::vector<Vector<RationalField>> basis = {vec(QQ, {1, 0, 1}), vec(QQ, {0, 1, 1})};
  EXPECT_EQ(*coords_in_span(QQ, vec(QQ, {0, 0, 0}), basis), vec(QQ, {0, 0}));
  EXPECT_EQ(*coords_in_span(QQ, basis[0], basis), vec(QQ, {1, 0}));
  EXPECT_FALSE(coords_in_span(QQ, vec(QQ, {0, 0, 1}), basis).has_value());
}

TEST(Span, CoordinatesReconstructExactly) {
  std::mt19937 rng(3);
  for (int t = 0; t < 100; ++t) {
    auto m = random_matrix(QQ, rng, 4, 6);
    std::vector<Vector<RationalField>> basis;
    for (std::size_t r = 0; r < 4; ++r) basis.push_back(m.row_vector(r));
    auto target = random_matrix(QQ, rng, 1, 4).row_vector(0);
    Vector<RationalField> v(6, QQ.zero());
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 6; ++c) v[c] += target[r] * basis[r][c];
    auto c = coords_in_span(QQ, v, basis);
    ASSERT_TRUE(c.has_value());
    Vector<RationalField> back(6, QQ.zero());
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t k = 0; k < 6; ++k) back[k] += (*c)[r] * basis[r][k];
    EXPECT_EQ(back, v);
  }
}

TEST(Span, Intersections) {
  auto e = [&](int i) {
    Vector<RationalField> v(3, QQ.zero());
    v[i] = 1;
    return v;
  };
  std::vector<Vector<RationalField>> u = {e(0), e(1)}, v = {e(1), e(2)};
  EXPECT_EQ(subspace_intersect(QQ, u, v), (std::vector<Vector<RationalField>>{e(1)}));
  EXPECT_TRUE(subspace_intersect(QQ, {e(0)}, {e(1)}).empty());
  EXPECT_EQ(subspace_intersect(QQ, u, u).size(), 2u);
  EXPECT_THROW(subspace_intersect(QQ, u, {vec(QQ, {1, 0})}), DimensionMismatch);
}

TEST(Span, ReducerCountsRank) {
  SpanReducer<PrimeField> red(F2, 3);
  EXPECT_TRUE(red.insert(vec(F2, {1, 1, 0})));
  EXPECT_TRUE(red.insert(vec(F2, {0, 1, 1})));
  EXPECT_FALSE(red.insert(vec(F2, {1, 0, 1})));
  EXPECT_EQ(red.rank(), 2u);
  EXPECT_TRUE(red.contains(vec(F2, {1, 0, 1})));
  EXPECT_FALSE(red.contains(vec(F2, {1, 0, 0})));
}

TEST(Matrix, RaggedRowsRejected) {
  EXPECT_THROW(Matrix<PrimeField>::from_rows(F2, {vec(F2, {1}), vec(F2, {1, 0})}, 2), DimensionMismatch);
}

TEST(Matrix, MixedFieldsRejected) {
  EXPECT_THROW(Matrix<PrimeField>::identity(F2, 2) * Matrix<PrimeField>::identity(F5, 2), FieldMismatch);
  EXPECT_THROW(Matrix<PrimeField>::identity(F2, 2) - Matrix<PrimeField>::identity(F5, 2), FieldMismatch);
}
