#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "trifi/linalg.hpp"
#include "trifi/rng.hpp"

#include <stdexcept>

using namespace trifi;

namespace {

// Independent determinant oracle: cofactor expansion along the first row.
Rational cofactor_det(const Mat& m) {
  Index n = m.rows();
  if (n == 0) return Rational(1);
  if (n == 1) return m(0, 0);
  Rational acc(0);
  for (Index j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    Mat minor(n - 1, n - 1);
    for (Index r = 1; r < n; ++r) {
      Index cc = 0;
      for (Index c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = m(r, c);
      }
    }
    Rational sign = (j % 2 == 0) ? Rational(1) : Rational(-1);
    acc += sign * m(0, j) * cofactor_det(minor);
  }
  return acc;
}

Mat from_rows(std::initializer_list<std::initializer_list<int>> rows) {
  Index r = static_cast<Index>(rows.size());
  Index c = static_cast<Index>(rows.begin()->size());
  Mat m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (int v : row) m(i, j++) = Rational(v);
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("rref is canonical and preserves the row space") {
  RationalSampler rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    Mat m = rng.next_matrix(5, 7);
    RowEchelon e = rref(m);
    RowEchelon e2 = rref(e.matrix);
    CHECK(e2.matrix == e.matrix);
    CHECK(e2.pivots == e.pivots);

    // Pivot columns are unit columns and strictly increase.
    for (std::size_t k = 0; k < e.pivots.size(); ++k) {
      if (k > 0) CHECK(e.pivots[k] > e.pivots[k - 1]);
      for (Index r = 0; r < e.matrix.rows(); ++r) {
        Rational expect = (r == static_cast<Index>(k)) ? Rational(1) : Rational(0);
        CHECK(e.matrix(r, e.pivots[k]) == expect);
      }
    }

    Subspace original = Subspace::from_spanning_rows(7, m);
    Subspace reduced = Subspace::from_spanning_rows(7, e.matrix);
    CHECK(original == reduced);
    CHECK(original.dim() == static_cast<Index>(e.pivots.size()));
  }
}

TEST_CASE("determinant matches cofactor expansion") {
  Mat fixed = from_rows({{2, 1, 0}, {1, 3, -1}, {0, 4, 5}});
  CHECK(determinant(fixed) == Rational(33));
  CHECK(cofactor_det(fixed) == Rational(33));

  RationalSampler rng(23);
  for (int trial = 0; trial < 12; ++trial) {
    Mat m = rng.next_matrix(4, 4);
    CHECK(determinant(m) == cofactor_det(m));
  }
  Mat big = rng.next_matrix(6, 6);
  CHECK(determinant(big) == cofactor_det(big));
}

TEST_CASE("determinant is multiplicative and vanishes on dependent rows") {
  RationalSampler rng(37);
  for (int trial = 0; trial < 8; ++trial) {
    Mat a = rng.next_matrix(3, 3);
    Mat b = rng.next_matrix(3, 3);
    CHECK(determinant(Mat(a * b)) == determinant(a) * determinant(b));
  }
  Mat dup = rng.next_matrix(4, 4);
  dup.row(3) = dup.row(1);
  CHECK(determinant(dup) == Rational(0));
  CHECK_THROWS_AS(determinant(rng.next_matrix(2, 3)), std::invalid_argument);
}

TEST_CASE("solve_linear finds exact solutions and rejects inconsistent systems") {
  RationalSampler rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    Mat a = rng.next_matrix(4, 6);
    Vec x0 = rng.next_vector(6);
    Vec b = a * x0;
    auto sol = solve_linear(a, b);
    REQUIRE(sol.has_value());
    CHECK(is_zero(Vec(a * *sol - b)));
  }

  Mat a = from_rows({{1, 2}, {2, 4}});
  Vec b(2);
  b << Rational(1), Rational(3);  // second row demands 2*(row one) = 3
  CHECK_FALSE(solve_linear(a, b).has_value());
}

TEST_CASE("inverse_matrix inverts exactly or reports singularity") {
  RationalSampler rng(53);
  Mat m;
  do {
    m = rng.next_matrix(4, 4);
  } while (determinant(m) == 0);
  auto inv = inverse_matrix(m);
  REQUIRE(inv.has_value());
  Mat id = Mat::Zero(4, 4);
  for (Index i = 0; i < 4; ++i) id(i, i) = Rational(1);
  CHECK(Mat(m * *inv) == id);
  CHECK(Mat(*inv * m) == id);

  Mat sing = m;
  sing.col(2) = sing.col(0);
  CHECK_FALSE(inverse_matrix(sing).has_value());
}

TEST_CASE("nullspace satisfies rank-nullity and annihilation") {
  RationalSampler rng(67);
  for (int trial = 0; trial < 8; ++trial) {
    Mat m = rng.next_matrix(4, 7);
    Subspace ns = nullspace(m);
    CHECK(ns.ambient_dim() == 7);
    Index rank = static_cast<Index>(rref(m).pivots.size());
    CHECK(ns.dim() + rank == 7);
    for (Index i = 0; i < ns.dim(); ++i) {
      CHECK(is_zero(Vec(m * ns.basis_vector(i))));
    }
  }
}

TEST_CASE("general solution of a consistent system is particular plus nullspace") {
  RationalSampler rng(71);
  Mat a = rng.next_matrix(3, 5);
  Vec x0 = rng.next_vector(5);
  Vec b = a * x0;
  auto part = solve_linear(a, b);
  REQUIRE(part.has_value());
  Subspace ns = nullspace(a);
  // x0 - particular lies in the nullspace.
  CHECK(ns.contains(Vec(x0 - *part)));
}

TEST_CASE("subspaces canonicalize independent of the spanning presentation") {
  Mat span1 = from_rows({{1, 2, 0, 1}, {0, 0, 1, 1}});
  Mat span2 = from_rows({{2, 4, 3, 5}, {0, 0, -1, -1}, {1, 2, 1, 2}});
  Subspace s1 = Subspace::from_spanning_rows(4, span1);
  Subspace s2 = Subspace::from_spanning_rows(4, span2);
  CHECK(s1 == s2);
  CHECK(s1.dim() == 2);
  CHECK(s1.basis() == s2.basis());

  Vec inside = span1.row(0).transpose();
  CHECK(s1.contains(inside));
  CHECK(is_zero(s1.residual(inside)));
  Vec outside(4);
  outside << Rational(1), Rational(0), Rational(0), Rational(0);
  CHECK_FALSE(s1.contains(outside));
  CHECK_FALSE(is_zero(s1.residual(outside)));
}

TEST_CASE("subspace_compare classifies containment") {
  Mat small = from_rows({{1, 0, 0}});
  Mat large = from_rows({{1, 0, 0}, {0, 1, 0}});
  Mat other = from_rows({{0, 0, 1}});
  Subspace s = Subspace::from_spanning_rows(3, small);
  Subspace l = Subspace::from_spanning_rows(3, large);
  Subspace o = Subspace::from_spanning_rows(3, other);

  CHECK(subspace_compare(s, l) == SubspaceRelation::s1_subset_s2);
  CHECK(subspace_compare(l, s) == SubspaceRelation::s2_subset_s1);
  CHECK(subspace_compare(s, s) == SubspaceRelation::equal);
  CHECK(subspace_compare(s, o) == SubspaceRelation::incomparable);
  CHECK(subspace_compare(Subspace::zero(3), o) == SubspaceRelation::s1_subset_s2);
  CHECK(subspace_compare(Subspace::full(3), o) == SubspaceRelation::s2_subset_s1);
  CHECK_THROWS_AS(subspace_compare(s, Subspace::zero(4)), std::invalid_argument);
}

TEST_CASE("incremental rref builder agrees with batch rref") {
  RationalSampler rng(83);
  Mat m = rng.next_matrix(6, 5);
  RrefBuilder builder(5);
  Index gained = 0;
  for (Index r = 0; r < m.rows(); ++r) {
    if (builder.add_row(m.row(r).transpose())) ++gained;
  }
  CHECK(gained == builder.rank());
  RowEchelon batch = rref(m);
  Mat nonzero = batch.matrix.topRows(static_cast<Index>(batch.pivots.size()));
  CHECK(builder.matrix() == nonzero);
  CHECK(builder.pivots() == batch.pivots);
}

TEST_CASE("vectorize and unvectorize are column-major inverses") {
  RationalSampler rng(89);
  Mat m = rng.next_matrix(3, 4);
  Vec v = vectorize(m);
  CHECK(v.size() == 12);
  CHECK(v(4) == m(1, 1));  // column 1, row 1 lands at 1*3 + 1
  CHECK(unvectorize(v, 3, 4) == m);
  CHECK_THROWS_AS(unvectorize(v, 4, 4), std::invalid_argument);
  CHECK_THROWS_AS(unit_vec(3, 3), std::invalid_argument);
}

TEST_CASE("rational sampler is deterministic with bounded values") {
  RationalSampler a(12345);
  RationalSampler b(12345);
  CHECK(a.next_matrix(4, 4) == b.next_matrix(4, 4));

  RationalSampler c(12345);
  for (int i = 0; i < 200; ++i) {
    Rational r = c.next();
    using boost::multiprecision::abs;
    CHECK(abs(numerator(r)) <= 9);
    CHECK(denominator(r) >= 1);
    CHECK(denominator(r) <= 9);
  }
  for (int i = 0; i < 100; ++i) CHECK(c.next_nonzero() != 0);
}
