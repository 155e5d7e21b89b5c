#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "trifi/algebra.hpp"
#include "trifi/classify.hpp"
#include "trifi/rng.hpp"
#include "trifi/triangular.hpp"

using namespace trifi;

namespace {

// Independent product oracle for M_2(Q): coordinates (row-major e_uv) are
// multiplied as honest 2x2 matrices.
Element m2_product(const Element& x, const Element& y) {
  auto at = [](const Element& v, Index r, Index c) { return v(r * 2 + c); };
  Element out(4);
  for (Index r = 0; r < 2; ++r)
    for (Index c = 0; c < 2; ++c)
      out(r * 2 + c) = at(x, r, 0) * at(y, 0, c) + at(x, r, 1) * at(y, 1, c);
  return out;
}

Element coords(std::initializer_list<int> values) {
  Element v(static_cast<Index>(values.size()));
  Index i = 0;
  for (int x : values) v(i++) = Rational(x);
  return v;
}

}  // namespace

TEST_CASE("matrix algebra multiplication matches the concrete matrix product") {
  Algebra m2 = make_full_matrix_algebra(2);
  CHECK(m2.dim() == 4);
  CHECK(m2.labels() == std::vector<std::string>{"e11", "e12", "e21", "e22"});
  CHECK(validate_algebra(m2).ok());

  RationalSampler rng(101);
  for (int trial = 0; trial < 25; ++trial) {
    Element x = rng.next_vector(4);
    Element y = rng.next_vector(4);
    CHECK(m2.multiply(x, y) == m2_product(x, y));
  }
  // unit = e11 + e22
  CHECK(m2.unit() == coords({1, 0, 0, 1}));
}

TEST_CASE("powers and commutators reduce to repeated multiplication") {
  Algebra m2 = make_full_matrix_algebra(2);
  RationalSampler rng(103);
  Element x = rng.next_vector(4);
  CHECK(m2.power(x, 0) == m2.unit());
  CHECK(m2.power(x, 1) == x);
  CHECK(m2.power(x, 3) == m2.multiply(m2.multiply(x, x), x));

  Element y = rng.next_vector(4);
  Element lhs = m2.commutator(x, y);
  Element rhs = m2.commutator(y, x);
  CHECK(lhs == Element(-rhs));
  CHECK(m2.commutator(x, x) == Element(Element::Zero(4)));
}

TEST_CASE("centers of the standard algebras have the known dimensions") {
  Algebra m2 = make_full_matrix_algebra(2);
  Subspace zm2 = m2.center();
  CHECK(zm2.dim() == 1);
  CHECK(zm2.contains(m2.unit()));

  Algebra diag = make_diagonal_algebra(3);
  CHECK(diag.center().dim() == 3);  // commutative

  Algebra t3 = make_upper_triangular_algebra(3);
  CHECK(t3.center().dim() == 1);
  CHECK(t3.is_central(t3.unit()));
  // e12 (index 1 in lexicographic basis e11,e12,e13,e22,e23,e33) is not central
  CHECK_FALSE(t3.is_central(unit_vec(6, 1)));
}

TEST_CASE("inversion is exact and rejects singular elements") {
  Algebra t2 = make_upper_triangular_algebra(2);  // basis e11, e12, e22
  Element x = coords({1, 0, 2});
  auto inv = t2.invert(x);
  REQUIRE(inv.has_value());
  Element expected(3);
  expected << Rational(1), Rational(0), Rational(1, 2);
  CHECK(*inv == expected);
  CHECK(t2.multiply(x, *inv) == t2.unit());
  CHECK(t2.multiply(*inv, x) == t2.unit());

  CHECK_FALSE(t2.invert(coords({1, 3, 0})).has_value());  // e11 + 3 e12
  CHECK(t2.invert(t2.unit()) == t2.unit());

  Algebra m2 = make_full_matrix_algebra(2);
  RationalSampler rng(107);
  Element y;
  do {
    y = rng.next_vector(4);
  } while (!m2.invert(y).has_value());
  Element yi = *m2.invert(y);
  CHECK(m2.multiply(y, yi) == m2.unit());
  CHECK(m2.multiply(yi, y) == m2.unit());
}

TEST_CASE("validation localizes corrupted structure tables") {
  Algebra t2 = make_upper_triangular_algebra(2);
  CHECK(validate_algebra(t2).ok());

  auto structure = t2.structure();
  structure[1][2] = coords({1, 0, 0});  // e12 * e22 rewritten to e11
  Algebra broken(t2.unit(), structure, t2.labels());
  AlgebraValidation v = validate_algebra(broken);
  CHECK_FALSE(v.ok());
  CHECK_FALSE(v.associativity_failures.empty());
}

TEST_CASE("multiplication operators act by left and right products") {
  Algebra m2 = make_full_matrix_algebra(2);
  RationalSampler rng(109);
  Element c = rng.next_vector(4);
  Element y = rng.next_vector(4);
  LinearMap lc = mult_operator(m2, c, Side::left);
  LinearMap rc = mult_operator(m2, c, Side::right);
  CHECK(Element(lc * y) == m2.multiply(c, y));
  CHECK(Element(rc * y) == m2.multiply(y, c));
  CHECK(lc == m2.left_mult(c));
  CHECK(rc == m2.right_mult(c));
}

TEST_CASE("the squared-sandwich condition holds for the standard algebras") {
  CHECK(condition_p(make_full_matrix_algebra(2)));
  CHECK(condition_p(make_upper_triangular_algebra(2)));
  CHECK(condition_p(make_upper_triangular_algebra(3)));
  CHECK(condition_p(make_diagonal_algebra(2)));

  // One-dimensional nil table: x r x = 0 for every x, so the condition fails.
  std::vector<std::vector<Vec>> nil{{coords({0})}};
  Algebra degenerate(coords({0}), nil);
  CHECK_FALSE(condition_p(degenerate));
}

TEST_CASE("classification separates one-sided from two-sided centralizers") {
  Algebra t2 = make_upper_triangular_algebra(2);  // basis e11, e12, e22
  Element e11 = unit_vec(3, 0);
  Element e12 = unit_vec(3, 1);

  ClassificationReport id_report = classify_map(t2, LinearMap(LinearMap::Identity(3, 3)));
  CHECK(id_report.left_centralizer);
  CHECK(id_report.right_centralizer);
  CHECK(id_report.two_sided_centralizer);
  CHECK(id_report.jordan_centralizer);
  CHECK(id_report.commuting);
  CHECK_FALSE(id_report.derivation);
  CHECK(id_report.two_sided_generalized);

  ClassificationReport left = classify_map(t2, t2.left_mult(e11));
  CHECK(left.left_centralizer);
  CHECK_FALSE(left.right_centralizer);
  CHECK_FALSE(left.two_sided_centralizer);

  ClassificationReport right = classify_map(t2, t2.right_mult(e12));
  CHECK(right.right_centralizer);
  CHECK_FALSE(right.left_centralizer);
}

TEST_CASE("inner derivations classify as non-commuting derivations") {
  Algebra t2 = make_upper_triangular_algebra(2);
  LinearMap ad = inner_derivation(t2, unit_vec(3, 1));  // x -> e12 x - x e12
  ClassificationReport r = classify_map(t2, ad);
  CHECK(r.derivation);
  CHECK(r.jordan_derivation);
  CHECK_FALSE(r.commuting);
  CHECK_FALSE(r.left_centralizer);
  CHECK_FALSE(r.right_centralizer);
  REQUIRE(r.l_generalized);
  REQUIRE(r.r_generalized);
  // ad(1) = 0, so the extracted derivation witnesses are the map itself.
  CHECK(*r.l_witness == ad);
  CHECK(*r.r_witness == ad);
  CHECK(r.two_sided_generalized);
}

TEST_CASE("derivation spaces have the inner-derivation dimension") {
  // For these algebras every derivation is inner, so the dimension is
  // dim(A) - dim(Z(A)).
  struct Case {
    Algebra algebra;
    Index expected;
  };
  const Case cases[] = {
      {make_upper_triangular_algebra(2), 2},
      {make_upper_triangular_algebra(3), 5},
      {make_full_matrix_algebra(2), 3},
  };
  for (const auto& [algebra, expected] : cases) {
    Subspace der = derivation_space(algebra);
    CHECK(der.dim() == expected);
    CHECK(der.dim() == algebra.dim() - algebra.center().dim());
    CHECK(jordan_derivation_space(algebra) == der);

    // Every basis map obeys the Leibniz rule pointwise.
    RationalSampler rng(113);
    for (Index i = 0; i < der.dim(); ++i) {
      LinearMap d = unvectorize(der.basis_vector(i), algebra.dim(), algebra.dim());
      for (int trial = 0; trial < 10; ++trial) {
        Element x = rng.next_vector(algebra.dim());
        Element y = rng.next_vector(algebra.dim());
        Element lhs = Element(d * algebra.multiply(x, y));
        Element rhs = algebra.multiply(Element(d * x), y) + algebra.multiply(x, Element(d * y));
        CHECK(lhs == rhs);
      }
    }

    // Inner derivations land inside the space.
    RationalSampler inner_rng(127);
    for (int trial = 0; trial < 5; ++trial) {
      Element c = inner_rng.next_vector(algebra.dim());
      CHECK(der.contains(vectorize(inner_derivation(algebra, c))));
    }
  }
}

TEST_CASE("commuting Jordan derivations vanish on noncommutative algebras") {
  CHECK(commuting_jordan_derivation_space(make_upper_triangular_algebra(2)).dim() == 0);
  CHECK(commuting_jordan_derivation_space(make_upper_triangular_algebra(3)).dim() == 0);
  CHECK(commuting_jordan_derivation_space(make_full_matrix_algebra(2)).dim() == 0);
  // On a commutative algebra every derivation commutes; the diagonal algebra
  // has no nonzero derivations at all, so the space is still zero there.
  CHECK(commuting_jordan_derivation_space(make_diagonal_algebra(3)).dim() == 0);
  CHECK(derivation_space(make_diagonal_algebra(3)).dim() == 0);
}

TEST_CASE("diagonal algebra is the componentwise product") {
  Algebra diag = make_diagonal_algebra(3);
  RationalSampler rng(131);
  Element x = rng.next_vector(3);
  Element y = rng.next_vector(3);
  Element expect(3);
  for (Index i = 0; i < 3; ++i) expect(i) = x(i) * y(i);
  CHECK(diag.multiply(x, y) == expect);
  CHECK(validate_algebra(diag).ok());
}
