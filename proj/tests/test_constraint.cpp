#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "trifi/constraint.hpp"
#include "trifi/classify.hpp"
#include "trifi/rng.hpp"
#include "trifi/triangular.hpp"

#include <map>
#include <stdexcept>
#include <string>

using namespace trifi;

namespace {

Binding gamma_binding(const Algebra& a, const Rational& gamma_scale) {
  Binding b;
  b.centrals["g"] = CentralBinding{Element(gamma_scale * a.unit()), true};
  b.unit_in_center.push_back("Omega");
  return b;
}

// Independent solution-space oracle. The identity differences are linear in
// the unknown maps (each nonzero term applies exactly one map), so rows can
// be extracted by evaluating every difference at random points with one
// unknown coordinate switched on at a time. Side constraints contribute
// center-residual rows the same way.
Subspace sampled_solution_space(const NormalizedIdentity& identity,
                                const Algebra& algebra, const Binding& binding,
                                int samples) {
  Index d = algebra.dim();
  Index k = static_cast<Index>(identity.map_symbols.size());
  Index total = k * d * d;

  std::map<std::string, Element> centrals;
  for (const auto& [name, cb] : binding.centrals) centrals[name] = cb.value;

  RationalSampler rng(5151);
  RrefBuilder rows(total);
  for (int s = 0; s < samples; ++s) {
    Element x = rng.next_vector(d);
    for (const Expression& diff : identity.differences) {
      // One evaluation per unknown coordinate; assemble d rows per sample.
      Mat block(d, total);
      for (Index u = 0; u < k; ++u) {
        std::map<std::string, LinearMap> maps;
        for (Index v = 0; v < k; ++v)
          maps[identity.map_symbols[v]] = LinearMap::Zero(d, d);
        for (Index col = 0; col < d; ++col) {
          for (Index row = 0; row < d; ++row) {
            maps[identity.map_symbols[u]] = LinearMap::Zero(d, d);
            maps[identity.map_symbols[u]](row, col) = Rational(1);
            Element val = evaluate_expression(diff, algebra, x, maps, centrals);
            Index coord = u * d * d + col * d + row;
            block.col(coord) = val;
          }
        }
      }
      for (Index r = 0; r < d; ++r) rows.add_row(block.row(r).transpose());
    }
  }

  // residual_Z(S * 1) = 0 is linear in S, one block of d rows per constraint.
  Subspace center = algebra.center();
  for (const std::string& name : binding.unit_in_center) {
    Index base = 0;
    for (Index u = 0; u < k; ++u)
      if (identity.map_symbols[u] == name) base = u * d * d;
    Mat block = Mat::Zero(d, total);
    for (Index col = 0; col < d; ++col) {
      for (Index row = 0; row < d; ++row) {
        LinearMap e = LinearMap::Zero(d, d);
        e(row, col) = Rational(1);
        block.col(base + col * d + row) = center.residual(Element(e * algebra.unit()));
      }
    }
    for (Index r = 0; r < d; ++r) rows.add_row(block.row(r).transpose());
  }

  return nullspace(rows.matrix());
}

NormalizedIdentity chain(unsigned n) {
  std::string p = n == 2 ? "X" : "X^" + std::to_string(n - 1);
  return validate_identity(parse_identity("Psi(X^" + std::to_string(n) + ") = g*" + p +
                                          "*Omega(X) = g*Omega(X)*" + p));
}

NormalizedIdentity averaged_chain(unsigned n) {
  std::string p = n == 2 ? "X" : "X^" + std::to_string(n - 1);
  return validate_identity(parse_identity("2*Psi(X^" + std::to_string(n) + ") = " + p +
                                          "*Omega(X) + Omega(X)*" + p));
}

}  // namespace

TEST_CASE("compiled systems have the documented layout") {
  Algebra t2 = make_upper_triangular_algebra(2);
  NormalizedIdentity identity = chain(2);
  CompiledSystem sys = compile_constraints(identity, t2, gamma_binding(t2, Rational(1)));

  CHECK(sys.layout.symbols == std::vector<std::string>{"Psi", "Omega"});
  CHECK(sys.layout.dim == 3);
  CHECK(sys.layout.total() == 18);
  CHECK(sys.layout.offset("Psi") == 0);
  CHECK(sys.layout.offset("Omega") == 9);
  CHECK(sys.layout.has("Omega"));
  CHECK_FALSE(sys.layout.has("Delta"));
  // 2 differences x C(3+2-1, 2)=6 multisets x 3 coordinates.
  CHECK(sys.core_rows == 36);
  CHECK(sys.rows.rows() > sys.core_rows);  // side-constraint rows follow
  CHECK(is_zero(sys.constants));           // no fixed maps, no affine part
}

TEST_CASE("solver reproduces the independently sampled solution space") {
  Algebra t2 = make_upper_triangular_algebra(2);
  TriangularAlgebra trim = make_matrix_bimodule(2, 1);

  for (unsigned n : {2u, 3u}) {
    NormalizedIdentity identity = chain(n);
    for (const Algebra* a : {&t2, &trim.algebra}) {
      Binding binding = gamma_binding(*a, Rational(1));
      SolutionSpace sol = solve_identity(identity, *a, binding);
      Subspace sampled = sampled_solution_space(identity, *a, binding, 24);
      CHECK(sol.space == sampled);
    }
  }

  NormalizedIdentity averaged = averaged_chain(2);
  Binding binding;
  binding.unit_in_center.push_back("Omega");
  SolutionSpace sol = solve_identity(averaged, t2, binding);
  CHECK(sol.space == sampled_solution_space(averaged, t2, binding, 24));
}

TEST_CASE("chain solutions are exactly the central multiplication pairs") {
  Algebra t2 = make_upper_triangular_algebra(2);
  for (unsigned n : {2u, 3u, 4u}) {
    NormalizedIdentity identity = chain(n);
    Binding binding = gamma_binding(t2, Rational(1));
    SolutionSpace sol = solve_identity(identity, t2, binding);
    CHECK(sol.space.dim() == 1);
    CHECK(sol.space == predicted_central_pairs(t2, t2.unit()));

    REQUIRE(sol.decoded_basis.size() == 1);
    const auto& tuple = sol.decoded_basis[0];
    REQUIRE(tuple.size() == 2);
    // Psi = gamma * Omega and both are two-sided centralizers.
    CHECK(tuple[0] == tuple[1]);
    ClassificationReport r = classify_map(t2, tuple[1]);
    CHECK(r.two_sided_centralizer);
  }
}

TEST_CASE("scaling gamma rescales the Psi block of the solution space") {
  Algebra t2 = make_upper_triangular_algebra(2);
  NormalizedIdentity identity = chain(3);

  SolutionSpace plain = solve_identity(identity, t2, gamma_binding(t2, Rational(1)));
  SolutionSpace doubled = solve_identity(identity, t2, gamma_binding(t2, Rational(2)));
  CHECK(plain.space.dim() == doubled.space.dim());

  // (Psi, Omega) solves gamma=1 iff (2*Psi, Omega) solves gamma=2.
  Index d2 = 9;
  Mat transformed(plain.space.dim(), 18);
  for (Index i = 0; i < plain.space.dim(); ++i) {
    Vec v = plain.space.basis_vector(i);
    v.head(d2) *= Rational(2);
    transformed.row(i) = v.transpose();
  }
  CHECK(Subspace::from_spanning_rows(18, transformed) == doubled.space);
  CHECK(doubled.space == predicted_central_pairs(t2, Element(Rational(2) * t2.unit())));
}

TEST_CASE("predicted pair spaces satisfy their identities") {
  TriangularAlgebra trim = make_matrix_bimodule(2, 1);
  const Algebra& a = trim.algebra;
  Subspace predicted = predicted_central_pairs(a, a.unit());
  CHECK(predicted.dim() == a.center().dim());

  NormalizedIdentity identity = chain(3);
  for (Index i = 0; i < predicted.dim(); ++i) {
    Vec v = predicted.basis_vector(i);
    Binding fixed;
    fixed.centrals["g"] = CentralBinding{a.unit(), true};
    fixed.fixed_maps["Psi"] = unvectorize(v.head(49), 7, 7);
    fixed.fixed_maps["Omega"] = unvectorize(v.tail(49), 7, 7);
    CHECK(verify_fixed(identity, a, fixed).holds);
  }

  CHECK_THROWS_AS(predicted_central_pairs(a, unit_vec(7, 1)), std::invalid_argument);
}

TEST_CASE("generalized pair space has derivation plus center dimension") {
  Algebra t2 = make_upper_triangular_algebra(2);
  Subspace predicted = predicted_generalized_space(t2, 2);
  CHECK(predicted.dim() == derivation_space(t2).dim() + t2.center().dim());
  CHECK_THROWS_AS(predicted_generalized_space(t2, 1), std::invalid_argument);

  // The identity pair (I, I) comes from D = 0, z = 1.
  Vec pair(18);
  pair.head(9) = vectorize(LinearMap(LinearMap::Identity(3, 3)));
  pair.tail(9) = vectorize(LinearMap(LinearMap::Identity(3, 3)));
  CHECK(predicted.contains(pair));
}

TEST_CASE("averaged chain solutions carry generalized derivations") {
  Algebra t2 = make_upper_triangular_algebra(2);
  NormalizedIdentity averaged = averaged_chain(2);
  Binding binding;
  binding.unit_in_center.push_back("Omega");
  SolutionSpace sol = solve_identity(averaged, t2, binding);
  CHECK(sol.space == predicted_generalized_space(t2, 2));
  CHECK(sol.space.dim() == 3);

  for (const auto& tuple : sol.decoded_basis) {
    const LinearMap& psi = tuple[0];
    const LinearMap& omega = tuple[1];
    ClassificationReport r = classify_map(t2, omega);
    CHECK(r.two_sided_generalized);
    Element omega_one = Element(omega * t2.unit());
    LinearMap delta = omega - t2.left_mult(omega_one);
    CHECK(classify_map(t2, delta).derivation);
    CHECK(psi == LinearMap(delta / Rational(2) + t2.left_mult(omega_one)));
  }
}

TEST_CASE("for degree three the averaged chain collapses below the predicted space") {
  Algebra t2 = make_upper_triangular_algebra(2);
  NormalizedIdentity averaged = averaged_chain(3);
  Binding binding;
  binding.unit_in_center.push_back("Omega");
  SolutionSpace sol = solve_identity(averaged, t2, binding);
  Subspace predicted = predicted_generalized_space(t2, 3);
  CHECK(subspace_compare(sol.space, predicted) == SubspaceRelation::s1_subset_s2);
  CHECK(sol.space.dim() < predicted.dim());
}

TEST_CASE("tying the two maps collapses the averaged chain to central multiplications") {
  Algebra t2 = make_upper_triangular_algebra(2);
  NormalizedIdentity averaged = averaged_chain(2);
  Binding binding;
  binding.unit_in_center.push_back("Omega");
  binding.ties.emplace_back("Psi", "Omega");
  SolutionSpace sol = solve_identity(averaged, t2, binding);
  CHECK(sol.space == predicted_central_pairs(t2, t2.unit()));
  REQUIRE(sol.decoded_basis.size() == 1);
  CHECK(sol.decoded_basis[0][0] == sol.decoded_basis[0][1]);
}

TEST_CASE("verification reports pass for true solutions and localize corruption") {
  Algebra t2 = make_upper_triangular_algebra(2);
  NormalizedIdentity identity = chain(2);
  Binding binding = gamma_binding(t2, Rational(1));
  SolutionSpace sol = solve_identity(identity, t2, binding);

  Subspace predicted = predicted_central_pairs(t2, t2.unit());
  VerificationReport report = verify_solution(
      sol, identity, t2, binding,
      {SolutionPredicate::psi_two_sided_centralizer,
       SolutionPredicate::omega_two_sided_centralizer,
       SolutionPredicate::psi_equals_gamma_omega},
      &predicted);
  CHECK(report.identity_holds);
  CHECK(report.all_pass());
  REQUIRE(report.comparison.has_value());
  CHECK(*report.comparison == SubspaceRelation::equal);
  for (const auto& outcome : report.predicates) CHECK(outcome.pass);
}

TEST_CASE("fixed-map verification accepts solutions and produces honest witnesses") {
  Algebra t2 = make_upper_triangular_algebra(2);
  NormalizedIdentity identity = chain(2);

  Binding good;
  good.centrals["g"] = CentralBinding{t2.unit(), true};
  good.fixed_maps["Psi"] = LinearMap::Identity(3, 3);
  good.fixed_maps["Omega"] = LinearMap::Identity(3, 3);
  FixedCheckReport ok = verify_fixed(identity, t2, good);
  CHECK(ok.holds);
  CHECK_FALSE(ok.witness.has_value());

  Binding bad = good;
  bad.fixed_maps["Omega"] = t2.left_mult(unit_vec(3, 0));  // e11 is not central
  FixedCheckReport fail = verify_fixed(identity, t2, bad);
  CHECK_FALSE(fail.holds);
  REQUIRE(fail.witness.has_value());

  // The witness genuinely violates one of the differences.
  std::map<std::string, LinearMap> maps{{"Psi", bad.fixed_maps["Psi"]},
                                        {"Omega", bad.fixed_maps["Omega"]}};
  std::map<std::string, Element> centrals{{"g", t2.unit()}};
  bool violated = false;
  for (const Expression& diff : identity.differences) {
    if (!is_zero(evaluate_expression(diff, t2, *fail.witness, maps, centrals)))
      violated = true;
  }
  CHECK(violated);
}

TEST_CASE("expression evaluation matches a hand computation") {
  Algebra t2 = make_upper_triangular_algebra(2);
  NormalizedIdentity identity = chain(2);
  // First difference: Psi(X^2) - g*X*Omega(X).
  const Expression& diff = identity.differences[0];

  LinearMap psi = t2.left_mult(unit_vec(3, 1));  // x -> e12 x
  LinearMap omega = LinearMap::Identity(3, 3);
  Element gamma = Element(Rational(3) * t2.unit());
  Element x(3);
  x << Rational(1), Rational(2), Rational(-1);

  Element by_hand = Element(psi * t2.multiply(x, x)) -
                    Element(Rational(3) * t2.multiply(x, Element(omega * x)));
  std::map<std::string, LinearMap> maps{{"Psi", psi}, {"Omega", omega}};
  std::map<std::string, Element> centrals{{"g", gamma}};
  CHECK(evaluate_expression(diff, t2, x, maps, centrals) == by_hand);
}

TEST_CASE("binding errors are reported by name") {
  Algebra t2 = make_upper_triangular_algebra(2);
  NormalizedIdentity identity = chain(2);

  Binding empty;
  CHECK_THROWS_WITH_AS(compile_constraints(identity, t2, empty),
                       "unresolved central symbol 'g'", std::invalid_argument);

  Binding non_central;
  non_central.centrals["g"] = CentralBinding{unit_vec(3, 1), false};
  CHECK_THROWS_WITH_AS(compile_constraints(identity, t2, non_central),
                       "central binding 'g' is not central", std::invalid_argument);

  Binding singular;
  singular.centrals["g"] = CentralBinding{Element(Element::Zero(3)), true};
  CHECK_THROWS_WITH_AS(compile_constraints(identity, t2, singular),
                       "central binding 'g' is not invertible", std::invalid_argument);

  Binding with_fixed = gamma_binding(t2, Rational(1));
  with_fixed.fixed_maps["Psi"] = LinearMap::Identity(3, 3);
  CHECK_THROWS_WITH_AS(solve_identity(identity, t2, with_fixed),
                       "solve_identity requires every map unknown", std::invalid_argument);

  Binding stray = gamma_binding(t2, Rational(1));
  stray.unit_in_center.push_back("Delta");
  CHECK_THROWS_WITH_AS(compile_constraints(identity, t2, stray),
                       "side constraint on non-unknown map 'Delta'", std::invalid_argument);
}
