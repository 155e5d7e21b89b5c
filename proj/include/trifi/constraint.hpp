#pragma once

#include "trifi/algebra.hpp"
#include "trifi/identity.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace trifi {

struct CentralBinding {
  Element value;
  bool require_invertible = false;
};

// Resolution of an identity's symbols against a concrete algebra. Map symbols
// absent from fixed_maps are solved for as unknowns.
struct Binding {
  std::map<std::string, CentralBinding> centrals;
  std::map<std::string, LinearMap> fixed_maps;
  std::vector<std::string> unit_in_center;  // constraints s(1) in Z
  std::vector<std::pair<std::string, std::string>> ties;  // constraints s = t
};

// Unknown maps occupy d^2 coordinates each (column-major vectorization), in
// first-appearance order of the identity text.
struct UnknownLayout {
  std::vector<std::string> symbols;
  Index dim = 0;
  Index total() const { return static_cast<Index>(symbols.size()) * dim * dim; }
  Index offset(const std::string& symbol) const;
  bool has(const std::string& symbol) const;
};

// rows * u + constants = 0 over the stacked unknown vector u. The first
// core_rows rows come from the identity itself (per difference expression,
// per basis multiset, d coordinates each); side-constraint rows follow.
struct CompiledSystem {
  UnknownLayout layout;
  Mat rows;
  Vec constants;
  Index core_rows = 0;
};

CompiledSystem compile_constraints(const NormalizedIdentity& identity,
                                   const Algebra& algebra, const Binding& binding);

struct SolutionSpace {
  UnknownLayout layout;
  Subspace space;
  std::vector<std::vector<LinearMap>> decoded_basis;  // [basis vector][symbol]
};

// Full solution space of the identity plus side constraints; requires every
// map symbol unknown.
SolutionSpace solve_identity(const NormalizedIdentity& identity,
                             const Algebra& algebra, const Binding& binding);

// {(gamma * L_c, L_c) : c in Z}, the two-sided-centralizer pair space.
Subspace predicted_central_pairs(const Algebra& algebra, const Element& gamma);

// {(D/n + L_z, D + L_z) : D a derivation, z in Z}.
Subspace predicted_generalized_space(const Algebra& algebra, unsigned n);

enum class SolutionPredicate {
  psi_two_sided_centralizer,
  omega_two_sided_centralizer,
  omega_two_sided_generalized,
  delta_is_derivation,        // delta = omega - L_{omega(1)}
  psi_matches_delta_formula,  // psi = delta/n + L_{omega(1)}
  psi_equals_gamma_omega,
};
const char* to_string(SolutionPredicate predicate);

struct PredicateOutcome {
  SolutionPredicate predicate;
  bool pass = false;
};

struct VerificationReport {
  bool identity_holds = false;  // pointwise at random X, all tuples
  std::vector<PredicateOutcome> predicates;
  std::optional<SubspaceRelation> comparison;
  bool all_pass() const;
};

// Checks every decoded basis tuple plus 20 seeded random combinations:
// the raw identity pointwise at 100 random X, the requested predicates,
// and (when given) comparison against a predicted subspace.
VerificationReport verify_solution(const SolutionSpace& solution,
                                   const NormalizedIdentity& identity,
                                   const Algebra& algebra, const Binding& binding,
                                   const std::vector<SolutionPredicate>& checks,
                                   const Subspace* predicted = nullptr);

// Exact value of one expression at x under fully-resolved symbols.
Element evaluate_expression(const Expression& expr, const Algebra& algebra,
                            const Element& x,
                            const std::map<std::string, LinearMap>& maps,
                            const std::map<std::string, Element>& centrals);

// All map symbols fixed: does the identity hold for every X? Decided by the
// compiled system's constant column (exact), re-checked pointwise.
struct FixedCheckReport {
  bool holds = false;
  std::optional<Element> witness;  // an X violating the identity
};
FixedCheckReport verify_fixed(const NormalizedIdentity& identity,
                              const Algebra& algebra, const Binding& binding);

}  // namespace trifi
