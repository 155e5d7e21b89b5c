#pragma once

#include "trifi/algebra.hpp"
#include "trifi/triangular.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace trifi {

enum class TheoremTag { thm21, cor22, thm25, cor_final };

const char* to_string(TheoremTag tag);
std::optional<TheoremTag> theorem_from_string(std::string_view name);

// The degree-n functional identity a tag's replay starts from, in the
// identity-language surface syntax. thm21/cor22 carry the central invertible
// coefficient symbol "gamma"; thm25 and the final corollary have none, and
// the final corollary uses the single map symbol "Psi".
std::string identity_text(TheoremTag tag, unsigned n);

// One group of the expansion of the base identity at X + C, collected by the
// number of C factors. phi groups Psi(X^n) = gamma X^{n-1} Omega(X), theta
// groups Psi(X^n) = gamma X Omega(X^{n-1}), lambda groups
// 2 Psi(X^n) = X^{n-1} Omega(X) + Omega(X) X^{n-1} (no gamma in that one).
enum class ComponentKind { phi, theta, lambda };

// Exact value of the k-th group at (X, C). Throws when k is outside
// [1, n-1] or C is not central.
Element component_value(ComponentKind kind, unsigned k, const Algebra& algebra,
                        const Element& x, const Element& c, const LinearMap& psi,
                        const LinearMap& omega, const Element& gamma, unsigned n);

// Exact determinant of the (n-1) x (n-1) coefficient matrix of the
// substitution system C, 2C, ..., (n-1)C; row j is (j, j^2, ..., j^{n-1}).
// Always nonzero; throws when n < 2.
Rational vandermonde_check(unsigned n);

// Worked run of the substitution argument at a concrete (X, C): evaluates
// the grouped sums at jC for j = 1..n-1, then solves the resulting square
// system by elimination and back-substitution, recovering every group value
// at (X, C). When (Psi, Omega) satisfy the base identity the right-hand
// sides vanish and each recovered group is exactly zero.
struct VandermondeRecovery {
  Rational det;
  std::vector<Element> direct;     // group k evaluated straight from its formula
  std::vector<Element> recovered;  // group k solved out of the substitution system
  bool scaled_consistently = false;  // group_k(X, jC) == j^k group_k(X, C)
  bool recovered_zero = false;
  bool matches_direct = false;
  bool ok() const {
    return scaled_consistently && recovered_zero && matches_direct;
  }
};

VandermondeRecovery recover_components(ComponentKind kind, const Algebra& algebra,
                                       const Element& x, const Element& c,
                                       const LinearMap& psi, const LinearMap& omega,
                                       const Element& gamma, unsigned n);

struct ProofStep {
  std::string label;
  Index instances_checked = 0;
  bool pass = false;
  // An input violating the step: an element X, or for two-argument steps
  // the pair (X, Y) stacked into one 2d vector.
  std::optional<Vec> witness;
};

struct ProofTrace {
  TheoremTag theorem = TheoremTag::thm21;
  std::vector<ProofStep> steps;
  bool aborted = false;  // the solution failed the base identity
  bool passed() const;
};

// Re-derives the chain of consequences the given tag's proof establishes for
// a concrete solution pair: every derived equation is checked on all basis
// elements (polarized on basis pairs when quadratic) and on seeded random
// elements, and the closing map-level facts are checked as exact matrix
// identities. A pair failing the base identity aborts with a witness.
ProofTrace replay_theorem(TheoremTag tag, const TriangularAlgebra& t, unsigned n,
                          const Element& gamma, const LinearMap& psi,
                          const LinearMap& omega);

// The two facts the proofs import, checked on the concrete algebra, plus the
// polarized x r x = 0 cancellation property: every Jordan derivation is a
// derivation, a commuting Jordan derivation is zero.
struct LemmaReport {
  Index derivation_dim = 0;
  Index jordan_derivation_dim = 0;
  bool jordan_equals_derivation = false;   // equality of the two subspaces
  bool commuting_jordan_trivial = false;   // commuting Jordan derivations = {0}
  bool condition_p_holds = false;
  bool all_pass() const {
    return jordan_equals_derivation && commuting_jordan_trivial &&
           condition_p_holds;
  }
};

LemmaReport verify_background_lemmas(const TriangularAlgebra& t);

}  // namespace trifi
