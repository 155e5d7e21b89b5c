#pragma once

#include "trifi/algebra.hpp"
#include "trifi/rng.hpp"

#include <string>
#include <vector>

namespace trifi {

// (A, B)-bimodule given by action matrices on a fixed basis of M:
// left_action[i] sends coordinates of m to coordinates of e_i^A * m,
// right_action[j] sends them to m * e_j^B.
struct Bimodule {
  Index dimM = 0;
  std::vector<Mat> left_action;   // size dim A, each dimM x dimM
  std::vector<Mat> right_action;  // size dim B, each dimM x dimM
};

struct BimoduleValidation {
  std::vector<std::pair<Index, Index>> left_associativity_failures;
  std::vector<std::pair<Index, Index>> right_associativity_failures;
  std::vector<std::pair<Index, Index>> compatibility_failures;
  bool left_unital = false;
  bool right_unital = false;
  bool shapes_ok = false;
  bool ok() const {
    return shapes_ok && left_unital && right_unital &&
           left_associativity_failures.empty() &&
           right_associativity_failures.empty() && compatibility_failures.empty();
  }
};

BimoduleValidation validate_bimodule(const Bimodule& m, const Algebra& a,
                                     const Algebra& b);

struct FaithfulReport {
  bool left = false;   // a * M = 0 forces a = 0
  bool right = false;  // M * b = 0 forces b = 0
};

FaithfulReport check_faithful(const Bimodule& m, const Algebra& a, const Algebra& b);

// Basis layout of the composite algebra: the A block first, then M, then B.
struct BlockMap {
  Index dimA = 0;
  Index dimM = 0;
  Index dimB = 0;
  Index a_offset() const { return 0; }
  Index m_offset() const { return dimA; }
  Index b_offset() const { return dimA + dimM; }
  Index dim() const { return dimA + dimM + dimB; }
};

struct TriangularAlgebra {
  Algebra algebra;
  BlockMap blocks;
  Algebra a_component;
  Algebra b_component;
  Bimodule bimodule;
};

// Assembles the composite algebra. Throws std::invalid_argument when a
// component fails validation or dimM = 0 (such a bimodule cannot be faithful).
TriangularAlgebra build_triangular(const Algebra& a, const Algebra& b,
                                   const Bimodule& m,
                                   std::vector<std::string> labels = {});

// Center through the pair description {a + b : a, b central, a*m = m*b for
// all m}, embedded in composite coordinates. Independent of Algebra::center.
Subspace center_by_formula(const TriangularAlgebra& t);

Algebra make_full_matrix_algebra(Index k);  // M_k(Q), basis e_uv row-major
Algebra make_diagonal_algebra(Index k);     // Q^k componentwise
Algebra make_upper_triangular_algebra(Index k);
// T_k(Q) as Tri(Q, Q^{k-1}, T_{k-1}(Q)); basis = matrix units e_ij (i <= j)
// in lexicographic order. Requires k >= 2.
TriangularAlgebra make_upper_triangular(Index k);
// Tri(M_p(Q), Q^{p x q}, M_q(Q)); corner basis e_uv row-major.
TriangularAlgebra make_matrix_bimodule(Index p, Index q);

// New basis f_j = sum_i p(i, j) e_i; throws when p is singular.
Algebra change_basis(const Algebra& a, const Mat& p);

// Random faithful triangular algebra with dim A, dim B, dim M <= 4: a draw
// from a small family pool followed by a block-respecting basis change.
TriangularAlgebra random_triangular(RationalSampler& sampler);

}  // namespace trifi
