#pragma once

#include "trifi/algebra.hpp"

#include <optional>

namespace trifi {

// Map predicates over a unital algebra. Quadratic definitions (Jordan
// flags, commuting) are decided by their char-0 polarizations on basis
// pairs, then re-checked pointwise on 200 seeded random elements.
struct ClassificationReport {
  bool left_centralizer = false;   // T(xy) = T(x)y
  bool right_centralizer = false;  // T(xy) = xT(y)
  bool two_sided_centralizer = false;
  bool jordan_left = false;   // T(x^2) = T(x)x
  bool jordan_right = false;  // T(x^2) = xT(x)
  bool jordan_two_sided = false;
  bool jordan_centralizer = false;  // T(xoy) = T(x)oy = xoT(y)
  bool derivation = false;          // D(xy) = D(x)y + xD(y)
  bool jordan_derivation = false;   // D(x^2) = D(x)x + xD(x)
  bool commuting = false;           // F(x)x = xF(x)
  bool l_generalized = false;       // F(xy) = F(x)y + x d(y), d a derivation
  bool r_generalized = false;       // G(xy) = g(x)y + xG(y), g a derivation
  bool two_sided_generalized = false;
  std::optional<LinearMap> l_witness;  // d = F - L_{F(1)}, present iff l_generalized
  std::optional<LinearMap> r_witness;  // g = F - R_{F(1)}, present iff r_generalized
};

ClassificationReport classify_map(const Algebra& a, const LinearMap& f);

LinearMap inner_derivation(const Algebra& a, const Element& c);  // x -> cx - xc

// Solution spaces of map conditions, ambient dimension d^2 (column-major
// vectorization of the map matrix).
Subspace derivation_space(const Algebra& a);
Subspace jordan_derivation_space(const Algebra& a);
Subspace commuting_jordan_derivation_space(const Algebra& a);

}  // namespace trifi
