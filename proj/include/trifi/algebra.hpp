#pragma once

#include "trifi/linalg.hpp"
#include "trifi/matrix.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace trifi {

// Elements are coordinate vectors over a fixed basis; linear maps are d x d
// matrices whose column j is the image of e_j.
using Element = Vec;
using LinearMap = Mat;

// Finite-dimensional unital associative algebra over Q, given by structure
// constants: e_i * e_j = sum_k structure[i][j](k) e_k.
//
// The constructor only checks shapes; associativity and the unit laws are
// checked by validate_algebra so defective tables remain constructible and
// reportable.
class Algebra {
 public:
  Algebra(Vec unit, std::vector<std::vector<Vec>> structure,
          std::vector<std::string> labels = {});

  Index dim() const { return dim_; }
  const Vec& unit() const { return unit_; }
  const std::vector<std::vector<Vec>>& structure() const { return structure_; }
  const std::vector<std::string>& labels() const { return labels_; }

  Element multiply(const Element& x, const Element& y) const;
  Element power(const Element& x, unsigned n) const;  // power(x, 0) = unit
  Element commutator(const Element& x, const Element& y) const;

  // L_x (x * .) or R_x (. * x) as a matrix.
  LinearMap left_mult(const Element& x) const;
  LinearMap right_mult(const Element& x) const;
  const LinearMap& basis_left(Index i) const { return left_ops_[i]; }
  const LinearMap& basis_right(Index i) const { return right_ops_[i]; }

  Subspace center() const;
  bool is_central(const Element& x) const;
  std::optional<Element> invert(const Element& x) const;

 private:
  Index dim_;
  Vec unit_;
  std::vector<std::vector<Vec>> structure_;
  std::vector<std::string> labels_;
  std::vector<LinearMap> left_ops_;   // left_ops_[i] = L_{e_i}
  std::vector<LinearMap> right_ops_;  // right_ops_[i] = R_{e_i}
};

enum class Side { left, right };

LinearMap mult_operator(const Algebra& a, const Element& c, Side side);

struct AlgebraValidation {
  std::vector<Index> unit_failures;  // basis indices where 1*e_i or e_i*1 fails
  std::vector<std::array<Index, 3>> associativity_failures;
  bool ok() const {
    return unit_failures.empty() && associativity_failures.empty();
  }
};

AlgebraValidation validate_algebra(const Algebra& a);

// True iff x r x = 0 for all x forces r = 0. Checked through the char-0
// polarization {r : e_i r e_j + e_j r e_i = 0 for all i <= j}.
bool condition_p(const Algebra& a);

}  // namespace trifi
