#include "trifi/algebra.hpp"

#include <stdexcept>
#include <utility>

namespace trifi {

Algebra::Algebra(Vec unit, std::vector<std::vector<Vec>> structure,
                 std::vector<std::string> labels)
    : dim_(unit.size()),
      unit_(std::move(unit)),
      structure_(std::move(structure)),
      labels_(std::move(labels)) {
  if (dim_ == 0) throw std::invalid_argument("algebra: dimension must be positive");
  if (static_cast<Index>(structure_.size()) != dim_)
    throw std::invalid_argument("algebra: structure tensor has wrong first extent");
  for (const auto& row : structure_) {
    if (static_cast<Index>(row.size()) != dim_)
      throw std::invalid_argument("algebra: structure tensor has wrong second extent");
    for (const auto& entry : row)
      if (entry.size() != dim_)
        throw std::invalid_argument("algebra: structure tensor has wrong third extent");
  }
  if (!labels_.empty() && static_cast<Index>(labels_.size()) != dim_)
    throw std::invalid_argument("algebra: label count must match dimension");

  left_ops_.reserve(dim_);
  right_ops_.reserve(dim_);
  for (Index i = 0; i < dim_; ++i) {
    Mat li = Mat::Zero(dim_, dim_);
    Mat ri = Mat::Zero(dim_, dim_);
    for (Index j = 0; j < dim_; ++j) {
      li.col(j) = structure_[i][j];  // e_i * e_j
      ri.col(j) = structure_[j][i];  // e_j * e_i
    }
    left_ops_.push_back(std::move(li));
    right_ops_.push_back(std::move(ri));
  }
}

Element Algebra::multiply(const Element& x, const Element& y) const {
  if (x.size() != dim_ || y.size() != dim_)
    throw std::invalid_argument("multiply: dimension mismatch");
  Vec result = Vec::Zero(dim_);
  for (Index i = 0; i < dim_; ++i) {
    if (x(i) == 0) continue;
    result += x(i) * (left_ops_[i] * y);
  }
  return result;
}

Element Algebra::power(const Element& x, unsigned n) const {
  Element result = unit_;
  for (unsigned i = 0; i < n; ++i) result = multiply(result, x);
  return result;
}

Element Algebra::commutator(const Element& x, const Element& y) const {
  return multiply(x, y) - multiply(y, x);
}

LinearMap Algebra::left_mult(const Element& x) const {
  if (x.size() != dim_) throw std::invalid_argument("left_mult: dimension mismatch");
  Mat result = Mat::Zero(dim_, dim_);
  for (Index i = 0; i < dim_; ++i)
    if (x(i) != 0) result += x(i) * left_ops_[i];
  return result;
}

LinearMap Algebra::right_mult(const Element& x) const {
  if (x.size() != dim_) throw std::invalid_argument("right_mult: dimension mismatch");
  Mat result = Mat::Zero(dim_, dim_);
  for (Index i = 0; i < dim_; ++i)
    if (x(i) != 0) result += x(i) * right_ops_[i];
  return result;
}

Subspace Algebra::center() const {
  Mat stacked(dim_ * dim_, dim_);
  for (Index i = 0; i < dim_; ++i)
    stacked.middleRows(i * dim_, dim_) = left_ops_[i] - right_ops_[i];
  return nullspace(stacked);
}

bool Algebra::is_central(const Element& x) const {
  return is_zero(Mat(left_mult(x) - right_mult(x)));
}

std::optional<Element> Algebra::invert(const Element& x) const {
  auto right_inverse = solve_linear(left_mult(x), unit_);
  if (!right_inverse) return std::nullopt;
  if (!is_zero(Vec(multiply(*right_inverse, x) - unit_))) return std::nullopt;
  return right_inverse;
}

LinearMap mult_operator(const Algebra& a, const Element& c, Side side) {
  return side == Side::left ? a.left_mult(c) : a.right_mult(c);
}

AlgebraValidation validate_algebra(const Algebra& a) {
  AlgebraValidation report;
  const Index d = a.dim();
  for (Index i = 0; i < d; ++i) {
    Vec e = Vec::Zero(d);
    e(i) = 1;
    if (!is_zero(Vec(a.multiply(a.unit(), e) - e)) ||
        !is_zero(Vec(a.multiply(e, a.unit()) - e)))
      report.unit_failures.push_back(i);
  }
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      const Vec ij = a.structure()[i][j];
      for (Index k = 0; k < d; ++k) {
        Vec e_k = Vec::Zero(d);
        e_k(k) = 1;
        Vec e_i = Vec::Zero(d);
        e_i(i) = 1;
        Vec lhs = a.multiply(ij, e_k);
        Vec rhs = a.multiply(e_i, a.structure()[j][k]);
        if (!is_zero(Vec(lhs - rhs)))
          report.associativity_failures.push_back({i, j, k});
      }
    }
  return report;
}

bool condition_p(const Algebra& a) {
  const Index d = a.dim();
  const Index pairs = d * (d + 1) / 2;
  Mat stacked(pairs * d, d);
  Index row = 0;
  for (Index i = 0; i < d; ++i)
    for (Index j = i; j < d; ++j) {
      stacked.middleRows(row, d) =
          a.basis_left(i) * a.basis_right(j) + a.basis_left(j) * a.basis_right(i);
      row += d;
    }
  return nullspace(stacked).dim() == 0;
}

}  // namespace trifi
