#pragma once

#include "trifi/matrix.hpp"

#include <optional>
#include <vector>

namespace trifi {

// Incremental reduced-row-echelon builder. Rows are reduced as they arrive
// and only independent ones are kept, so large constraint systems never
// materialize beyond their rank.
class RrefBuilder {
 public:
  explicit RrefBuilder(Index cols);

  // Reduces the row against the current basis; keeps it when independent.
  // Returns true if the row added a new pivot.
  bool add_row(Vec row);
  void add_rows(const Mat& rows);

  Index cols() const { return cols_; }
  Index rank() const { return static_cast<Index>(rows_.size()); }
  const std::vector<Index>& pivots() const { return pivots_; }

  // Nonzero rows of the unique RREF, in pivot-column order.
  Mat matrix() const;

 private:
  Index cols_;
  std::vector<Vec> rows_;
  std::vector<Index> pivots_;  // strictly increasing, aligned with rows_
};

struct RowEchelon {
  Mat matrix;                 // unique RREF of the input, zero rows at the bottom
  std::vector<Index> pivots;  // strictly increasing pivot columns
};

RowEchelon rref(const Mat& m);

// Exact determinant by fraction-exact Gaussian elimination. Square input only.
Rational determinant(const Mat& m);

// Any solution of a * x = b, or nullopt when the system is inconsistent.
// Free variables are set to zero.
std::optional<Vec> solve_linear(const Mat& a, const Vec& b);

// Inverse of a square matrix, or nullopt when singular.
std::optional<Mat> inverse_matrix(const Mat& m);

// A subspace of Q^ambient in canonical form: the basis rows are the nonzero
// rows of a reduced row-echelon matrix. Canonical form makes subspace
// equality plain matrix equality.
class Subspace {
 public:
  Subspace() = default;  // the zero subspace of the zero ambient space

  static Subspace zero(Index ambient_dim);
  static Subspace full(Index ambient_dim);
  static Subspace from_spanning_rows(Index ambient_dim, const Mat& rows);

  Index ambient_dim() const { return ambient_; }
  Index dim() const { return basis_.rows(); }
  const Mat& basis() const { return basis_; }
  const std::vector<Index>& pivots() const { return pivots_; }

  Vec basis_vector(Index i) const { return basis_.row(i).transpose(); }

  // v with the basis eliminated from it; zero iff v lies in the subspace.
  Vec residual(Vec v) const;
  bool contains(const Vec& v) const;

  bool operator==(const Subspace& other) const;
  bool operator!=(const Subspace& other) const { return !(*this == other); }

 private:
  Subspace(Index ambient, Mat basis, std::vector<Index> pivots);
  Index ambient_ = 0;
  Mat basis_;  // dim x ambient
  std::vector<Index> pivots_;
};

enum class SubspaceRelation { equal, s1_subset_s2, s2_subset_s1, incomparable };
const char* to_string(SubspaceRelation relation);

// Classification by containment; throws std::invalid_argument on ambient
// dimension mismatch.
SubspaceRelation subspace_compare(const Subspace& s1, const Subspace& s2);

// {v : m * v = 0} in canonical form.
Subspace nullspace(const Mat& m);

}  // namespace trifi
