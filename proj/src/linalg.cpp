#include "trifi/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace trifi {

RrefBuilder::RrefBuilder(Index cols) : cols_(cols) {
  if (cols < 0) throw std::invalid_argument("RrefBuilder: negative column count");
}

bool RrefBuilder::add_row(Vec row) {
  if (row.size() != cols_) throw std::invalid_argument("RrefBuilder: row width mismatch");
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Rational& coeff = row(pivots_[k]);
    if (coeff != 0) row -= coeff * rows_[k];
  }
  Index lead = -1;
  for (Index c = 0; c < cols_; ++c) {
    if (row(c) != 0) {
      lead = c;
      break;
    }
  }
  if (lead < 0) return false;
  if (row(lead) != 1) row /= row(lead);
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Rational& coeff = rows_[k](lead);
    if (coeff != 0) rows_[k] -= coeff * row;
  }
  const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), lead) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, lead);
  rows_.insert(rows_.begin() + pos, std::move(row));
  return true;
}

void RrefBuilder::add_rows(const Mat& rows) {
  for (Index r = 0; r < rows.rows(); ++r) add_row(rows.row(r).transpose());
}

Mat RrefBuilder::matrix() const {
  Mat out = Mat::Zero(rank(), cols_);
  for (Index r = 0; r < rank(); ++r) out.row(r) = rows_[r].transpose();
  return out;
}

RowEchelon rref(const Mat& m) {
  RrefBuilder builder(m.cols());
  builder.add_rows(m);
  RowEchelon result{Mat::Zero(m.rows(), m.cols()), builder.pivots()};
  result.matrix.topRows(builder.rank()) = builder.matrix();
  return result;
}

Rational determinant(const Mat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  const Index n = m.rows();
  Mat work = m;
  Rational det = 1;
  for (Index col = 0; col < n; ++col) {
    Index pivot = -1;
    for (Index r = col; r < n; ++r) {
      if (work(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return Rational(0);
    if (pivot != col) {
      work.row(pivot).swap(work.row(col));
      det = -det;
    }
    det *= work(col, col);
    for (Index r = col + 1; r < n; ++r) {
      const Rational factor = work(r, col) / work(col, col);
      if (factor != 0) work.row(r) -= factor * work.row(col);
    }
  }
  return det;
}

std::optional<Vec> solve_linear(const Mat& a, const Vec& b) {
  if (a.rows() != b.size()) throw std::invalid_argument("solve_linear: shape mismatch");
  Mat augmented(a.rows(), a.cols() + 1);
  augmented.leftCols(a.cols()) = a;
  augmented.col(a.cols()) = b;
  const RowEchelon re = rref(augmented);
  Vec x = Vec::Zero(a.cols());
  for (std::size_t k = 0; k < re.pivots.size(); ++k) {
    if (re.pivots[k] == a.cols()) return std::nullopt;  // row (0 ... 0 | 1)
    x(re.pivots[k]) = re.matrix(static_cast<Index>(k), a.cols());
  }
  return x;
}

std::optional<Mat> inverse_matrix(const Mat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse_matrix: not square");
  const Index n = m.rows();
  Mat augmented(n, 2 * n);
  augmented.leftCols(n) = m;
  augmented.rightCols(n) = Mat::Identity(n, n);
  const RowEchelon re = rref(augmented);
  // Full rank on the left block iff pivots are exactly 0..n-1.
  if (static_cast<Index>(re.pivots.size()) < n || re.pivots[n - 1] >= n)
    return std::nullopt;
  return Mat(re.matrix.topRows(n).rightCols(n));
}

Subspace::Subspace(Index ambient, Mat basis, std::vector<Index> pivots)
    : ambient_(ambient), basis_(std::move(basis)), pivots_(std::move(pivots)) {}

Subspace Subspace::zero(Index ambient_dim) {
  return Subspace(ambient_dim, Mat::Zero(0, ambient_dim), {});
}

Subspace Subspace::full(Index ambient_dim) {
  std::vector<Index> pivots(static_cast<std::size_t>(ambient_dim));
  for (Index i = 0; i < ambient_dim; ++i) pivots[static_cast<std::size_t>(i)] = i;
  return Subspace(ambient_dim, Mat::Identity(ambient_dim, ambient_dim), std::move(pivots));
}

Subspace Subspace::from_spanning_rows(Index ambient_dim, const Mat& rows) {
  if (rows.rows() > 0 && rows.cols() != ambient_dim)
    throw std::invalid_argument("Subspace: spanning rows have wrong width");
  RrefBuilder builder(ambient_dim);
  builder.add_rows(rows);
  return Subspace(ambient_dim, builder.matrix(), builder.pivots());
}

Vec Subspace::residual(Vec v) const {
  if (v.size() != ambient_) throw std::invalid_argument("Subspace: vector has wrong dimension");
  for (Index k = 0; k < dim(); ++k) {
    const Rational coeff = v(pivots_[static_cast<std::size_t>(k)]);
    if (coeff != 0) v -= coeff * basis_.row(k).transpose();
  }
  return v;
}

bool Subspace::contains(const Vec& v) const { return is_zero(residual(v)); }

bool Subspace::operator==(const Subspace& other) const {
  if (ambient_ != other.ambient_ || dim() != other.dim()) return false;
  for (Index r = 0; r < dim(); ++r)
    for (Index c = 0; c < ambient_; ++c)
      if (basis_(r, c) != other.basis_(r, c)) return false;
  return true;
}

const char* to_string(SubspaceRelation relation) {
  switch (relation) {
    case SubspaceRelation::equal: return "equal";
    case SubspaceRelation::s1_subset_s2: return "s1_subset_s2";
    case SubspaceRelation::s2_subset_s1: return "s2_subset_s1";
    case SubspaceRelation::incomparable: return "incomparable";
  }
  return "?";
}

SubspaceRelation subspace_compare(const Subspace& s1, const Subspace& s2) {
  if (s1.ambient_dim() != s2.ambient_dim())
    throw std::invalid_argument("subspace_compare: ambient dimension mismatch");
  if (s1 == s2) return SubspaceRelation::equal;
  const auto contained = [](const Subspace& inner, const Subspace& outer) {
    for (Index r = 0; r < inner.dim(); ++r)
      if (!outer.contains(inner.basis_vector(r))) return false;
    return true;
  };
  const bool one_in_two = contained(s1, s2);
  const bool two_in_one = contained(s2, s1);
  if (one_in_two) return SubspaceRelation::s1_subset_s2;
  if (two_in_one) return SubspaceRelation::s2_subset_s1;
  return SubspaceRelation::incomparable;
}

Subspace nullspace(const Mat& m) {
  RrefBuilder builder(m.cols());
  builder.add_rows(m);
  const Mat reduced = builder.matrix();
  const std::vector<Index>& pivots = builder.pivots();
  std::vector<Index> free_cols;
  {
    std::size_t next_pivot = 0;
    for (Index c = 0; c < m.cols(); ++c) {
      if (next_pivot < pivots.size() && pivots[next_pivot] == c)
        ++next_pivot;
      else
        free_cols.push_back(c);
    }
  }
  Mat span = Mat::Zero(static_cast<Index>(free_cols.size()), m.cols());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const Index f = free_cols[k];
    span(static_cast<Index>(k), f) = 1;
    for (std::size_t p = 0; p < pivots.size(); ++p)
      span(static_cast<Index>(k), pivots[p]) = -reduced(static_cast<Index>(p), f);
  }
  return Subspace::from_spanning_rows(m.cols(), span);
}

}  // namespace trifi
