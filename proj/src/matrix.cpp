#include "trifi/matrix.hpp"

#include <stdexcept>

namespace trifi {

Vec unit_vec(Index dim, Index i) {
  if (i < 0 || i >= dim) throw std::invalid_argument("unit_vec: index out of range");
  Vec v = Vec::Zero(dim);
  v(i) = 1;
  return v;
}

bool is_zero(const Mat& m) {
  for (Index c = 0; c < m.cols(); ++c)
    for (Index r = 0; r < m.rows(); ++r)
      if (m(r, c) != 0) return false;
  return true;
}

bool is_zero(const Vec& v) {
  for (Index i = 0; i < v.size(); ++i)
    if (v(i) != 0) return false;
  return true;
}

Vec vectorize(const Mat& m) {
  Vec out(m.rows() * m.cols());
  for (Index c = 0; c < m.cols(); ++c)
    for (Index r = 0; r < m.rows(); ++r) out(c * m.rows() + r) = m(r, c);
  return out;
}

Mat unvectorize(const Vec& v, Index rows, Index cols) {
  if (v.size() != rows * cols) throw std::invalid_argument("unvectorize: size mismatch");
  Mat out(rows, cols);
  for (Index c = 0; c < cols; ++c)
    for (Index r = 0; r < rows; ++r) out(r, c) = v(c * rows + r);
  return out;
}

}  // namespace trifi
