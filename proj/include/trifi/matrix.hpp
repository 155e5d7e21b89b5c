#pragma once

#include "trifi/rational.hpp"

#include <Eigen/Core>
#include <boost/multiprecision/eigen.hpp>

namespace trifi {

using Index = Eigen::Index;
using Mat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

bool is_zero(const Mat& m);
bool is_zero(const Vec& v);

Vec unit_vec(Index dim, Index i);  // i-th standard basis vector

// Column-major vectorization: entry (r, c) lands at index c * rows + r.
Vec vectorize(const Mat& m);
Mat unvectorize(const Vec& v, Index rows, Index cols);

}  // namespace trifi
