#include "trifi/rng.hpp"

#include <stdexcept>

namespace trifi {

// std::uniform_int_distribution is implementation-defined, which would break
// cross-platform reproducibility of seeded reports; rejection sampling over
// the raw 64-bit stream is not.
std::uint64_t RationalSampler::next_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("next_below: bound must be positive");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t draw;
  do {
    draw = gen_();
  } while (draw >= limit);
  return draw % bound;
}

Rational RationalSampler::next() {
  const long numerator = static_cast<long>(next_below(19)) - 9;
  const long denominator = static_cast<long>(next_below(9)) + 1;
  return Rational(numerator, denominator);
}

Rational RationalSampler::next_nonzero() {
  for (;;) {
    Rational value = next();
    if (value != 0) return value;
  }
}

Vec RationalSampler::next_vector(Index length) {
  Vec result(length);
  for (Index i = 0; i < length; ++i) result(i) = next();
  return result;
}

Mat RationalSampler::next_matrix(Index rows, Index cols) {
  Mat result(rows, cols);
  for (Index c = 0; c < cols; ++c)
    for (Index r = 0; r < rows; ++r) result(r, c) = next();
  return result;
}

}  // namespace trifi
