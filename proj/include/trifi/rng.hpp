#pragma once

#include "trifi/matrix.hpp"

#include <cstdint>
#include <random>

namespace trifi {

// Deterministic sampler for small rationals: numerators in [-9, 9],
// denominators in [1, 9]. mt19937_64 output is fully specified by the
// standard, so seeded runs reproduce byte-for-byte everywhere.
class RationalSampler {
 public:
  static constexpr std::uint64_t kDefaultSeed = 0x7472696669ULL;

  explicit RationalSampler(std::uint64_t seed = kDefaultSeed) : gen_(seed) {}

  std::uint64_t next_below(std::uint64_t bound);  // uniform in [0, bound)
  Rational next();
  Rational next_nonzero();
  Vec next_vector(Index length);
  Mat next_matrix(Index rows, Index cols);

 private:
  std::mt19937_64 gen_;
};

}  // namespace trifi
