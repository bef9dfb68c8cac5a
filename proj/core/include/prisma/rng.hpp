#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "prisma/types.hpp"

namespace prisma {

/// Deterministic random source for synthetic instances: mt19937_64 with
/// fixed uniform/normal mappings instead of std::*_distribution, so a seed
/// produces the same stream on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller; generates pairs, caches the spare.
  double normal();

  /// Uniform integer in [0, n), rejection-sampled to avoid modulo bias.
  std::int64_t below(std::int64_t n);

  Vector normal_vector(Index n);
  Matrix normal_matrix(Index rows, Index cols);

  /// k distinct indices from [0, n), in draw order (partial Fisher-Yates).
  std::vector<Index> sample_without_replacement(Index n, Index k);

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace prisma
