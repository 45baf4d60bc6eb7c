#pragma once

// Seeded generators for the inequality suite. All draws go through
// Rng::uniform so sequences are identical across standard libraries.

#include <cstdint>
#include <random>
#include <utility>

#include "wsum/lattice_measure.hpp"

namespace wsum {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform integer on [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi);
  double log_uniform(double lo, double hi);
  double exponential();

 private:
  std::mt19937_64 engine_;
};

// Independent stream for item `index` of a run seeded with `master`.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t index);

// Probability distribution on a random sub-range of [-8, 8] with
// exponential (flat Dirichlet) masses, some atoms knocked out.
LatticeMeasure random_distribution(Rng& rng);
// Signed measure on a random sub-range of [-8, 8], masses in (-1, 1).
LatticeMeasure random_signed_measure(Rng& rng);

// Distributions F, G on {0..8} with nu_k^+(F) = nu_k^+(G) for k <= s and
// u(F, G) > 0. s must be 1, 2 or 3. Throws RetryExhaustedError after 1000
// rejected candidates.
std::pair<LatticeMeasure, LatticeMeasure> gen_matched_pair(std::uint64_t seed, int s);

}  // namespace wsum
