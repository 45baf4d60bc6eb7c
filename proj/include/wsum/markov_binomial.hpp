#pragma once

// Markov binomial law: number of ones among xi_1..xi_n for the two-state
// chain started in state 0, with P(1 -> 1) = p and P(0 -> 1) = q_bar.

#include <cstdint>
#include <string>
#include <vector>

#include "wsum/lattice_measure.hpp"

namespace wsum {

struct MBParams {
  double p = 0.0;      // stay in state 1
  double q_bar = 0.0;  // move 0 -> 1
  std::uint64_t n = 1;

  double q() const { return 1.0 - p; }
  double p_bar() const { return 1.0 - q_bar; }

  // Throws std::invalid_argument unless p, q_bar in (0,1) and n >= 1.
  void validate() const;
};

struct Cond1Report {
  bool satisfied = true;
  std::vector<std::string> violated_clauses;
};

// Per-clause check of the small-q_bar regime. Never throws.
Cond1Report cond1_check(const MBParams& params, int k0, double w);

// Exact pmf on {0..n} by dynamic programming over (last state, count).
LatticeMeasure mb_pmf(const MBParams& params);

// Empirical pmf from `trials` seeded chain runs.
LatticeMeasure mb_simulate(const MBParams& params, std::uint64_t trials, std::uint64_t seed);

}  // namespace wsum
