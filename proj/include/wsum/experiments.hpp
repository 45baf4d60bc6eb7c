#pragma once

// Sweeps that compare exact Kolmogorov distances against the structural
// bound factors over a grid of n.

#include <cstdint>
#include <string>
#include <vector>

#include "wsum/approximants.hpp"
#include "wsum/bounds.hpp"
#include "wsum/json_io.hpp"
#include "wsum/rate_fit.hpp"

namespace wsum {

// The two-weight example: F = {0: .375, 1: .5, 4: .125},
// G = {0: .45, 1: .25, 2: .25, 5: .05}, w = (1, sqrt 2).
LatticeMeasure example_f();
LatticeMeasure example_g();

struct ExamplePrereqs {
  std::vector<double> nu_plus_f;  // k = 1..4
  std::vector<double> nu_plus_g;
  bool moments_match_to_3 = false;
  double beta4_plus = 0.0;
  double u = 0.0;
  double franken = 0.0;  // nu1 - nu2 - nu1^2 for F
};

struct SweepRow {
  std::uint64_t n = 0;
  std::uint64_t n1 = 0;  // second count where relevant (example: ceil(sqrt n))
  double distance = 0.0;
  BoundReport bound;
  double ratio = 0.0;  // distance / bound.factor
  // Extra named columns (Markov: D_in moment gaps, NB: r, p~).
  std::vector<std::pair<std::string, double>> extras;
};

struct SweepResult {
  std::string kind;
  std::vector<SweepRow> rows;
  RateFit distance_fit;
  bool has_distance_fit = false;
  RateFit factor_fit;
  bool has_factor_fit = false;
  // max ratio / min ratio over the grid.
  double ratio_spread = 0.0;
  std::vector<std::string> notes;
};

struct ExampleResult {
  ExamplePrereqs prereqs;
  SweepResult sweep;
};

ExamplePrereqs example_prereqs();
// n2 = n, n1 = ceil(sqrt n); exact distance between L(S) and L(Z).
ExampleResult run_example(const std::vector<std::uint64_t>& n_grid);

struct MarkovBlockConfig {
  double p = 0.3;
  double q_bar = 0.02;
  std::size_t weight_index = 0;
};

struct MarkovConfig {
  std::vector<MarkovBlockConfig> blocks{MarkovBlockConfig{}};
  std::vector<double> weights{1.0};
  std::vector<std::uint64_t> n_grid{50, 100, 200, 400};
  int k0 = 2;
  double tail_tol = kDefaultTailTol;
};

// All blocks use n_i = n. Distance |prod H_in - prod D_in|_K.
SweepResult run_markov(const MarkovConfig& config);

struct NbBlockConfig {
  LatticeMeasure f;
  std::size_t weight_index = 0;
};

struct NbConfig {
  std::vector<NbBlockConfig> blocks;  // defaults to the example F with w = 1
  std::vector<double> weights{1.0};
  std::vector<std::uint64_t> n_grid{25, 100, 400, 1600};
  double tail_tol = kDefaultTailTol;
};

// S_i = F_i^{*n} against the moment-matched NB(r_i, p~_i).
SweepResult run_nb(const NbConfig& config);

// Poisson(n) + w2 Bernoulli(1/3) against Poisson(n) + w2 Bernoulli(1/4).
SweepResult run_demo_intro(const std::vector<std::uint64_t>& n_grid, double w2, double tail_tol);

Json to_json(const ExamplePrereqs& p);
Json to_json(const SweepResult& r);
// Header + one row per n; bound components flattened after the fixed columns.
std::string to_csv(const SweepResult& r);

}  // namespace wsum
