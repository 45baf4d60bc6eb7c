#pragma once

// Structural factors of the Kolmogorov-distance bounds. Every factor is
// the bound with its absolute constant set to 1; BoundReport keeps the
// intermediate quantities so the factor can be recomposed and inspected.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wsum/lattice_measure.hpp"
#include "wsum/markov_binomial.hpp"
#include "wsum/weighted_measure.hpp"

namespace wsum {

// Block i: S_i = X_i1 + ... + X_in against Z_i = Z_i1 + ... + Z_in.
// `f` and `g` hold either one law each (identically distributed summands)
// or n laws each.
struct BlockSpec {
  std::vector<LatticeMeasure> f;
  std::vector<LatticeMeasure> g;
  std::uint64_t n = 1;
  std::size_t weight_index = 0;

  static BlockSpec iid(LatticeMeasure f, LatticeMeasure g, std::uint64_t n, std::size_t weight_index);

  bool is_iid() const { return f.size() == 1 && g.size() == 1; }
  const LatticeMeasure& f_at(std::size_t j) const { return is_iid() ? f.front() : f.at(j); }
  const LatticeMeasure& g_at(std::size_t j) const { return is_iid() ? g.front() : g.at(j); }
};

enum class BoundKind { independent, independent_sym, iid, negative_binomial, markov };

std::string_view to_string(BoundKind kind);

struct BoundReport {
  BoundKind kind = BoundKind::independent;
  double factor = 0.0;
  std::vector<std::pair<std::string, double>> components;
  std::vector<std::string> warnings;
  bool absolute_constant_excluded = true;

  // Throws std::out_of_range for an unknown name.
  double component(std::string_view name) const;
};

// Recompute the factor from the report's own components.
double recompose(const BoundReport& report);

struct AssumptionReport {
  bool ok = true;
  std::vector<std::string> warnings;
};

// beta_k^{+/-}(F, G) = nu_k(F) + nu_k(G).
double beta(const LatticeMeasure& f, const LatticeMeasure& g, int k, Side side);

// Relative tolerance for moment matching.
inline constexpr double kMomentMatchTol = 1e-10;
bool moments_match(const LatticeMeasure& f, const LatticeMeasure& g, int s);

AssumptionReport check_assumptions(std::span<const BlockSpec> blocks, int s);

BoundReport bound_independent(std::span<const BlockSpec> blocks, const WeightBasis& basis, int s);
// Throws OddSError for odd s.
BoundReport bound_independent_sym(std::span<const BlockSpec> blocks, const WeightBasis& basis, int s);
// Requires every block to be iid.
BoundReport bound_iid(std::span<const BlockSpec> blocks, const WeightBasis& basis, int s);

// Block with nonnegative summand law F, approximated by a moment-matched NB.
struct NbBlock {
  LatticeMeasure f;
  std::uint64_t n = 1;
  std::size_t weight_index = 0;
};

// nu1^2/(nu2 - nu1^2) * ln((nu2 - nu1^2 + nu1)/nu1): r ln(1/p~) of the
// single-summand match, written in factorial moments.
double r_log_inv_p_factorial_form(const LatticeMeasure& f);
// nu3 + nu1 nu2 + nu1^3 + (nu2 - nu1^2)^2 / nu1.
double nb_bracket(const LatticeMeasure& f);

BoundReport bound_nb(std::span<const NbBlock> blocks, const WeightBasis& basis);

struct MarkovBlock {
  MBParams params;
  std::size_t weight_index = 0;
};

BoundReport bound_markov(std::span<const MarkovBlock> blocks, const WeightBasis& basis, int k0);

struct FgGap {
  double tv_gap = 0.0;
  double bound = 0.0;
};

// ||F - G|| against (beta+_{s+1} + beta-_{s+1}) 2^{s+1} / (s+1)!.
// Throws MomentMismatchError unless moments agree to order s.
FgGap lemma_fg_gap(const LatticeMeasure& f, const LatticeMeasure& g, int s);

struct FgEvenResidual {
  double residual_tv = 0.0;
  // [beta+_{s+2} + beta-_{s+2} + beta-_{s+1}] 2^{s+2}, unknown constant set to 1.
  double heuristic_bound = 0.0;
  double ratio = 0.0;
};

// Residual of F - G after removing the (beta+ - beta-)_{s+1} term, s even.
FgEvenResidual lemma_fg_even_residual(const LatticeMeasure& f, const LatticeMeasure& g, int s);

// nu1 - nu2 - nu1^2; positive when Franken's condition holds.
double franken_value(const LatticeMeasure& f);

}  // namespace wsum
