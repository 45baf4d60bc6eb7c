#include "wsum/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wsum/approximants.hpp"
#include "wsum/errors.hpp"

namespace wsum {

namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

std::string block_key(std::size_t i, const char* name) { return "block" + std::to_string(i) + "." + name; }

void require_weights(std::span<const BlockSpec> blocks, const WeightBasis& basis) {
  for (const auto& b : blocks)
    if (b.weight_index >= basis.size()) throw std::out_of_range("block weight index out of range");
}

LatticeMeasure unit_difference_power(int k) { return power(delta(1) - delta(0), static_cast<std::uint64_t>(k)); }

// Summand sums shared by the independent-case factors.
struct BlockSums {
  double sum_u = 0.0;
  double sum_sigma2 = 0.0;
};

BlockSums block_sums(const BlockSpec& b) {
  BlockSums s;
  const std::size_t laws = b.is_iid() ? 1 : b.n;
  const double mult = b.is_iid() ? static_cast<double>(b.n) : 1.0;
  for (std::size_t j = 0; j < laws; ++j) {
    s.sum_u += mult * smoothness_u(b.f_at(j), b.g_at(j));
    s.sum_sigma2 += mult * std::max(moments(b.f_at(j)).variance, moments(b.g_at(j)).variance);
  }
  return s;
}

// sum_j of fn(F_ij, G_ij) over the block's n summands.
template <class Fn>
double block_sum(const BlockSpec& b, Fn fn) {
  if (b.is_iid()) return static_cast<double>(b.n) * fn(b.f.front(), b.g.front());
  double acc = 0.0;
  for (std::size_t j = 0; j < b.n; ++j) acc += fn(b.f_at(j), b.g_at(j));
  return acc;
}

void validate_blocks(std::span<const BlockSpec> blocks) {
  for (const auto& b : blocks) {
    if (b.f.empty() || b.f.size() != b.g.size()) throw std::invalid_argument("block needs matching F and G lists");
    if (!b.is_iid() && b.f.size() != b.n) throw std::invalid_argument("block has neither 1 nor n summand laws");
  }
}

// Common part of both independent-case factors.
BoundReport independent_common(std::span<const BlockSpec> blocks, const WeightBasis& basis, int s,
                               BoundKind kind) {
  validate_blocks(blocks);
  require_weights(blocks, basis);
  BoundReport r;
  r.kind = kind;
  r.warnings = check_assumptions(blocks, s).warnings;
  double sum_u = 0.0;
  double product = 1.0;
  r.components.emplace_back("weight_ratio", basis.ratio());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto sums = block_sums(blocks[i]);
    sum_u += sums.sum_u;
    product *= 1.0 + sums.sum_sigma2 / sums.sum_u;
    r.components.emplace_back(block_key(i, "sum_u"), sums.sum_u);
    r.components.emplace_back(block_key(i, "sum_sigma2"), sums.sum_sigma2);
  }
  r.components.emplace_back("sum_u", sum_u);
  r.components.emplace_back("variance_product", product);
  return r;
}

}  // namespace

BlockSpec BlockSpec::iid(LatticeMeasure f, LatticeMeasure g, std::uint64_t n, std::size_t weight_index) {
  BlockSpec b;
  b.f.push_back(std::move(f));
  b.g.push_back(std::move(g));
  b.n = n;
  b.weight_index = weight_index;
  return b;
}

std::string_view to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::independent: return "independent";
    case BoundKind::independent_sym: return "independent_sym";
    case BoundKind::iid: return "iid";
    case BoundKind::negative_binomial: return "negative_binomial";
    case BoundKind::markov: return "markov";
  }
  return "unknown";
}

double BoundReport::component(std::string_view name) const {
  for (const auto& [k, v] : components)
    if (k == name) return v;
  throw std::out_of_range("BoundReport has no component " + std::string(name));
}

double recompose(const BoundReport& r) {
  const double ratio = r.component("weight_ratio");
  switch (r.kind) {
    case BoundKind::independent:
      return ratio * std::pow(r.component("sum_u"), -0.5) * r.component("variance_product") *
             r.component("beta_term");
    case BoundKind::independent_sym:
      return ratio * std::pow(r.component("sum_u"), -0.5) * r.component("variance_product") *
             (r.component("leading_term") + r.component("correction_term"));
    case BoundKind::iid:
      return ratio * std::pow(r.component("sum_nu"), -0.5) * r.component("beta_term");
    case BoundKind::negative_binomial:
      return ratio * std::pow(r.component("sum_n_u_tilde"), -0.5) * r.component("bracket_term");
    case BoundKind::markov:
      return ratio * r.component("numerator") / std::sqrt(r.component("denominator_sq"));
  }
  return 0.0;
}

double beta(const LatticeMeasure& f, const LatticeMeasure& g, int k, Side side) {
  return factorial_moment(f, k, side) + factorial_moment(g, k, side);
}

bool moments_match(const LatticeMeasure& f, const LatticeMeasure& g, int s) {
  for (int k = 1; k <= s; ++k)
    for (Side side : {Side::plus, Side::minus}) {
      const double a = factorial_moment(f, k, side);
      const double b = factorial_moment(g, k, side);
      if (std::abs(a - b) > kMomentMatchTol * std::max({1.0, std::abs(a), std::abs(b)})) return false;
    }
  return true;
}

AssumptionReport check_assumptions(std::span<const BlockSpec> blocks, int s) {
  AssumptionReport r;
  auto warn = [&r](std::string msg) {
    r.ok = false;
    r.warnings.push_back(std::move(msg));
  };
  if (s < 1) warn("s must be >= 1");
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& b = blocks[i];
    const std::string tag = "block " + std::to_string(i);
    if (b.n < 1) warn(tag + ": n < 1");
    const std::size_t laws = b.is_iid() ? 1 : b.f.size();
    double sum_u = 0.0;
    for (std::size_t j = 0; j < laws; ++j) {
      const auto& f = b.f_at(j);
      const auto& g = b.g_at(j);
      const std::string stag = tag + " summand " + std::to_string(j);
      if (!f.is_probability() || !g.is_probability()) warn(stag + ": not a probability distribution");
      const double u = smoothness_u(f, g);
      if (!(u > 0.0)) warn(stag + ": u <= 0");
      sum_u += (b.is_iid() ? static_cast<double>(b.n) : 1.0) * u;
      for (int k = 1; k <= s; ++k)
        for (Side side : {Side::plus, Side::minus}) {
          const double a = factorial_moment(f, k, side);
          const double c = factorial_moment(g, k, side);
          if (std::abs(a - c) > kMomentMatchTol * std::max({1.0, std::abs(a), std::abs(c)}))
            warn(stag + ": nu_" + std::to_string(k) + (side == Side::plus ? "^+" : "^-") + " mismatch (" +
                 std::to_string(a) + " vs " + std::to_string(c) + ")");
        }
      // Finite support makes every beta_{s+1} finite.
    }
    if (sum_u < 1.0) warn(tag + ": sum of u below 1");
  }
  return r;
}

BoundReport bound_independent(std::span<const BlockSpec> blocks, const WeightBasis& basis, int s) {
  auto r = independent_common(blocks, basis, s, BoundKind::independent);
  double beta_term = 0.0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const double betas = block_sum(blocks[i], [s](const auto& f, const auto& g) {
      return beta(f, g, s + 1, Side::plus) + beta(f, g, s + 1, Side::minus);
    });
    beta_term += betas * std::pow(r.component(block_key(i, "sum_u")), -s / 2.0);
  }
  r.components.emplace_back("beta_term", beta_term);
  r.factor = recompose(r);
  return r;
}

BoundReport bound_independent_sym(std::span<const BlockSpec> blocks, const WeightBasis& basis, int s) {
  if (s % 2 != 0) throw OddSError("bound_independent_sym requires even s");
  auto r = independent_common(blocks, basis, s, BoundKind::independent_sym);
  double leading = 0.0;
  double correction = 0.0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const double su = r.component(block_key(i, "sum_u"));
    const double lead = block_sum(blocks[i], [s](const auto& f, const auto& g) {
      return std::abs(beta(f, g, s + 1, Side::plus) - beta(f, g, s + 1, Side::minus));
    });
    const double corr = block_sum(blocks[i], [s](const auto& f, const auto& g) {
      return beta(f, g, s + 2, Side::plus) + beta(f, g, s + 2, Side::minus) + beta(f, g, s + 1, Side::minus);
    });
    leading += lead * std::pow(su, -s / 2.0);
    correction += corr * std::pow(su, -s / 2.0 - 0.5);
  }
  r.components.emplace_back("leading_term", leading);
  r.components.emplace_back("correction_term", correction);
  r.factor = recompose(r);
  return r;
}

BoundReport bound_iid(std::span<const BlockSpec> blocks, const WeightBasis& basis, int s) {
  validate_blocks(blocks);
  require_weights(blocks, basis);
  for (const auto& b : blocks)
    if (!b.is_iid()) throw std::invalid_argument("bound_iid requires identically distributed summands");
  BoundReport r;
  r.kind = BoundKind::iid;
  r.warnings = check_assumptions(blocks, s).warnings;
  r.components.emplace_back("weight_ratio", basis.ratio());
  double sum_nu = 0.0;
  double beta_term = 0.0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& b = blocks[i];
    const double u = smoothness_u(b.f.front(), b.g.front());
    const double n = static_cast<double>(b.n);
    const double betas = beta(b.f.front(), b.g.front(), s + 1, Side::plus) +
                         beta(b.f.front(), b.g.front(), s + 1, Side::minus);
    sum_nu += n * u;
    beta_term += betas / (std::pow(n, s / 2.0 - 1.0) * std::pow(u, s / 2.0));
    r.components.emplace_back(block_key(i, "u"), u);
    r.components.emplace_back(block_key(i, "beta"), betas);
  }
  r.components.emplace_back("sum_nu", sum_nu);
  r.components.emplace_back("beta_term", beta_term);
  r.factor = recompose(r);
  return r;
}

double r_log_inv_p_factorial_form(const LatticeMeasure& f) {
  const double nu1 = factorial_moment(f, 1, Side::plus);
  const double nu2 = factorial_moment(f, 2, Side::plus);
  const double excess = nu2 - nu1 * nu1;
  return nu1 * nu1 / excess * std::log((excess + nu1) / nu1);
}

double nb_bracket(const LatticeMeasure& f) {
  const double nu1 = factorial_moment(f, 1, Side::plus);
  const double nu2 = factorial_moment(f, 2, Side::plus);
  const double nu3 = factorial_moment(f, 3, Side::plus);
  const double excess = nu2 - nu1 * nu1;
  return nu3 + nu1 * nu2 + nu1 * nu1 * nu1 + excess * excess / nu1;
}

BoundReport bound_nb(std::span<const NbBlock> blocks, const WeightBasis& basis) {
  BoundReport r;
  r.kind = BoundKind::negative_binomial;
  r.components.emplace_back("weight_ratio", basis.ratio());
  double sum_nu = 0.0;
  double bracket_term = 0.0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& b = blocks[i];
    if (b.weight_index >= basis.size()) throw std::out_of_range("block weight index out of range");
    if (b.f.empty() || b.f.min_point() < 0)
      r.warnings.push_back("block " + std::to_string(i) + ": summand law not on nonnegative integers");
    const double n = static_cast<double>(b.n);
    const auto mom = moments(b.f);
    const auto nb = nb_match(n * mom.mean, n * mom.variance);
    const double r_log = nb.r * std::log(1.0 / nb.p_tilde);
    const double shift_tv = 2.0 * (1.0 - smoothness_u(b.f));
    const double u_tilde = 1.0 - 0.5 * std::max(shift_tv, 1.0 / std::sqrt(r_log));
    if (!(u_tilde > 0.0)) r.warnings.push_back("block " + std::to_string(i) + ": u~ <= 0");
    const double bracket = nb_bracket(b.f);
    sum_nu += n * u_tilde;
    bracket_term += bracket / u_tilde;
    r.components.emplace_back(block_key(i, "r"), nb.r);
    r.components.emplace_back(block_key(i, "p_tilde"), nb.p_tilde);
    r.components.emplace_back(block_key(i, "r_log_inv_p"), r_log);
    r.components.emplace_back(block_key(i, "r_log_inv_p_factorial_form"), r_log_inv_p_factorial_form(b.f));
    r.components.emplace_back(block_key(i, "u_tilde"), u_tilde);
    r.components.emplace_back(block_key(i, "bracket"), bracket);
  }
  r.components.emplace_back("sum_n_u_tilde", sum_nu);
  r.components.emplace_back("bracket_term", bracket_term);
  r.factor = recompose(r);
  return r;
}

BoundReport bound_markov(std::span<const MarkovBlock> blocks, const WeightBasis& basis, int k0) {
  BoundReport r;
  r.kind = BoundKind::markov;
  r.components.emplace_back("weight_ratio", basis.ratio());
  double numerator = 0.0;
  double denominator_sq = 0.0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& b = blocks[i];
    if (b.weight_index >= basis.size()) throw std::out_of_range("block weight index out of range");
    b.params.validate();
    const auto cond = cond1_check(b.params, k0, basis[b.weight_index]);
    for (const auto& c : cond.violated_clauses)
      r.warnings.push_back("block " + std::to_string(i) + ": cond1 violated: " + c);
    const double qb = b.params.q_bar;
    numerator += qb * (b.params.p + qb);
    denominator_sq += std::max(static_cast<double>(b.params.n) * qb, 1.0);
    r.components.emplace_back(block_key(i, "gamma"), din_coefficients(b.params).gamma);
  }
  r.components.emplace_back("numerator", numerator);
  r.components.emplace_back("denominator_sq", denominator_sq);
  r.factor = recompose(r);
  return r;
}

FgGap lemma_fg_gap(const LatticeMeasure& f, const LatticeMeasure& g, int s) {
  if (s < 1) throw std::invalid_argument("lemma_fg_gap: s must be >= 1");
  if (!moments_match(f, g, s)) throw MomentMismatchError("lemma_fg_gap: factorial moments differ below order s+1");
  const double betas = beta(f, g, s + 1, Side::plus) + beta(f, g, s + 1, Side::minus);
  return {tv_norm(f - g), betas * std::ldexp(1.0, s + 1) / factorial(s + 1)};
}

FgEvenResidual lemma_fg_even_residual(const LatticeMeasure& f, const LatticeMeasure& g, int s) {
  if (s % 2 != 0) throw OddSError("lemma_fg_even_residual requires even s");
  if (!moments_match(f, g, s)) throw MomentMismatchError("lemma_fg_even_residual: factorial moments differ");
  const double lead =
      (beta(f, g, s + 1, Side::plus) - beta(f, g, s + 1, Side::minus)) / factorial(s + 1);
  const auto residual = f - g - lead * unit_difference_power(s + 1);
  FgEvenResidual out;
  out.residual_tv = tv_norm(residual);
  out.heuristic_bound = (beta(f, g, s + 2, Side::plus) + beta(f, g, s + 2, Side::minus) +
                         beta(f, g, s + 1, Side::minus)) *
                        std::ldexp(1.0, s + 2);
  out.ratio = out.heuristic_bound > 0.0 ? out.residual_tv / out.heuristic_bound : 0.0;
  return out;
}

double franken_value(const LatticeMeasure& f) {
  const double nu1 = factorial_moment(f, 1, Side::plus);
  return nu1 - factorial_moment(f, 2, Side::plus) - nu1 * nu1;
}

}  // namespace wsum
