#include "wsum/markov_binomial.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace wsum {

void MBParams::validate() const {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("MBParams: p must lie in (0,1)");
  if (!(q_bar > 0.0 && q_bar < 1.0)) throw std::invalid_argument("MBParams: q_bar must lie in (0,1)");
  if (n < 1) throw std::invalid_argument("MBParams: n must be >= 1");
}

Cond1Report cond1_check(const MBParams& params, int k0, double w) {
  Cond1Report r;
  auto clause = [&r](bool ok, const char* name) {
    if (!ok) {
      r.satisfied = false;
      r.violated_clauses.emplace_back(name);
    }
  };
  clause(k0 >= 2, "k0 >= 2");
  clause(params.q_bar >= std::pow(static_cast<double>(params.n), -static_cast<double>(k0)), "q_bar >= n^-k0");
  clause(params.p > 0.0 && params.p <= 0.5, "0 < p <= 1/2");
  clause(params.q_bar <= 1.0 / 30.0, "q_bar <= 1/30");
  clause(w > 0.0, "w > 0");
  clause(params.n >= 1, "n >= 1");
  return r;
}

LatticeMeasure mb_pmf(const MBParams& params) {
  params.validate();
  const std::size_t n = params.n;
  const double p = params.p, q = params.q(), qb = params.q_bar, pb = params.p_bar();
  // at0[c] / at1[c]: probability of count c with the chain now in state 0 / 1.
  std::vector<double> at0(n + 1, 0.0), at1(n + 1, 0.0), next0(n + 1), next1(n + 1);
  at0[0] = 1.0;
  for (std::size_t step = 1; step <= n; ++step) {
    next0[0] = at0[0] * pb + at1[0] * q;
    next1[0] = 0.0;
    for (std::size_t c = 1; c <= step; ++c) {
      next0[c] = at0[c] * pb + at1[c] * q;
      next1[c] = at0[c - 1] * qb + at1[c - 1] * p;
    }
    std::swap(at0, next0);
    std::swap(at1, next1);
  }
  std::vector<double> pmf(n + 1);
  for (std::size_t c = 0; c <= n; ++c) pmf[c] = at0[c] + at1[c];
  return LatticeMeasure::from_dense(0, std::move(pmf));
}

LatticeMeasure mb_simulate(const MBParams& params, std::uint64_t trials, std::uint64_t seed) {
  params.validate();
  if (trials < 1) throw std::invalid_argument("mb_simulate: trials must be >= 1");
  std::mt19937_64 rng(seed);
  // 53-bit uniform in [0,1); avoids implementation-defined distributions.
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<double> counts(params.n + 1, 0.0);
  for (std::uint64_t t = 0; t < trials; ++t) {
    bool ill = false;
    std::size_t sum = 0;
    for (std::uint64_t k = 0; k < params.n; ++k) {
      ill = uniform() < (ill ? params.p : params.q_bar);
      sum += ill;
    }
    counts[sum] += 1.0;
  }
  for (double& c : counts) c /= static_cast<double>(trials);
  return LatticeMeasure::from_dense(0, std::move(counts));
}

}  // namespace wsum
