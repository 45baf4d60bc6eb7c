#pragma once

#include <cstdint>

#include "wsum/lattice_measure.hpp"
#include "wsum/markov_binomial.hpp"

namespace wsum {

inline constexpr double kDefaultTailTol = 1e-10;

// NB(r, p~): P(k) = C(r+k-1, k) p~^r q~^k, k >= 0, r real.
struct NegBinParams {
  double r = 1.0;
  double p_tilde = 0.5;

  double q_tilde() const { return 1.0 - p_tilde; }
  double mean() const { return r * q_tilde() / p_tilde; }
  double variance() const { return r * q_tilde() / (p_tilde * p_tilde); }
};

// Match mean and variance; throws UnderdispersedError unless variance > mean > 0.
NegBinParams nb_match(double mean, double variance);

// pmf of NB(r/n, p~), truncated once a bound on the remaining tail
// sum (1+k)^2 P(k) drops below tail_tol, so mass and the first two moments
// are each off by at most tail_tol. Its n-th convolution power is NB(r, p~).
LatticeMeasure nb_component_pmf(const NegBinParams& params, std::uint64_t n, double tail_tol);

// Y = Geom - delta_0 with Y{k} = q p^{k-1}, k >= 1, q = 1 - p, cut where p^K < tail_tol.
LatticeMeasure geometric_excess(double p, double tail_tol);

struct DinCoefficients {
  double a1 = 0.0;     // coefficient of Y
  double a2 = 0.0;     // coefficient of -Y^2
  double gamma = 0.0;  // q q_bar / (q + q_bar)
};

struct DinResult {
  DinCoefficients coefficients;
  LatticeMeasure measure;  // exp{a1 Y - a2 Y^2} on the unit lattice
  // Geometric truncation carried through the exponent, plus series tail,
  // plus trimming.
  double truncation_budget = 0.0;
};

DinCoefficients din_coefficients(const MBParams& params);
DinResult build_din(const MBParams& params, double tail_tol = kDefaultTailTol);

}  // namespace wsum
