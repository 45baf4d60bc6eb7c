#include "wsum/approximants.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "wsum/errors.hpp"

namespace wsum {

NegBinParams nb_match(double mean, double variance) {
  if (!(mean > 0.0)) throw UnderdispersedError("nb_match: mean must be positive");
  if (!(variance > mean)) throw UnderdispersedError("nb_match: variance must exceed the mean");
  return {mean * mean / (variance - mean), mean / variance};
}

LatticeMeasure nb_component_pmf(const NegBinParams& params, std::uint64_t n, double tail_tol) {
  if (!(params.r > 0.0) || !(params.p_tilde > 0.0 && params.p_tilde < 1.0))
    throw std::invalid_argument("nb_component_pmf: need r > 0 and p~ in (0,1)");
  if (n < 1) throw std::invalid_argument("nb_component_pmf: n must be >= 1");
  if (!(tail_tol > 0.0)) throw std::invalid_argument("nb_component_pmf: tail_tol must be positive");

  const double a = params.r / static_cast<double>(n);
  const double log_p = std::log(params.p_tilde);
  const double log_q = std::log(params.q_tilde());
  const double lgamma_a = std::lgamma(a);
  // log C(a+k-1, k) = lgamma(a+k) - lgamma(a) - lgamma(k+1); all arguments positive.
  auto log_pmf = [&](double k) { return std::lgamma(a + k) - lgamma_a - std::lgamma(k + 1.0) + a * log_p + k * log_q; };

  std::vector<double> pmf;
  for (std::uint64_t k = 0;; ++k) {
    const double kd = static_cast<double>(k);
    pmf.push_back(std::exp(log_pmf(kd)));
    // Cut on sum_{j>k} (1+j)^2 P(j), which bounds the lost mass and the
    // error in the first two moments. Successive pmf ratios q~(a+j)/(j+1)
    // for j > k are bounded by rho, and ((j+2)/(j+1))^2 by its value at k+1.
    const double rho = a >= 1.0 ? params.q_tilde() * (a + kd + 1.0) / (kd + 2.0) : params.q_tilde();
    const double rho2 = rho * ((kd + 3.0) / (kd + 2.0)) * ((kd + 3.0) / (kd + 2.0));
    if (rho2 < 1.0) {
      const double tail = (kd + 2.0) * (kd + 2.0) * std::exp(log_pmf(kd + 1.0)) / (1.0 - rho2);
      if (tail < tail_tol) break;
    }
    if (k > 100'000'000) throw std::runtime_error("nb_component_pmf: tail did not converge");
  }
  return LatticeMeasure::from_dense(0, std::move(pmf));
}

LatticeMeasure geometric_excess(double p, double tail_tol) {
  if (!(p >= 0.0 && p < 1.0)) throw std::invalid_argument("geometric_excess: p must lie in [0,1)");
  if (!(tail_tol > 0.0)) throw std::invalid_argument("geometric_excess: tail_tol must be positive");
  const double q = 1.0 - p;
  std::vector<double> masses{-1.0};
  double pk = 1.0;  // p^{k-1}
  do {
    masses.push_back(q * pk);
    pk *= p;
  } while (pk >= tail_tol);  // pk is now p^K, the tail beyond K
  return LatticeMeasure::from_dense(0, std::move(masses));
}

DinCoefficients din_coefficients(const MBParams& params) {
  params.validate();
  const double p = params.p, q = params.q(), qb = params.q_bar;
  const double n = static_cast<double>(params.n);
  const double s = q + qb;
  DinCoefficients c;
  c.gamma = q * qb / s;
  c.a1 = c.gamma * (qb - p) / s + n * c.gamma;
  c.a2 = n * (q * qb * qb / (s * s) * (p + q / s) + c.gamma * c.gamma / 2.0);
  return c;
}

DinResult build_din(const MBParams& params, double tail_tol) {
  const auto coef = din_coefficients(params);
  const double tau = tail_tol / 10.0;
  const auto y = geometric_excess(params.p, tau);
  const auto y2 = convolve(y, y);
  const auto arg = coef.a1 * y - coef.a2 * y2;
  auto e = exp_measure(arg, tau);

  // First-order effect of the geometric cut on the exponent; ||Y|| <= 2.
  const double arg_error = coef.a1 * tau + coef.a2 * (4.0 + tau) * tau;
  DinResult out{coef, std::move(e.measure), 0.0};
  out.truncation_budget = arg_error + e.tail_bound + out.measure.error_budget();
  return out;
}

}  // namespace wsum
