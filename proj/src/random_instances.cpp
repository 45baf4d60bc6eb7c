#include "wsum/random_instances.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "wsum/errors.hpp"

namespace wsum {

std::int64_t Rng::integer(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<double>(hi - lo + 1);
  const auto k = static_cast<std::int64_t>(std::floor(uniform() * span));
  return lo + std::min<std::int64_t>(k, hi - lo);
}

double Rng::log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

double Rng::exponential() { return -std::log1p(-uniform()); }

std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 finalizer
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

LatticeMeasure random_distribution(Rng& rng) {
  const std::int64_t lo = rng.integer(-8, 8);
  const std::int64_t hi = rng.integer(lo, 8);
  std::vector<double> m(static_cast<std::size_t>(hi - lo + 1));
  double total = 0.0;
  for (auto& v : m) {
    v = rng.uniform() < 0.3 ? 0.0 : rng.exponential();
    total += v;
  }
  if (total == 0.0) {
    m.front() = 1.0;
    total = 1.0;
  }
  for (auto& v : m) v /= total;
  return LatticeMeasure::from_dense(lo, std::move(m));
}

LatticeMeasure random_signed_measure(Rng& rng) {
  const std::int64_t lo = rng.integer(-8, 8);
  const std::int64_t hi = rng.integer(lo, 8);
  std::vector<double> m(static_cast<std::size_t>(hi - lo + 1));
  for (auto& v : m) v = rng.uniform(-1.0, 1.0);
  return LatticeMeasure::from_dense(lo, std::move(m));
}

std::pair<LatticeMeasure, LatticeMeasure> gen_matched_pair(std::uint64_t seed, int s) {
  if (s < 1 || s > 3) throw std::invalid_argument("gen_matched_pair: s must be 1, 2 or 3");
  constexpr int kTop = 8;
  Rng rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<double> f(kTop + 1);
    double total = 0.0;
    for (auto& v : f) total += v = rng.exponential();
    for (auto& v : f) v /= total;

    // nu_j(F) for j = 0..s, with nu_0 the total mass.
    auto falling = [](int k, int j) {
      double x = 1.0;
      for (int i = 0; i < j; ++i) x *= k - i;
      return x;
    };
    std::vector<double> target(static_cast<std::size_t>(s) + 1, 0.0);
    for (int j = 0; j <= s; ++j)
      for (int k = 0; k <= kTop; ++k) target[static_cast<std::size_t>(j)] += falling(k, j) * f[static_cast<std::size_t>(k)];

    // Free component above s, then the triangular system for G_0..G_s.
    // The relative perturbation shrinks with each rejection.
    const double eps = rng.uniform(0.05, 1.0) * std::pow(0.95, attempt);
    std::vector<double> g(kTop + 1, 0.0);
    for (int k = s + 1; k <= kTop; ++k)
      g[static_cast<std::size_t>(k)] = f[static_cast<std::size_t>(k)] * (1.0 + eps * rng.uniform(-1.0, 1.0));
    for (int j = s; j >= 0; --j) {
      double rhs = target[static_cast<std::size_t>(j)];
      for (int k = j + 1; k <= kTop; ++k) rhs -= falling(k, j) * g[static_cast<std::size_t>(k)];
      g[static_cast<std::size_t>(j)] = rhs / falling(j, j);
    }
    bool ok = true;
    for (double v : g) ok = ok && v >= 0.0;
    if (!ok) continue;
    auto fm = LatticeMeasure::from_dense(0, std::move(f));
    auto gm = LatticeMeasure::from_dense(0, std::move(g));
    if (!(smoothness_u(fm, gm) > 0.0)) continue;
    return {std::move(fm), std::move(gm)};
  }
  throw RetryExhaustedError("gen_matched_pair: 1000 candidates rejected");
}

}  // namespace wsum
