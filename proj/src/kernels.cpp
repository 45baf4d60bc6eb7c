#include "wsum/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

namespace wsum::kernels {

namespace {

// Below this much work a parallel region costs more than it saves.
constexpr std::int64_t kParallelThreshold = 1 << 14;

}  // namespace

std::vector<double> convolve_serial(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ai = a[i];
    if (ai == 0.0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += ai * b[j];
  }
  return out;
}

std::vector<double> convolve_parallel(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  // Iterate over the shorter operand inside the gather loop.
  if (a.size() > b.size()) std::swap(a, b);
  const auto na = static_cast<std::int64_t>(a.size());
  const auto nb = static_cast<std::int64_t>(b.size());
  const std::int64_t nout = na + nb - 1;
  std::vector<double> out(static_cast<std::size_t>(nout), 0.0);
  const double* pa = a.data();
  const double* pb = b.data();
  double* po = out.data();

#pragma omp parallel for schedule(static) if (na * nb > kParallelThreshold)
  for (std::int64_t k = 0; k < nout; ++k) {
    const std::int64_t lo = std::max<std::int64_t>(0, k - nb + 1);
    const std::int64_t hi = std::min<std::int64_t>(na - 1, k);
    double acc = 0.0;
#pragma omp simd reduction(+ : acc)
    for (std::int64_t j = lo; j <= hi; ++j) acc += pa[j] * pb[k - j];
    po[k] = acc;
  }
  return out;
}

KeyedMasses keyed_convolve_serial(const KeyedMasses& a, const KeyedMasses& b) {
  std::map<std::int64_t, double> acc;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) acc[a.keys[i] + b.keys[j]] += a.masses[i] * b.masses[j];
  KeyedMasses out;
  out.keys.reserve(acc.size());
  out.masses.reserve(acc.size());
  for (const auto& [k, m] : acc) {
    out.keys.push_back(k);
    out.masses.push_back(m);
  }
  return out;
}

KeyedMasses keyed_convolve_parallel(const KeyedMasses& a, const KeyedMasses& b) {
  const auto na = static_cast<std::int64_t>(a.size());
  const auto nb = static_cast<std::int64_t>(b.size());
  std::vector<std::pair<std::int64_t, double>> pairs(static_cast<std::size_t>(na * nb));

#pragma omp parallel for schedule(static) if (na * nb > kParallelThreshold)
  for (std::int64_t i = 0; i < na; ++i) {
    const std::int64_t ka = a.keys[static_cast<std::size_t>(i)];
    const double ma = a.masses[static_cast<std::size_t>(i)];
    auto* row = pairs.data() + i * nb;
    for (std::int64_t j = 0; j < nb; ++j)
      row[j] = {ka + b.keys[static_cast<std::size_t>(j)], ma * b.masses[static_cast<std::size_t>(j)]};
  }

  // Stable sort keeps the per-key summation order fixed (row-major).
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });

  KeyedMasses out;
  for (std::size_t i = 0; i < pairs.size();) {
    const std::int64_t key = pairs[i].first;
    double acc = 0.0;
    for (; i < pairs.size() && pairs[i].first == key; ++i) acc += pairs[i].second;
    out.keys.push_back(key);
    out.masses.push_back(acc);
  }
  return out;
}

KeyedMasses keyed_convolve_dense(const KeyedMasses& a, const KeyedMasses& b) {
  if (a.size() == 0 || b.size() == 0) return {};
  auto densify = [](const KeyedMasses& x) {
    const std::int64_t lo = x.keys.front();
    std::vector<double> d(static_cast<std::size_t>(x.keys.back() - lo + 1), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) d[static_cast<std::size_t>(x.keys[i] - lo)] = x.masses[i];
    return d;
  };
  const auto da = densify(a);
  const auto db = densify(b);
  const auto dc = convolve_parallel(da, db);
  const std::int64_t lo = a.keys.front() + b.keys.front();
  KeyedMasses out;
  for (std::size_t k = 0; k < dc.size(); ++k) {
    if (dc[k] == 0.0) continue;
    out.keys.push_back(lo + static_cast<std::int64_t>(k));
    out.masses.push_back(dc[k]);
  }
  return out;
}

double max_abs_prefix(std::span<const double> values) {
  double run = 0.0;
  double best = 0.0;
  for (double v : values) {
    run += v;
    best = std::max(best, std::abs(run));
  }
  return best;
}

}  // namespace wsum::kernels
