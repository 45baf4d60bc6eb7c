#include "wsum/lattice_measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "wsum/kernels.hpp"

namespace wsum {

LatticeMeasure::LatticeMeasure(std::initializer_list<std::pair<std::int64_t, double>> entries)
    : LatticeMeasure(from_entries(std::span(entries.begin(), entries.size()))) {}

LatticeMeasure LatticeMeasure::from_entries(std::span<const std::pair<std::int64_t, double>> entries) {
  if (entries.empty()) return {};
  std::int64_t lo = entries.front().first;
  std::int64_t hi = lo;
  for (const auto& [k, m] : entries) {
    lo = std::min(lo, k);
    hi = std::max(hi, k);
  }
  std::vector<double> dense(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for (const auto& [k, m] : entries) dense[static_cast<std::size_t>(k - lo)] += m;
  return from_dense(lo, std::move(dense));
}

LatticeMeasure LatticeMeasure::from_dense(std::int64_t offset, std::vector<double> masses,
                                          double error_budget) {
  LatticeMeasure out;
  out.offset_ = offset;
  out.masses_ = std::move(masses);
  out.error_budget_ = error_budget;
  out.normalize_ends();
  return out;
}

void LatticeMeasure::normalize_ends() {
  std::size_t first = 0;
  while (first < masses_.size() && masses_[first] == 0.0) ++first;
  if (first == masses_.size()) {
    masses_.clear();
    offset_ = 0;
    return;
  }
  std::size_t last = masses_.size();
  while (masses_[last - 1] == 0.0) --last;
  if (first > 0 || last < masses_.size()) {
    masses_ = std::vector<double>(masses_.begin() + static_cast<std::ptrdiff_t>(first),
                                  masses_.begin() + static_cast<std::ptrdiff_t>(last));
    offset_ += static_cast<std::int64_t>(first);
  }
}

double LatticeMeasure::operator[](std::int64_t k) const {
  if (masses_.empty() || k < min_point() || k > max_point()) return 0.0;
  return masses_[static_cast<std::size_t>(k - offset_)];
}

std::vector<std::pair<std::int64_t, double>> LatticeMeasure::entries() const {
  std::vector<std::pair<std::int64_t, double>> out;
  for (std::size_t i = 0; i < masses_.size(); ++i)
    if (masses_[i] != 0.0) out.emplace_back(offset_ + static_cast<std::int64_t>(i), masses_[i]);
  return out;
}

std::size_t LatticeMeasure::support_size() const {
  return static_cast<std::size_t>(std::count_if(masses_.begin(), masses_.end(), [](double m) { return m != 0.0; }));
}

double LatticeMeasure::total_mass() const {
  double s = 0.0;
  for (double m : masses_) s += m;
  return s;
}

bool LatticeMeasure::is_probability(double tol) const {
  if (std::abs(total_mass() - 1.0) > tol) return false;
  return std::all_of(masses_.begin(), masses_.end(), [](double m) { return m >= 0.0; });
}

LatticeMeasure& LatticeMeasure::operator+=(const LatticeMeasure& other) {
  if (other.empty()) {
    error_budget_ += other.error_budget_;
    return *this;
  }
  if (empty()) {
    const double budget = error_budget_;
    *this = other;
    error_budget_ += budget;
    return *this;
  }
  const std::int64_t lo = std::min(min_point(), other.min_point());
  const std::int64_t hi = std::max(max_point(), other.max_point());
  std::vector<double> out(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for (std::size_t i = 0; i < masses_.size(); ++i) out[static_cast<std::size_t>(offset_ - lo) + i] = masses_[i];
  for (std::size_t i = 0; i < other.masses_.size(); ++i)
    out[static_cast<std::size_t>(other.offset_ - lo) + i] += other.masses_[i];
  offset_ = lo;
  masses_ = std::move(out);
  error_budget_ += other.error_budget_;
  normalize_ends();
  return *this;
}

LatticeMeasure& LatticeMeasure::operator-=(const LatticeMeasure& other) {
  return *this += (-1.0) * other;
}

LatticeMeasure& LatticeMeasure::operator*=(double scale) {
  for (double& m : masses_) m *= scale;
  error_budget_ *= std::abs(scale);
  normalize_ends();
  return *this;
}

bool operator==(const LatticeMeasure& a, const LatticeMeasure& b) {
  return a.offset_ == b.offset_ && a.masses_ == b.masses_;
}

LatticeMeasure delta(std::int64_t a) { return LatticeMeasure::from_dense(a, {1.0}); }

double tv_norm(const LatticeMeasure& m) {
  double s = 0.0;
  for (double v : m.dense()) s += std::abs(v);
  return s;
}

LatticeMeasure convolve(const LatticeMeasure& a, const LatticeMeasure& b) {
  if (a.empty() || b.empty()) return LatticeMeasure::from_dense(0, {}, a.error_budget() + b.error_budget());
  auto out = kernels::convolve_parallel(a.dense(), b.dense());

  double norm = 0.0;
  for (double v : out) norm += std::abs(v);
  const double cut = kTrimThreshold * norm;
  double trimmed = 0.0;
  for (double& v : out) {
    if (v != 0.0 && std::abs(v) < cut) {
      trimmed += std::abs(v);
      v = 0.0;
    }
  }
  const double ea = a.error_budget();
  const double eb = b.error_budget();
  const double budget = ea * tv_norm(b) + eb * tv_norm(a) + ea * eb + trimmed;
  return LatticeMeasure::from_dense(a.min_point() + b.min_point(), std::move(out), budget);
}

LatticeMeasure power(const LatticeMeasure& a, std::uint64_t n) {
  LatticeMeasure result = delta(0);
  LatticeMeasure base = a;
  bool first = true;
  while (n > 0) {
    if (n & 1U) {
      result = first ? base : convolve(result, base);
      first = false;
    }
    n >>= 1U;
    if (n > 0) base = convolve(base, base);
  }
  return result;
}

namespace {

// Truncated series sum_{k<=K} M^k/k! with K the first index whose factorial
// tail bound on ||M|| is at most tol.
ExpResult exp_series(const LatticeMeasure& m, double tol) {
  const double x = tv_norm(m);
  ExpResult res{delta(0), 0.0, 1};
  LatticeMeasure term = delta(0);
  double next = x;  // x^{k+1}/(k+1)! for the current k
  for (int k = 0;; ++k) {
    if (k + 2 > x) {
      const double bound = next / (1.0 - x / (k + 2));
      if (bound <= tol) {
        res.tail_bound = bound;
        return res;
      }
    }
    if (k > 100000) throw std::runtime_error("exp_measure: series did not reach tail tolerance");
    term = convolve(term, m) * (1.0 / (k + 1));
    res.measure += term;
    ++res.terms;
    next *= x / (k + 2);
  }
}

}  // namespace

ExpResult exp_measure(const LatticeMeasure& m, double tail_tol) {
  if (!(tail_tol > 0.0)) throw std::invalid_argument("exp_measure: tail_tol must be positive");

  // exp{M} = e^{M{0}} exp{M - M{0} delta_0}.
  const double m0 = m[0];
  LatticeMeasure rest = m;
  if (m0 != 0.0) rest -= m0 * delta(0);
  const double x = tv_norm(rest);
  if (rest.empty()) return {std::exp(m0) * delta(0), 0.0, 1};

  int squarings = 0;
  while (m0 / std::ldexp(1.0, squarings) < -32.0) ++squarings;

  if (squarings == 0) {
    const double scale = std::exp(m0);
    auto series = exp_series(rest, tail_tol / scale);
    series.measure *= scale;
    series.tail_bound *= scale;
    return series;
  }

  // exp{M} = (exp{M/s})^s with s = 2^squarings. If each factor is within tau
  // of its exact value in TV and both have norm <= nrm, the s-th powers
  // differ by at most s * tau * nrm^{s-1}.
  const double s = std::ldexp(1.0, squarings);
  const double m0s = m0 / s;
  const double xs = x / s;
  const double log_norm = m0s + xs;
  const double log_tau = std::log(tail_tol) - std::log(s) - (s - 1.0) * std::max(log_norm, 0.0) - m0s;
  const double tau = std::exp(std::max(log_tau, std::log(std::numeric_limits<double>::min())));
  auto small = exp_series(rest * (1.0 / s), tau);
  const double scale = std::exp(m0s);
  small.measure *= scale;
  const double tail_small = small.tail_bound * scale;

  LatticeMeasure result = small.measure;
  for (int i = 0; i < squarings; ++i) result = convolve(result, result);

  const double nrm = std::exp(log_norm) + tail_small;
  const double realized =
      tail_small > 0.0 ? std::exp(std::log(s) + std::log(tail_small) + (s - 1.0) * std::log(nrm)) : 0.0;
  return {std::move(result), realized, small.terms};
}

double kolmogorov_norm(const LatticeMeasure& m) { return kernels::max_abs_prefix(m.dense()); }

std::complex<double> char_fn(const LatticeMeasure& m, double t, double center, int order) {
  if (order != 0 && order != 1) throw std::invalid_argument("char_fn: order must be 0 or 1");
  std::complex<double> acc{0.0, 0.0};
  const auto dense = m.dense();
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] == 0.0) continue;
    const double shift = static_cast<double>(m.offset() + static_cast<std::int64_t>(i)) - center;
    const std::complex<double> phase = std::polar(1.0, t * shift);
    if (order == 0)
      acc += phase * dense[i];
    else
      acc += std::complex<double>(0.0, shift) * phase * dense[i];
  }
  return acc;
}

double factorial_moment(const LatticeMeasure& f, int k, Side side) {
  if (k < 1) throw std::invalid_argument("factorial_moment: k must be >= 1");
  double acc = 0.0;
  for (const auto& [point, mass] : f.entries()) {
    const std::int64_t mpt = side == Side::plus ? point : -point;
    if (mpt < k) continue;
    double falling = 1.0;
    for (int j = 0; j < k; ++j) falling *= static_cast<double>(mpt - j);
    acc += falling * mass;
  }
  return acc;
}

double smoothness_u_shift_route(const LatticeMeasure& f) {
  if (f.empty()) return 1.0;
  // ||F (delta_1 - delta_0)|| = sum_k |F{k-1} - F{k}|.
  double tv = 0.0;
  for (std::int64_t k = f.min_point(); k <= f.max_point() + 1; ++k) tv += std::abs(f[k - 1] - f[k]);
  return 1.0 - 0.5 * tv;
}

double smoothness_u_overlap_route(const LatticeMeasure& f) {
  double acc = 0.0;
  for (std::int64_t k = f.min_point() + 1; k <= f.max_point(); ++k) acc += std::min(f[k], f[k - 1]);
  return acc;
}

double smoothness_u(const LatticeMeasure& f) { return smoothness_u_overlap_route(f); }

double smoothness_u(const LatticeMeasure& f, const LatticeMeasure& g) {
  return std::min(smoothness_u(f), smoothness_u(g));
}

double concentration(const LatticeMeasure& f, double h) {
  if (h < 0.0) throw std::invalid_argument("concentration: h must be nonnegative");
  const auto dense = f.dense();
  if (dense.empty()) return 0.0;
  const double span = std::floor(h);
  const std::size_t width =
      span >= static_cast<double>(dense.size()) ? dense.size() : static_cast<std::size_t>(span) + 1;
  std::vector<double> prefix(dense.size() + 1, 0.0);
  for (std::size_t i = 0; i < dense.size(); ++i) prefix[i + 1] = prefix[i] + dense[i];
  double best = 0.0;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] == 0.0) continue;
    const std::size_t end = std::min(dense.size(), i + width);
    best = std::max(best, prefix[end] - prefix[i]);
  }
  return best;
}

MomentSummary moments(const LatticeMeasure& f) {
  const auto dense = f.dense();
  double mass = 0.0;
  double first = 0.0;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    mass += dense[i];
    first += static_cast<double>(i) * dense[i];
  }
  const double rel_mean = first / mass;
  double second = 0.0;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    const double d = static_cast<double>(i) - rel_mean;
    second += d * d * dense[i];
  }
  return {static_cast<double>(f.offset()) + rel_mean, second / mass};
}

}  // namespace wsum
