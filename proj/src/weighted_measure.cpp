#include "wsum/weighted_measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "wsum/errors.hpp"
#include "wsum/kernels.hpp"

namespace wsum {

namespace {

constexpr std::size_t kMaxPairs = 20'000'000;
constexpr std::int64_t kMaxDenseRange = 10'000'000;

void require_same_basis(const WeightedMeasure& a, const WeightedMeasure& b) {
  if (!(a.basis() == b.basis())) throw BasisMismatchError("weighted measures use different weight bases");
}

// Sorted (value, mass) locations after tolerance merging.
struct Location {
  double value;
  double mass;
};

std::vector<Location> merged_locations(std::vector<Location> atoms) {
  std::stable_sort(atoms.begin(), atoms.end(), [](const Location& x, const Location& y) { return x.value < y.value; });
  double max_abs = 0.0;
  for (const auto& a : atoms) max_abs = std::max(max_abs, std::abs(a.value));
  const double tol = merge_tolerance(max_abs);
  std::vector<Location> out;
  for (std::size_t i = 0; i < atoms.size();) {
    const double start = atoms[i].value;
    double mass = 0.0;
    for (; i < atoms.size() && atoms[i].value - start <= tol; ++i) mass += atoms[i].mass;
    out.push_back({start, mass});
  }
  return out;
}

std::vector<Location> locations_of(const WeightedMeasure& m, double sign) {
  std::vector<Location> out;
  out.reserve(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) out.push_back({m.value(i), sign * m.mass(i)});
  return out;
}

}  // namespace

WeightBasis::WeightBasis(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw std::invalid_argument("weight basis must have at least one weight");
  for (double w : weights_)
    if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("weights must be positive and finite");
}

double WeightBasis::ratio() const {
  const auto [lo, hi] = std::minmax_element(weights_.begin(), weights_.end());
  return *hi / *lo;
}

double SupportPoint::value(const WeightBasis& basis) const {
  double v = 0.0;
  for (std::size_t d = 0; d < coeffs.size(); ++d) v += static_cast<double>(coeffs[d]) * basis[d];
  return v;
}

WeightedMeasure::WeightedMeasure(WeightBasis basis, std::vector<std::pair<SupportPoint, double>> entries)
    : basis_(std::move(basis)) {
  std::map<std::vector<std::int64_t>, double> acc;
  for (auto& [pt, m] : entries) {
    if (pt.coeffs.size() != dims()) throw std::invalid_argument("support point dimension does not match basis");
    acc[pt.coeffs] += m;
  }
  for (const auto& [c, m] : acc) {
    if (m == 0.0) continue;
    coeffs_.insert(coeffs_.end(), c.begin(), c.end());
    masses_.push_back(m);
  }
}

double WeightedMeasure::value(std::size_t i) const {
  const auto c = coeffs(i);
  double v = 0.0;
  for (std::size_t d = 0; d < c.size(); ++d) v += static_cast<double>(c[d]) * basis_[d];
  return v;
}

SupportPoint WeightedMeasure::point(std::size_t i) const {
  const auto c = coeffs(i);
  return {std::vector<std::int64_t>(c.begin(), c.end())};
}

double WeightedMeasure::mass_at(std::span<const std::int64_t> c) const {
  std::size_t lo = 0;
  std::size_t hi = size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    const auto m = coeffs(mid);
    if (std::lexicographical_compare(m.begin(), m.end(), c.begin(), c.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < size() && std::equal(c.begin(), c.end(), coeffs(lo).begin())) return masses_[lo];
  return 0.0;
}

double WeightedMeasure::total_mass() const { return std::accumulate(masses_.begin(), masses_.end(), 0.0); }

double WeightedMeasure::tv_norm() const {
  double s = 0.0;
  for (double m : masses_) s += std::abs(m);
  return s;
}

bool WeightedMeasure::is_probability(double tol) const {
  if (std::abs(total_mass() - 1.0) > tol) return false;
  return std::all_of(masses_.begin(), masses_.end(), [](double m) { return m >= 0.0; });
}

std::complex<double> WeightedMeasure::char_fn(double t) const {
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t i = 0; i < size(); ++i) acc += std::polar(1.0, t * value(i)) * masses_[i];
  return acc;
}

WeightedMeasure lift(const LatticeMeasure& f, std::size_t index, const WeightBasis& basis) {
  if (index >= basis.size())
    throw std::out_of_range("lift: weight index " + std::to_string(index) + " out of range");
  WeightedMeasure out(basis);
  const std::size_t n = basis.size();
  for (const auto& [k, m] : f.entries()) {
    std::vector<std::int64_t> c(n, 0);
    c[index] = k;
    out.coeffs_.insert(out.coeffs_.end(), c.begin(), c.end());
    out.masses_.push_back(m);
  }
  return out;
}

WeightedMeasure wconvolve(const WeightedMeasure& a, const WeightedMeasure& b) {
  require_same_basis(a, b);
  WeightedMeasure out(a.basis());
  if (a.size() == 0 || b.size() == 0) return out;
  const std::size_t n = a.dims();

  // Mixed-radix packing over the result's coefficient box; the packing is
  // additive, so key(a + b) = keyA(a) + keyB(b). The last coordinate gets
  // stride 1, so key order is lexicographic order.
  std::vector<std::int64_t> lo_a(n), lo_b(n), radix(n), stride(n);
  for (std::size_t d = 0; d < n; ++d) {
    std::int64_t la = a.coeffs(0)[d], ha = la, lb = b.coeffs(0)[d], hb = lb;
    for (std::size_t i = 0; i < a.size(); ++i) {
      la = std::min(la, a.coeffs(i)[d]);
      ha = std::max(ha, a.coeffs(i)[d]);
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
      lb = std::min(lb, b.coeffs(i)[d]);
      hb = std::max(hb, b.coeffs(i)[d]);
    }
    lo_a[d] = la;
    lo_b[d] = lb;
    radix[d] = (ha + hb) - (la + lb) + 1;
  }
  double range = 1.0;
  std::int64_t s = 1;
  for (std::size_t d = n; d-- > 0;) {
    stride[d] = s;
    range *= static_cast<double>(radix[d]);
    if (range > 4e18) throw ResourceError("wconvolve: coefficient box too large to pack");
    s *= radix[d];
  }

  auto pack = [&](const WeightedMeasure& m, const std::vector<std::int64_t>& lo) {
    kernels::KeyedMasses km;
    km.keys.resize(m.size());
    km.masses.resize(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      const auto c = m.coeffs(i);
      std::int64_t key = 0;
      for (std::size_t d = 0; d < n; ++d) key += (c[d] - lo[d]) * stride[d];
      km.keys[i] = key;
      km.masses[i] = m.mass(i);
    }
    return km;
  };
  const auto ka = pack(a, lo_a);
  const auto kb = pack(b, lo_b);

  kernels::KeyedMasses kc;
  const double pairs = static_cast<double>(a.size()) * static_cast<double>(b.size());
  if (pairs <= static_cast<double>(kMaxPairs)) {
    kc = kernels::keyed_convolve_parallel(ka, kb);
  } else if (range <= static_cast<double>(kMaxDenseRange)) {
    kc = kernels::keyed_convolve_dense(ka, kb);
  } else {
    throw ResourceError("wconvolve: " + std::to_string(a.size()) + " x " + std::to_string(b.size()) +
                        " pairs over a wide coefficient box exceeds the support guard");
  }

  std::size_t kept = 0;
  for (double m : kc.masses) kept += m != 0.0;
  if (kept > kMaxSupport)
    throw ResourceError("wconvolve: result support " + std::to_string(kept) + " exceeds guard");

  out.coeffs_.reserve(kept * n);
  out.masses_.reserve(kept);
  for (std::size_t i = 0; i < kc.size(); ++i) {
    if (kc.masses[i] == 0.0) continue;
    std::int64_t key = kc.keys[i];
    for (std::size_t d = 0; d < n; ++d) {
      out.coeffs_.push_back(lo_a[d] + lo_b[d] + key / stride[d]);
      key %= stride[d];
    }
    out.masses_.push_back(kc.masses[i]);
  }
  return out;
}

WeightedMeasure weighted_sum_distribution(std::span<const Component> components, const WeightBasis& basis) {
  std::map<std::size_t, LatticeMeasure> per_weight;
  // Lattice range of each weight's partial sum, checked before any power is formed.
  std::map<std::size_t, double> range;
  for (const auto& c : components) {
    if (c.weight_index >= basis.size())
      throw std::out_of_range("weighted_sum_distribution: weight index out of range");
    if (!c.dist.is_probability())
      throw std::invalid_argument("weighted_sum_distribution: component is not a probability distribution");
    double& r = range[c.weight_index];
    r += static_cast<double>(c.count) * static_cast<double>(c.dist.max_point() - c.dist.min_point());
    if (r + 1.0 > static_cast<double>(kMaxSupport))
      throw ResourceError("weighted_sum_distribution: lattice range beyond the support guard");
  }
  for (const auto& c : components) {
    auto p = power(c.dist, c.count);
    auto [it, inserted] = per_weight.try_emplace(c.weight_index, p);
    if (!inserted) it->second = convolve(it->second, p);
  }
  WeightedMeasure out = lift(delta(0), 0, basis);
  for (const auto& [index, law] : per_weight) out = wconvolve(out, lift(law, index, basis));
  return out;
}

double merge_tolerance(double max_abs_value) { return 1e-9 * (1.0 + max_abs_value); }

double wkolmogorov_distance(const WeightedMeasure& a, const WeightedMeasure& b) {
  require_same_basis(a, b);
  auto atoms = locations_of(a, 1.0);
  auto bl = locations_of(b, -1.0);
  atoms.insert(atoms.end(), bl.begin(), bl.end());
  const auto merged = merged_locations(std::move(atoms));
  std::vector<double> masses(merged.size());
  for (std::size_t i = 0; i < merged.size(); ++i) masses[i] = merged[i].mass;
  return kernels::max_abs_prefix(masses);
}

double wconcentration(const WeightedMeasure& f, double h) {
  if (h < 0.0) throw std::invalid_argument("wconcentration: h must be nonnegative");
  const auto locs = merged_locations(locations_of(f, 1.0));
  if (locs.empty()) return 0.0;
  double max_abs = 0.0;
  for (const auto& l : locs) max_abs = std::max(max_abs, std::abs(l.value));
  const double tol = merge_tolerance(max_abs);
  double best = 0.0;
  double window = 0.0;
  std::size_t end = 0;
  for (std::size_t i = 0; i < locs.size(); ++i) {
    if (end < i) {
      end = i;
      window = 0.0;
    }
    while (end < locs.size() && locs[end].value - locs[i].value <= h + tol) window += locs[end++].mass;
    best = std::max(best, window);
    window -= locs[i].mass;
  }
  return best;
}

}  // namespace wsum
