#pragma once

// Measures on real points sum_i c_i w_i for a fixed basis of positive
// weights. Coefficients are kept as integers so convolution is exact;
// real values only come into play when building CDFs.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wsum/lattice_measure.hpp"

namespace wsum {

// Support guard for weighted measures.
inline constexpr std::size_t kMaxSupport = 10'000'000;

class WeightBasis {
 public:
  explicit WeightBasis(std::vector<double> weights);

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const { return weights_; }
  // max_j w_j / min_j w_j
  double ratio() const;

  friend bool operator==(const WeightBasis&, const WeightBasis&) = default;

 private:
  std::vector<double> weights_;
};

struct SupportPoint {
  std::vector<std::int64_t> coeffs;

  double value(const WeightBasis& basis) const;
  friend auto operator<=>(const SupportPoint&, const SupportPoint&) = default;
};

class WeightedMeasure {
 public:
  explicit WeightedMeasure(WeightBasis basis) : basis_(std::move(basis)) {}
  // Entries may repeat a point; repeats are summed. Points are kept sorted
  // lexicographically by coefficient vector.
  WeightedMeasure(WeightBasis basis, std::vector<std::pair<SupportPoint, double>> entries);

  const WeightBasis& basis() const { return basis_; }
  std::size_t dims() const { return basis_.size(); }
  std::size_t size() const { return masses_.size(); }

  std::span<const std::int64_t> coeffs(std::size_t i) const {
    return {coeffs_.data() + i * dims(), dims()};
  }
  double mass(std::size_t i) const { return masses_[i]; }
  double value(std::size_t i) const;
  SupportPoint point(std::size_t i) const;
  // Mass at an exact coefficient vector (no tolerance merging).
  double mass_at(std::span<const std::int64_t> c) const;

  double total_mass() const;
  double tv_norm() const;
  bool is_probability(double tol = kProbabilityTolerance) const;
  std::complex<double> char_fn(double t) const;

 private:
  friend WeightedMeasure lift(const LatticeMeasure&, std::size_t, const WeightBasis&);
  friend WeightedMeasure wconvolve(const WeightedMeasure&, const WeightedMeasure&);
  WeightBasis basis_;
  std::vector<std::int64_t> coeffs_;  // size() * dims(), row-major
  std::vector<double> masses_;
};

// Place F{k} at coefficient vector k * e_index (0-based index).
WeightedMeasure lift(const LatticeMeasure& f, std::size_t index, const WeightBasis& basis);

WeightedMeasure wconvolve(const WeightedMeasure& a, const WeightedMeasure& b);

struct Component {
  LatticeMeasure dist;
  std::uint64_t count = 1;
  std::size_t weight_index = 0;
};

// Law of sum_i w_{index_i} (X_i1 + ... + X_i n_i) for independent summands.
WeightedMeasure weighted_sum_distribution(std::span<const Component> components, const WeightBasis& basis);

// Two real points are one CDF location when |x - y| <= this.
double merge_tolerance(double max_abs_value);

double wkolmogorov_distance(const WeightedMeasure& a, const WeightedMeasure& b);
double wconcentration(const WeightedMeasure& f, double h);

}  // namespace wsum
