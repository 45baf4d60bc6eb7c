#pragma once

// Finite signed measures on the integer lattice.

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace wsum {

// Relative magnitude below which convolution results are trimmed.
inline constexpr double kTrimThreshold = 1e-16;
// Total-mass tolerance for treating a measure as a probability distribution.
inline constexpr double kProbabilityTolerance = 1e-12;

// Signed measure M = sum_k M{k} delta_k with finite support.
//
// Stored densely over [offset, offset + size) with the end points nonzero;
// interior zeros are absent atoms. error_budget() is the total variation
// of mass dropped by trimming on the way to this value (an upper bound on
// the distance to the untrimmed result).
class LatticeMeasure {
 public:
  LatticeMeasure() = default;
  LatticeMeasure(std::initializer_list<std::pair<std::int64_t, double>> entries);

  static LatticeMeasure from_entries(std::span<const std::pair<std::int64_t, double>> entries);
  static LatticeMeasure from_dense(std::int64_t offset, std::vector<double> masses,
                                   double error_budget = 0.0);

  bool empty() const { return masses_.empty(); }
  // Smallest / largest point carrying mass. Undefined on the zero measure.
  std::int64_t min_point() const { return offset_; }
  std::int64_t max_point() const { return offset_ + static_cast<std::int64_t>(masses_.size()) - 1; }
  std::int64_t offset() const { return offset_; }
  std::span<const double> dense() const { return masses_; }

  double operator[](std::int64_t k) const;
  std::vector<std::pair<std::int64_t, double>> entries() const;
  std::size_t support_size() const;

  double total_mass() const;
  double error_budget() const { return error_budget_; }
  bool is_probability(double tol = kProbabilityTolerance) const;

  LatticeMeasure& operator+=(const LatticeMeasure& other);
  LatticeMeasure& operator-=(const LatticeMeasure& other);
  LatticeMeasure& operator*=(double scale);

  friend LatticeMeasure operator+(LatticeMeasure a, const LatticeMeasure& b) { return a += b; }
  friend LatticeMeasure operator-(LatticeMeasure a, const LatticeMeasure& b) { return a -= b; }
  friend LatticeMeasure operator*(double s, LatticeMeasure a) { return a *= s; }
  friend LatticeMeasure operator*(LatticeMeasure a, double s) { return a *= s; }

  // Exact equality of atoms (budgets ignored).
  friend bool operator==(const LatticeMeasure& a, const LatticeMeasure& b);

 private:
  void normalize_ends();

  std::int64_t offset_ = 0;
  std::vector<double> masses_;
  double error_budget_ = 0.0;
};

struct MomentSummary {
  double mean = 0.0;
  double variance = 0.0;
};

enum class Side { plus, minus };

struct ExpResult {
  LatticeMeasure measure;
  // Upper bound on the TV norm of the omitted series tail.
  double tail_bound = 0.0;
  int terms = 0;
};

LatticeMeasure delta(std::int64_t a);

LatticeMeasure convolve(const LatticeMeasure& a, const LatticeMeasure& b);
// n-fold convolution power by binary exponentiation; power(a, 0) = delta(0).
LatticeMeasure power(const LatticeMeasure& a, std::uint64_t n);
// exp{M} = sum_k M^k / k!, truncated so that the tail is at most tail_tol.
ExpResult exp_measure(const LatticeMeasure& m, double tail_tol);

double tv_norm(const LatticeMeasure& m);
// sup_x |M((-inf, x])|.
double kolmogorov_norm(const LatticeMeasure& m);

// order 0: e^{-it c} sum_k e^{itk} M{k}; order 1: its derivative in t.
std::complex<double> char_fn(const LatticeMeasure& m, double t, double center = 0.0, int order = 0);

// Right-hand (plus) or left-hand (minus) factorial moment of order k >= 1.
double factorial_moment(const LatticeMeasure& f, int k, Side side);

// Smoothness characteristic u = 1 - ||F (delta_1 - delta_0)|| / 2.
double smoothness_u(const LatticeMeasure& f);
double smoothness_u(const LatticeMeasure& f, const LatticeMeasure& g);
// The two equivalent routes, exposed for cross-checking.
double smoothness_u_shift_route(const LatticeMeasure& f);
double smoothness_u_overlap_route(const LatticeMeasure& f);

// Levy concentration function sup_x F{[x, x+h]}.
double concentration(const LatticeMeasure& f, double h);

MomentSummary moments(const LatticeMeasure& f);

}  // namespace wsum
