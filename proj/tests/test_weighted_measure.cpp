#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "wsum/errors.hpp"
#include "wsum/random_instances.hpp"
#include "wsum/weighted_measure.hpp"

using namespace wsum;

namespace {

const LatticeMeasure kF{{0, 0.375}, {1, 0.5}, {4, 0.125}};
const LatticeMeasure kG{{0, 0.45}, {1, 0.25}, {2, 0.25}, {5, 0.05}};
const LatticeMeasure kHalf{{0, 0.5}, {1, 0.5}};
const double kRoot2 = std::sqrt(2.0);

// Brute force over every outcome tuple: n1 draws weighted 1, n2 weighted sqrt 2.
// Returns (real value, signed mass) pairs with F counted + and G counted -.
void enumerate(const LatticeMeasure& law, int n1, int n2, double sign, std::vector<std::pair<double, double>>& out) {
  const auto atoms = law.entries();
  const int total = n1 + n2;
  std::vector<std::size_t> idx(static_cast<std::size_t>(total), 0);
  while (true) {
    double x = 0.0, p = sign;
    for (int d = 0; d < total; ++d) {
      const auto& [k, m] = atoms[idx[static_cast<std::size_t>(d)]];
      x += static_cast<double>(k) * (d < n1 ? 1.0 : kRoot2);
      p *= m;
    }
    out.emplace_back(x, p);
    int d = 0;
    while (d < total && ++idx[static_cast<std::size_t>(d)] == atoms.size()) idx[static_cast<std::size_t>(d++)] = 0;
    if (d == total) break;
  }
}

double brute_distance(int n1, int n2) {
  std::vector<std::pair<double, double>> pts;
  enumerate(kF, n1, n2, 1.0, pts);
  enumerate(kG, n1, n2, -1.0, pts);
  std::sort(pts.begin(), pts.end());
  double acc = 0.0, best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    acc += pts[i].second;
    if (i + 1 == pts.size() || pts[i + 1].first - pts[i].first > 1e-9) best = std::max(best, std::abs(acc));
  }
  return best;
}

}  // namespace

TEST_CASE("weight basis validation") {
  CHECK_THROWS(WeightBasis({}));
  CHECK_THROWS(WeightBasis({1.0, 0.0}));
  CHECK_THROWS(WeightBasis({-1.0}));
  CHECK(WeightBasis({2.0, 0.5, 1.0}).ratio() == 4.0);
}

TEST_CASE("lift") {
  const WeightBasis basis({1.0, kRoot2});
  const auto l = lift(delta(1), 1, basis);
  REQUIRE(l.size() == 1);
  CHECK(l.coeffs(0)[0] == 0);
  CHECK(l.coeffs(0)[1] == 1);
  CHECK(l.value(0) == kRoot2);
  CHECK(l.mass(0) == 1.0);

  const auto lf = lift(kF - kG, 1, basis);
  CHECK(lf.tv_norm() == tv_norm(kF - kG));

  const auto lk = lift(kF, 1, basis);
  CHECK(std::abs(lk.char_fn(1.0) - char_fn(kF, kRoot2)) < 1e-15);
  CHECK_THROWS_AS(lift(kF, 2, basis), std::out_of_range);
}

TEST_CASE("wconvolve") {
  const WeightBasis basis({1.0, kRoot2});
  Rng rng(3);
  const auto a = wconvolve(lift(random_distribution(rng), 0, basis), lift(random_signed_measure(rng), 1, basis));
  const auto b = lift(random_signed_measure(rng), 0, basis);

  const auto id = wconvolve(a, lift(delta(0), 0, basis));
  REQUIRE(id.size() == a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(id.point(i) == a.point(i));
    CHECK(id.mass(i) == a.mass(i));
  }
  const auto ab = wconvolve(a, b);
  CHECK(std::abs(ab.total_mass() - a.total_mass() * b.total_mass()) <= 1e-12);
  // Every atom of A*B is a sum of an atom of A and an atom of B.
  for (std::size_t i = 0; i < ab.size(); ++i) {
    bool found = false;
    for (std::size_t j = 0; j < a.size() && !found; ++j)
      for (std::size_t k = 0; k < b.size() && !found; ++k)
        found = ab.coeffs(i)[0] == a.coeffs(j)[0] + b.coeffs(k)[0] && ab.coeffs(i)[1] == a.coeffs(j)[1] + b.coeffs(k)[1];
    CHECK(found);
  }
  CHECK_THROWS_AS(wconvolve(a, lift(delta(0), 0, WeightBasis({1.0, 2.0}))), BasisMismatchError);
}

TEST_CASE("weighted_sum_distribution") {
  const WeightBasis one({1.0});
  const std::vector<Component> c1{{kHalf, 2, 0}};
  const auto b = weighted_sum_distribution(c1, one);
  REQUIRE(b.size() == 3);
  CHECK(b.mass(0) == doctest::Approx(0.25));
  CHECK(b.mass(1) == doctest::Approx(0.5));
  CHECK(b.mass(2) == doctest::Approx(0.25));

  const std::vector<Component> c2{{delta(1), 3, 0}};
  const auto p = weighted_sum_distribution(c2, WeightBasis({2.0}));
  REQUIRE(p.size() == 1);
  CHECK(p.value(0) == 6.0);

  const WeightBasis basis({1.0, kRoot2});
  const std::vector<Component> ex{{kF, 2, 0}, {kF, 2, 1}};
  const auto s = weighted_sum_distribution(ex, basis);
  CHECK(s.size() == 36);  // {0,1,2,4,5,8} on each axis
  CHECK(std::abs(s.total_mass() - 1.0) <= 1e-12);
  CHECK(s.is_probability());

  const std::vector<Component> bad{{kF - kG, 1, 0}};
  CHECK_THROWS(weighted_sum_distribution(bad, basis));
}

TEST_CASE("lifting commutes with convolution for one weight") {
  const WeightBasis basis({1.0, kRoot2});
  Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    const auto a = random_signed_measure(rng);
    const auto b = random_signed_measure(rng);
    const auto lhs = wconvolve(lift(a, 1, basis), lift(b, 1, basis));
    const auto rhs = lift(convolve(a, b), 1, basis);
    double diff = 0.0;
    for (std::size_t k = 0; k < lhs.size(); ++k) diff += std::abs(lhs.mass(k) - rhs.mass_at(lhs.coeffs(k)));
    for (std::size_t k = 0; k < rhs.size(); ++k)
      if (lhs.mass_at(rhs.coeffs(k)) == 0.0) diff += std::abs(rhs.mass(k));
    CHECK(diff <= 1e-12);
  }
}

TEST_CASE("Kolmogorov distance") {
  const WeightBasis one({1.0});
  CHECK(wkolmogorov_distance(lift(kF, 0, one), lift(kF, 0, one)) == 0.0);
  CHECK(wkolmogorov_distance(lift(kF, 0, one), lift(kG, 0, one)) == doctest::Approx(0.175).epsilon(1e-15));

  Rng rng(4);
  for (int i = 0; i < 30; ++i) {
    const auto a = random_distribution(rng);
    const auto b = random_distribution(rng);
    CHECK(wkolmogorov_distance(lift(a, 0, one), lift(b, 0, one)) == doctest::Approx(kolmogorov_norm(a - b)).epsilon(1e-13));
  }

  const WeightBasis basis({1.0, kRoot2});
  for (int i = 0; i < 30; ++i) {
    const auto x = wconvolve(lift(random_distribution(rng), 0, basis), lift(random_distribution(rng), 1, basis));
    const auto y = wconvolve(lift(random_distribution(rng), 0, basis), lift(random_distribution(rng), 1, basis));
    const auto z = wconvolve(lift(random_distribution(rng), 0, basis), lift(random_distribution(rng), 1, basis));
    CHECK(wkolmogorov_distance(x, y) == wkolmogorov_distance(y, x));
    CHECK(wkolmogorov_distance(x, z) <= wkolmogorov_distance(x, y) + wkolmogorov_distance(y, z) + 1e-12);
  }

  const std::vector<Component> same{{kF, 3, 0}, {kG, 2, 1}};
  CHECK(wkolmogorov_distance(weighted_sum_distribution(same, basis), weighted_sum_distribution(same, basis)) == 0.0);
}

TEST_CASE("example configuration at n = 4 against exhaustive enumeration") {
  const WeightBasis basis({1.0, kRoot2});
  const std::vector<Component> s{{kF, 2, 0}, {kF, 4, 1}};
  const std::vector<Component> z{{kG, 2, 0}, {kG, 4, 1}};
  const double d = wkolmogorov_distance(weighted_sum_distribution(s, basis), weighted_sum_distribution(z, basis));
  CHECK(d == doctest::Approx(brute_distance(2, 4)).epsilon(1e-12));
  // Regression value.
  CHECK(d == doctest::Approx(0.050788896240234353).epsilon(1e-12));
}

TEST_CASE("commensurable weights merge at CDF time") {
  // 2*e1 and e2 land on the same real point with w = (1, 2).
  const WeightBasis basis({1.0, 2.0});
  const auto a = lift(LatticeMeasure{{2, 1.0}}, 0, basis);
  const auto b = lift(LatticeMeasure{{1, 1.0}}, 1, basis);
  CHECK(a.size() == 1);
  CHECK(wkolmogorov_distance(a, b) == 0.0);
}

TEST_CASE("wconcentration") {
  const WeightBasis basis({1.0, kRoot2});
  const std::vector<Component> s{{kF, 3, 0}, {kG, 2, 1}};
  const auto law = weighted_sum_distribution(s, basis);
  CHECK(wconcentration(law, 100.0) == doctest::Approx(1.0));
  CHECK(wconcentration(lift(delta(3), 1, basis), 0.0) == 1.0);
  const auto two = wconvolve(lift(delta(0), 0, basis), lift(LatticeMeasure{{0, 0.5}, {1, 0.5}}, 1, basis));
  CHECK(wconcentration(two, 1.0) == 0.5);
  CHECK(wconcentration(two, kRoot2) == 1.0);
}

TEST_CASE("resource guard") {
  // Two measures with 4000 atoms each on incommensurable axes give 1.6e7 points.
  const WeightBasis basis({1.0, kRoot2});
  std::vector<double> flat(4000, 1.0 / 4000);
  const auto u = LatticeMeasure::from_dense(0, flat);
  CHECK_THROWS_AS(wconvolve(lift(u, 0, basis), lift(u, 1, basis)), ResourceError);
  // Refused before the convolution power is formed.
  const std::vector<Component> huge{{LatticeMeasure{{0, 0.5}, {1, 0.5}}, 20'000'000, 0}};
  CHECK_THROWS_AS(weighted_sum_distribution(huge, basis), ResourceError);
}
