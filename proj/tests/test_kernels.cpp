#include <doctest.h>

#include <cmath>
#include <vector>

#include "wsum/kernels.hpp"
#include "wsum/random_instances.hpp"

using namespace wsum;

namespace {

std::vector<double> masses(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform(-1.0, 1.0);
  return v;
}

kernels::KeyedMasses keyed(Rng& rng, std::size_t n) {
  kernels::KeyedMasses k;
  std::int64_t key = rng.integer(-50, 50);
  for (std::size_t i = 0; i < n; ++i) {
    key += rng.integer(1, 40);
    k.keys.push_back(key);
    k.masses.push_back(rng.uniform(-1.0, 1.0));
  }
  return k;
}

void same(const kernels::KeyedMasses& a, const kernels::KeyedMasses& b) {
  REQUIRE(a.keys == b.keys);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a.masses[i] - b.masses[i]) <= 1e-12);
}

}  // namespace

TEST_CASE("dense convolution: parallel matches serial") {
  Rng rng(1);
  for (std::size_t n : {1u, 2u, 7u, 300u, 5000u}) {
    const auto a = masses(rng, n);
    const auto b = masses(rng, n / 2 + 1);
    const auto s = kernels::convolve_serial(a, b);
    const auto p = kernels::convolve_parallel(a, b);
    const auto p2 = kernels::convolve_parallel(b, a);
    REQUIRE(s.size() == a.size() + b.size() - 1);
    REQUIRE(p.size() == s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(std::abs(s[i] - p[i]) <= 1e-12);
      CHECK(p[i] == p2[i]);
    }
  }
}

TEST_CASE("keyed convolution: three kernels agree") {
  Rng rng(2);
  for (std::size_t n : {1u, 5u, 60u, 400u}) {
    const auto a = keyed(rng, n);
    const auto b = keyed(rng, n + 3);
    const auto s = kernels::keyed_convolve_serial(a, b);
    same(s, kernels::keyed_convolve_parallel(a, b));
    same(s, kernels::keyed_convolve_dense(a, b));
  }
}

TEST_CASE("max abs prefix") {
  const std::vector<double> v{0.5, -2.0, 1.0, 0.25};
  CHECK(kernels::max_abs_prefix(v) == 1.5);
  CHECK(kernels::max_abs_prefix(std::vector<double>{}) == 0.0);
}
