#include <doctest.h>

#include <cmath>
#include <vector>

#include "wsum/approximants.hpp"
#include "wsum/bounds.hpp"
#include "wsum/errors.hpp"
#include "wsum/random_instances.hpp"

using namespace wsum;

namespace {

const LatticeMeasure kF{{0, 0.375}, {1, 0.5}, {4, 0.125}};
const LatticeMeasure kG{{0, 0.45}, {1, 0.25}, {2, 0.25}, {5, 0.05}};
const double kRoot2 = std::sqrt(2.0);

std::vector<BlockSpec> example_blocks(std::uint64_t n1, std::uint64_t n2) {
  return {BlockSpec::iid(kF, kG, n1, 0), BlockSpec::iid(kF, kG, n2, 1)};
}

}  // namespace

TEST_CASE("assumption checks") {
  const auto blocks = example_blocks(10, 100);
  CHECK(check_assumptions(blocks, 3).ok);
  const auto four = check_assumptions(blocks, 4);
  CHECK_FALSE(four.ok);
  CHECK(four.warnings.size() == 2);  // nu_4^+ differs in both blocks

  const std::vector<BlockSpec> same{BlockSpec::iid(kF, kF, 20, 0)};
  for (int s = 1; s <= 6; ++s) CHECK(check_assumptions(same, s).ok);

  // Sum of u below 1.
  const std::vector<BlockSpec> small{BlockSpec::iid(kF, kG, 2, 0)};
  CHECK_FALSE(check_assumptions(small, 3).ok);
}

TEST_CASE("iid factor of the example") {
  const WeightBasis basis({1.0, kRoot2});
  const auto r = bound_iid(example_blocks(10, 100), basis, 3);
  const double c = std::pow(0.375, 1.5);
  const double expected = kRoot2 / std::sqrt(41.25) * (9.0 / (std::sqrt(10.0) * c) + 9.0 / (10.0 * c));
  CHECK(r.factor == doctest::Approx(expected).epsilon(1e-14));
  CHECK(r.factor == doctest::Approx(3.59).epsilon(1e-3));
  CHECK(r.component("sum_nu") == doctest::Approx(41.25));
  CHECK(r.component("weight_ratio") == doctest::Approx(kRoot2));
  CHECK(r.warnings.empty());
  CHECK(r.absolute_constant_excluded);

  // Larger u means a smaller factor.
  const LatticeMeasure smooth{{0, 0.25}, {1, 0.25}, {2, 0.25}, {3, 0.25}};
  const std::vector<BlockSpec> sb{BlockSpec::iid(smooth, smooth, 100, 0)};
  const std::vector<BlockSpec> rb{BlockSpec::iid(kF, kF, 100, 0)};
  CHECK(bound_iid(sb, WeightBasis({1.0}), 3).factor < bound_iid(rb, WeightBasis({1.0}), 3).factor);

  // O(1/n) along n1 = ceil(sqrt n), n2 = n.
  std::vector<double> f;
  for (std::uint64_t n : {16u, 64u, 256u, 1024u}) {
    const auto n1 = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    f.push_back(bound_iid(example_blocks(n1, n), basis, 3).factor);
  }
  for (std::size_t i = 1; i < f.size(); ++i) CHECK(f[i] < f[i - 1]);
}

TEST_CASE("independent factor against hand composition") {
  const WeightBasis one({1.0});
  const std::vector<BlockSpec> blocks{BlockSpec::iid(kF, kG, 10, 0)};
  const auto r = bound_independent(blocks, one, 3);
  const double su = 3.75;
  const double expected = std::pow(su, -0.5) * (1.0 + 15.0 / su) * 90.0 * std::pow(su, -1.5);
  CHECK(r.factor == doctest::Approx(expected).epsilon(1e-14));

  // Non-identical summands are summed one by one.
  BlockSpec mixed;
  mixed.n = 3;
  mixed.f = {kF, kF, kG};
  mixed.g = {kG, kF, kG};
  const std::vector<BlockSpec> mb{mixed};
  const auto m = bound_independent(mb, one, 3);
  const double u_fg = 0.375, u_ff = smoothness_u(kF), u_gg = smoothness_u(kG);
  const double su2 = u_fg + u_ff + u_gg;
  const double b4 = 9.0 + 6.0 + 12.0;  // nu4(F)+nu4(G), 2 nu4(F), 2 nu4(G)
  const double expected2 = std::pow(su2, -0.5) * (1.0 + 4.5 / su2) * b4 * std::pow(su2, -1.5);
  CHECK(m.factor == doctest::Approx(expected2).epsilon(1e-14));
}

TEST_CASE("symmetric-case factor") {
  const WeightBasis one({1.0});
  const std::vector<BlockSpec> blocks{BlockSpec::iid(kF, kG, 10, 0)};
  CHECK_THROWS_AS(bound_independent_sym(blocks, one, 3), OddSError);

  const auto r = bound_independent_sym(blocks, one, 2);
  // Nonnegative support: beta^- vanishes, leading term is beta_3^+ n (sum u)^{-1}.
  CHECK(r.component("leading_term") == doctest::Approx(10.0 * 6.0 / 3.75).epsilon(1e-14));

  const LatticeMeasure sym_f{{-1, 0.25}, {0, 0.5}, {1, 0.25}};
  const LatticeMeasure sym_g{{-2, 0.05}, {-1, 0.15}, {0, 0.6}, {1, 0.15}, {2, 0.05}};
  const std::vector<BlockSpec> sb{BlockSpec::iid(sym_f, sym_g, 10, 0)};
  CHECK(bound_independent_sym(sb, one, 2).component("leading_term") == 0.0);
}

TEST_CASE("negative binomial factor") {
  CHECK(nb_bracket(kF) == doctest::Approx(5.75).epsilon(1e-15));

  const WeightBasis one({1.0});
  const std::vector<NbBlock> blocks{{kF, 10, 0}};
  const auto r = bound_nb(blocks, one);
  CHECK(r.component("block0.r") == doctest::Approx(20.0));
  CHECK(r.component("block0.p_tilde") == doctest::Approx(2.0 / 3.0));
  const double direct = 20.0 * std::log(1.5);
  CHECK(r.component("block0.r_log_inv_p") == doctest::Approx(direct).epsilon(1e-12));
  // The factorial-moment form is the per-summand value (r/n) ln(1/p~).
  CHECK(std::abs(10.0 * r.component("block0.r_log_inv_p_factorial_form") - direct) <= 1e-12 * direct);

  const double u_tilde = 1.0 - 0.5 * std::max(2.0 * (1.0 - 0.375), 1.0 / std::sqrt(direct));
  CHECK(r.component("block0.u_tilde") == doctest::Approx(u_tilde).epsilon(1e-14));
  CHECK(r.factor == doctest::Approx(5.75 / u_tilde / std::sqrt(10.0 * u_tilde)).epsilon(1e-14));

  const LatticeMeasure under{{0, 0.5}, {1, 0.5}};
  const std::vector<NbBlock> ub{{under, 10, 0}};
  CHECK_THROWS_AS(bound_nb(ub, one), UnderdispersedError);
}

TEST_CASE("Markov factor") {
  const MarkovBlock b{{0.3, 0.02, 100}, 0};
  const std::vector<MarkovBlock> one_block{b};
  const auto r = bound_markov(one_block, WeightBasis({1.0}), 2);
  CHECK(r.factor == doctest::Approx(0.02 * 0.32 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(r.factor == doctest::Approx(0.004525).epsilon(1e-3));
  CHECK(r.warnings.empty());

  const std::vector<MarkovBlock> two{{{0.3, 0.02, 100}, 0}, {{0.3, 0.02, 100}, 1}};
  const auto r2 = bound_markov(two, WeightBasis({1.0, kRoot2}), 2);
  CHECK(r2.component("weight_ratio") == doctest::Approx(kRoot2));

  // n q_bar <= 1 everywhere: denominator is sqrt N.
  const std::vector<MarkovBlock> tiny{{{0.3, 0.02, 10}, 0}, {{0.3, 0.02, 20}, 1}};
  CHECK(bound_markov(tiny, WeightBasis({1.0, 1.0}), 2).component("denominator_sq") == 2.0);

  const std::vector<MarkovBlock> bad{{{0.6, 0.05, 100}, 0}};
  CHECK(bound_markov(bad, WeightBasis({1.0}), 2).warnings.size() == 2);
}

TEST_CASE("reports recompose and are scale invariant") {
  const auto blocks = example_blocks(10, 100);
  const std::vector<NbBlock> nb{{kF, 10, 0}, {kG, 30, 1}};
  const std::vector<MarkovBlock> mk{{{0.3, 0.02, 100}, 0}, {{0.2, 0.01, 300}, 1}};
  for (double c : {1.0, 0.5, 3.0}) {
    const WeightBasis basis({c, c * kRoot2});
    const std::vector<BoundReport> reports{bound_independent(blocks, basis, 3), bound_independent_sym(blocks, basis, 2),
                                           bound_iid(blocks, basis, 3), bound_nb(nb, basis),
                                           bound_markov(mk, basis, 2)};
    static std::vector<double> reference;
    for (std::size_t i = 0; i < reports.size(); ++i) {
      CHECK(recompose(reports[i]) == reports[i].factor);
      if (c == 1.0)
        reference.push_back(reports[i].factor);
      else
        CHECK(reports[i].factor == doctest::Approx(reference[i]).epsilon(1e-14));
    }
  }
}

TEST_CASE("moment-matched difference bound") {
  const auto gap = lemma_fg_gap(kF, kG, 3);
  CHECK(gap.tv_gap == doctest::Approx(0.75));
  CHECK(gap.bound == doctest::Approx(6.0));
  CHECK(lemma_fg_gap(kF, kF, 5).tv_gap == 0.0);
  CHECK_THROWS_AS(lemma_fg_gap(kF, kG, 4), MomentMismatchError);

  for (std::uint64_t i = 0; i < 500; ++i) {
    const int s = static_cast<int>(i % 3) + 1;
    const auto [f, g] = gen_matched_pair(split_seed(99, i), s);
    const auto r = lemma_fg_gap(f, g, s);
    CHECK(r.tv_gap <= r.bound + 1e-12);
  }
}

TEST_CASE("even-s residual reports a finite ratio") {
  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto [f, g] = gen_matched_pair(split_seed(7, i), 2);
    const auto r = lemma_fg_even_residual(f, g, 2);
    CHECK(std::isfinite(r.ratio));
    CHECK(r.residual_tv >= 0.0);
  }
  CHECK_THROWS_AS(lemma_fg_even_residual(kF, kG, 3), OddSError);
}

TEST_CASE("Franken value") { CHECK(franken_value(kF) == -1.5); }
