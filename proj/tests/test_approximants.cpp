#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "wsum/approximants.hpp"
#include "wsum/errors.hpp"

using namespace wsum;

TEST_CASE("nb_match") {
  const auto a = nb_match(10.0, 15.0);
  CHECK(a.r == doctest::Approx(20.0).epsilon(1e-14));
  CHECK(a.p_tilde == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(a.mean() == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(a.variance() == doctest::Approx(15.0).epsilon(1e-12));

  const auto g = nb_match(1.0, 2.0);
  CHECK(g.r == doctest::Approx(1.0));
  CHECK(g.p_tilde == doctest::Approx(0.5));

  CHECK_THROWS_AS(nb_match(1.0, 1.0), UnderdispersedError);
  CHECK_THROWS_AS(nb_match(2.0, 1.0), UnderdispersedError);
  CHECK_THROWS_AS(nb_match(0.0, 1.0), UnderdispersedError);
}

TEST_CASE("nb_component_pmf") {
  const double tol = 1e-12;
  const auto geo = nb_component_pmf(NegBinParams{1.0, 0.5}, 1, tol);
  for (int k = 0; k < 30; ++k) CHECK(geo[k] == doctest::Approx(std::ldexp(1.0, -(k + 1))).epsilon(1e-12));
  CHECK(1.0 - geo.total_mass() <= tol);

  const NegBinParams p{20.0, 2.0 / 3.0};
  const auto comp = nb_component_pmf(p, 10, kDefaultTailTol);
  CHECK(comp[0] == doctest::Approx(std::pow(2.0 / 3.0, 2.0)).epsilon(1e-14));
  const auto full = power(comp, 10);
  const auto m = moments(full);
  CHECK(std::abs(m.mean - 10.0) <= 1e-8);
  CHECK(std::abs(m.variance - 15.0) <= 1e-8);

  // Characteristic function against the closed form.
  for (int i = 0; i < 50; ++i) {
    const double t = -std::numbers::pi + 2.0 * std::numbers::pi * i / 49.0;
    const std::complex<double> z = p.p_tilde / (1.0 - p.q_tilde() * std::polar(1.0, t));
    const auto closed = std::pow(z, p.r / 10.0);
    CHECK(std::abs(char_fn(comp, t) - closed) <= 10 * kDefaultTailTol);
  }
}

TEST_CASE("geometric excess") {
  const auto y0 = geometric_excess(0.0, 1e-12);
  CHECK(y0 == delta(1) - delta(0));

  const double tol = 1e-12;
  const auto y = geometric_excess(0.3, tol);
  CHECK(y[0] == -1.0);
  CHECK(y[1] == doctest::Approx(0.7));
  CHECK(y[3] == doctest::Approx(0.7 * 0.09));
  CHECK(std::abs(tv_norm(y) - 2.0) <= tol);
  CHECK(std::abs(y.total_mass()) <= tol);
  CHECK(std::abs(geometric_excess(0.3, 1e-6).total_mass()) > std::abs(y.total_mass()));

  for (int i = 0; i < 100; ++i) {
    const double t = -std::numbers::pi + 2.0 * std::numbers::pi * i / 99.0;
    const std::complex<double> e = std::polar(1.0, t);
    const auto closed = 0.7 * e / (1.0 - 0.3 * e) - 1.0;
    const auto yt = char_fn(y, t);
    CHECK(std::abs(yt - closed) <= 2 * tol);
    const double s = std::sin(t / 2.0);
    CHECK(std::abs(yt) <= 4.0 * std::abs(s) + 1e-12);
    // Re Y^ is at most -(4/3) sin^2; the closed form is -2(1+p) sin^2 / |1 - p e^{it}|^2.
    CHECK(yt.real() <= -4.0 / 3.0 * s * s + 1e-12);
  }
  CHECK_THROWS(geometric_excess(1.0, 1e-10));
}

TEST_CASE("D_in coefficients") {
  const MBParams mb{0.3, 0.02, 100};
  const auto c = din_coefficients(mb);
  CHECK(c.gamma == doctest::Approx(0.0194444).epsilon(1e-5));
  CHECK(c.a1 == doctest::Approx(1.9369).epsilon(1e-4));
  CHECK(c.a2 == doctest::Approx(0.08762).epsilon(1e-4));
  CHECK(c.gamma >= 0.01);
  CHECK(c.gamma <= 0.02);
}

TEST_CASE("D_in measure") {
  const MBParams mb{0.3, 0.02, 100};
  const double tol = kDefaultTailTol;
  const auto d = build_din(mb, tol);
  CHECK(std::abs(d.measure.total_mass() - 1.0) <= 10 * tol);
  CHECK(d.truncation_budget <= tol);

  const auto exact = mb_pmf(mb);
  const auto md = moments(d.measure);
  const auto me = moments(exact);
  const double scale = 1.0 + static_cast<double>(std::max(std::abs(d.measure.min_point()), d.measure.max_point()));
  CHECK(std::abs(md.mean - me.mean) <= 10 * tol * scale);

  // Closed-form moments of exp{a1 Y - a2 Y^2}: mean a1/q, variance (a1(1+p) - 2 a2)/q^2.
  const auto fine = build_din(mb, 1e-14);
  const auto mf = moments(fine.measure);
  const auto& c = fine.coefficients;
  CHECK(mf.mean == doctest::Approx(c.a1 / 0.7).epsilon(1e-12));
  CHECK(mf.variance == doctest::Approx((c.a1 * 1.3 - 2 * c.a2) / 0.49).epsilon(1e-11));

  // The variance gap to the exact law does not shrink with n.
  const double gap100 = md.variance - me.variance;
  const MBParams mb400{0.3, 0.02, 400};
  const double gap400 = moments(build_din(mb400, tol).measure).variance - moments(mb_pmf(mb400)).variance;
  CHECK(gap100 == doctest::Approx(gap400).epsilon(1e-6));
  CHECK(gap100 == doctest::Approx(0.02737).epsilon(1e-3));
}

TEST_CASE("D_in for small n and lifted char fn") {
  const MBParams mb{0.3, 0.02, 1};
  const auto d = build_din(mb, 1e-12);
  CHECK(std::abs(d.measure.total_mass() - 1.0) <= 1e-11);
  // exp{a1 Y - a2 Y^2} char fn from Y^.
  for (double t : {0.1, 1.0, 2.5}) {
    const std::complex<double> e = std::polar(1.0, t);
    const auto yt = 0.7 * e / (1.0 - 0.3 * e) - 1.0;
    const auto closed = std::exp(d.coefficients.a1 * yt - d.coefficients.a2 * yt * yt);
    CHECK(std::abs(char_fn(d.measure, t) - closed) <= 1e-10);
  }
}
