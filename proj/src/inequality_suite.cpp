#include "wsum/inequality_suite.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "wsum/approximants.hpp"
#include "wsum/bounds.hpp"
#include "wsum/random_instances.hpp"

namespace wsum {

namespace {

constexpr double kPi = std::numbers::pi;

class Recorder {
 public:
  Recorder(std::string name, const CheckOptions& opts)
      : scale_(opts.corrupt == name ? 1e-3 : 1.0), max_dumps_(opts.max_dumps) {
    out_.name = std::move(name);
  }

  // Holds when lhs <= rhs + slack.
  bool record(double lhs, double rhs, double slack, const std::function<Json()>& instance) {
    const double bound = rhs * scale_;
    ++out_.evaluations;
    if (bound > 0.0)
      out_.worst_ratio = std::max(out_.worst_ratio, lhs / bound);
    else if (lhs > slack)
      out_.worst_ratio = std::numeric_limits<double>::infinity();
    const bool ok = lhs <= bound + slack;
    if (!ok) {
      ++out_.failures;
      if (out_.failure_dumps.size() < max_dumps_) {
        Json dump = instance();
        dump["lhs"] = lhs;
        dump["rhs"] = bound;
        out_.failure_dumps.push_back(std::move(dump));
      }
    }
    return ok;
  }

  CheckOutcome take() { return std::move(out_); }

 private:
  CheckOutcome out_;
  double scale_;
  std::size_t max_dumps_;
};

std::vector<double> grid(double lo, double hi, std::size_t points) {
  std::vector<double> g(points);
  for (std::size_t i = 0; i < points; ++i) g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  return g;
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// delta_0 + sum_{m<=s} nu_m^+/m! (delta_1 - delta_0)^m + sum nu_m^-/m! (delta_-1 - delta_0)^m
LatticeMeasure factorial_expansion(const LatticeMeasure& f, int s, double& term_norm) {
  LatticeMeasure out = delta(0);
  LatticeMeasure up = delta(0);
  LatticeMeasure down = delta(0);
  term_norm = 1.0;
  for (int m = 1; m <= s; ++m) {
    up = convolve(up, delta(1) - delta(0));
    down = convolve(down, delta(-1) - delta(0));
    const double cp = factorial_moment(f, m, Side::plus) / factorial(m);
    const double cm = factorial_moment(f, m, Side::minus) / factorial(m);
    out += cp * up + cm * down;
    term_norm += (std::abs(cp) + std::abs(cm)) * std::ldexp(1.0, m);
  }
  return out;
}

}  // namespace

bool CheckReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckOutcome& c) { return c.failures == 0; });
}

const CheckOutcome& CheckReport::outcome(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  throw std::out_of_range("no check named " + name);
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{
      "mineka2_first",       "mineka2_second",        "roos",
      "inversion",           "ac1",                   "ac3",
      "factorial_expansion", "fg_gap",                "y_modulus",
      "y_real_part",         "gamma_bounds",          "tv_submultiplicative",
      "kolmogorov_product",  "kolmogorov_le_tv",      "exp_norm",
  };
  return names;
}

double simpson(const std::function<double(double)>& f, double a, double b, std::size_t panels) {
  if (panels < 2) panels = 2;
  if (panels % 2) ++panels;
  const double h = (b - a) / static_cast<double>(panels);
  double acc = f(a) + f(b);
  for (std::size_t i = 1; i < panels; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + h * static_cast<double>(i));
  return acc * h / 3.0;
}

CheckReport run_check(std::uint64_t seed, std::size_t count, const CheckOptions& options) {
  if (count < 1) throw std::invalid_argument("run_check: count must be >= 1");
  std::vector<Recorder> rec;
  for (const auto& name : check_names()) rec.emplace_back(name, options);
  auto at = [&rec](std::size_t i) -> Recorder& { return rec[i]; };
  enum : std::size_t {
    kMineka1, kMineka2, kRoos, kInversion, kAc1, kAc3, kExpansion, kFgGap, kYMod, kYRe, kGamma,
    kTvMul, kKolProd, kKolTv, kExpNorm
  };

  const auto t_grid = grid(-kPi, kPi, 50);

  for (std::size_t inst = 0; inst < count; ++inst) {
    Rng rng(split_seed(seed, inst));
    const auto tag = [inst](Json j) {
      j["instance"] = inst;
      return j;
    };

    // Distribution-level inequalities share one random F.
    const auto f = random_distribution(rng);
    const double u = smoothness_u(f);
    const auto mom = moments(f);
    for (double t : t_grid) {
      const double lhs = std::abs(char_fn(f, t));
      const double mid = 1.0 - u * t * t / (4.0 * kPi);
      const double rhs = std::exp(-u * std::pow(std::sin(t / 2.0), 2) / kPi);
      auto dump = [&] { return tag(Json{{"F", to_json(f)}, {"t", t}}); };
      at(kMineka1).record(lhs, mid, 1e-12, dump);
      at(kMineka2).record(mid, rhs, 1e-12, dump);
      const double deriv = std::abs(char_fn(f, t, mom.mean, 1));
      at(kRoos).record(deriv, kPi * kPi * mom.variance * std::abs(std::sin(t / 2.0)), 1e-12, dump);
    }

    {
      const double h = rng.log_uniform(0.05, 10.0);
      const double a = rng.log_uniform(0.05, 10.0);
      const double range = 1.0 / h;
      const auto panels = static_cast<std::size_t>(2048.0 * std::max(1.0, std::ceil(range / kPi)));
      const double integral = simpson([&f](double t) { return std::abs(char_fn(f, t)); }, -range, range, panels);
      const double q = concentration(f, h);
      auto dump = [&] { return tag(Json{{"F", to_json(f)}, {"h", h}, {"a", a}}); };
      at(kAc1).record(q, std::pow(96.0 / 95.0, 2) * h * integral, 1e-6, dump);
      at(kAc3).record(q, (1.0 + h / a) * concentration(f, a), 1e-12, dump);
    }

    {
      const int s = static_cast<int>(rng.integer(1, 5));
      double term_norm = 0.0;
      const auto residual = f - factorial_expansion(f, s, term_norm);
      const double bound = (factorial_moment(f, s + 1, Side::plus) + factorial_moment(f, s + 1, Side::minus)) /
                           factorial(s + 1) * std::ldexp(1.0, s + 1);
      at(kExpansion).record(tv_norm(residual), bound, 1e-12 * term_norm,
                            [&] { return tag(Json{{"F", to_json(f)}, {"s", s}}); });
    }

    {
      const auto m = random_signed_measure(rng);
      const double norm = tv_norm(m);
      double abs_first = 0.0;
      for (const auto& [k, v] : m.entries()) abs_first += static_cast<double>(k) * std::abs(v);
      const double center = abs_first / norm;
      for (double b : {1.0, 2.0}) {
        const double integral = simpson(
            [&](double t) {
              return std::norm(char_fn(m, t)) + std::norm(char_fn(m, t, center, 1)) / (b * b);
            },
            -kPi, kPi, 2048);
        const double rhs = std::sqrt(1.0 + b * kPi) * std::sqrt(integral / (2.0 * kPi));
        at(kInversion).record(norm, rhs, 1e-6,
                              [&] { return tag(Json{{"M", to_json(m)}, {"a", center}, {"b", b}}); });
      }
    }

    {
      const auto a = random_signed_measure(rng);
      const auto b = random_signed_measure(rng);
      const auto ab = convolve(a, b);
      auto dump = [&] { return tag(Json{{"A", to_json(a)}, {"B", to_json(b)}}); };
      at(kTvMul).record(tv_norm(ab), tv_norm(a) * tv_norm(b) * (1.0 + 1e-12), 0.0, dump);
      at(kKolProd).record(kolmogorov_norm(ab), tv_norm(a) * kolmogorov_norm(b), 1e-12, dump);
      at(kKolTv).record(kolmogorov_norm(a), tv_norm(a), 1e-12, dump);

      const double target = rng.uniform(0.1, 3.0);
      const auto scaled = a * (target / tv_norm(a));
      const auto e = exp_measure(scaled, 1e-13);
      at(kExpNorm).record(tv_norm(e.measure), std::exp(tv_norm(scaled)), e.tail_bound + 1e-12,
                          [&] { return tag(Json{{"M", to_json(scaled)}}); });
    }

    {
      const int s = static_cast<int>(inst % 3) + 1;
      const auto [pf, pg] = gen_matched_pair(split_seed(seed ^ 0x5eedf00dULL, inst), s);
      const auto gap = lemma_fg_gap(pf, pg, s);
      at(kFgGap).record(gap.tv_gap, gap.bound, 1e-12,
                        [&] { return tag(Json{{"F", to_json(pf)}, {"G", to_json(pg)}, {"s", s}}); });
    }

    {
      const double p = rng.uniform(1e-6, 0.5);
      const double q_bar = rng.uniform(1e-6, 1.0 / 30.0);
      const double w = rng.log_uniform(0.1, 10.0);
      const double q = 1.0 - p;
      for (double tw : grid(-kPi, kPi, 100)) {
        const double t = tw / w;
        const std::complex<double> e = std::polar(1.0, t * w);
        const std::complex<double> y = q * e / (1.0 - p * e) - 1.0;
        const double sn = std::sin(t * w / 2.0);
        auto dump = [&] { return tag(Json{{"p", p}, {"w", w}, {"t", t}}); };
        at(kYMod).record(std::abs(y), 4.0 * std::abs(sn), 1e-12, dump);
        at(kYRe).record(4.0 / 3.0 * sn * sn, -y.real(), 1e-12, dump);
      }
      const double gamma = din_coefficients(MBParams{p, q_bar, 1}).gamma;
      auto dump = [&] { return tag(Json{{"p", p}, {"q_bar", q_bar}, {"gamma", gamma}}); };
      at(kGamma).record(q_bar / 2.0, gamma, 1e-15, dump);
      at(kGamma).record(gamma, q_bar, 1e-15, dump);
    }
  }

  CheckReport report;
  report.seed = seed;
  report.count = count;
  for (auto& r : rec) report.checks.push_back(r.take());
  return report;
}

Json to_json(const CheckReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back(Json{{"name", c.name},
                          {"evaluations", c.evaluations},
                          {"failures", c.failures},
                          {"worst_ratio", c.worst_ratio},
                          {"failure_dumps", c.failure_dumps}});
  }
  return Json{{"seed", r.seed}, {"count", r.count}, {"all_passed", r.all_passed()}, {"checks", checks}};
}

}  // namespace wsum
