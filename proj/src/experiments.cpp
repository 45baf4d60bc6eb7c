#include "wsum/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "wsum/errors.hpp"
#include "wsum/weighted_measure.hpp"

namespace wsum {

namespace {

std::uint64_t ceil_sqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r < n) ++r;
  while (r > 0 && (r - 1) * (r - 1) >= n) --r;
  return r;
}

void require_increasing(const std::vector<std::uint64_t>& grid) {
  if (grid.empty()) throw std::invalid_argument("n grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 1) throw std::invalid_argument("n grid entries must be >= 1");
    if (i > 0 && grid[i] <= grid[i - 1]) throw std::invalid_argument("n grid must be strictly increasing");
  }
}

// Rows are independent; evaluate them in parallel and keep grid order.
std::vector<SweepRow> sweep(const std::vector<std::uint64_t>& grid,
                            const std::function<SweepRow(std::uint64_t)>& point) {
  std::vector<SweepRow> rows(grid.size());
  std::vector<std::exception_ptr> errors(grid.size());
  const auto count = static_cast<std::int64_t>(grid.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      rows[static_cast<std::size_t>(i)] = point(grid[static_cast<std::size_t>(i)]);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

void finish(SweepResult& r) {
  std::vector<std::pair<double, double>> dist, fac;
  double lo = 0.0, hi = 0.0;
  bool any = false;
  for (const auto& row : r.rows) {
    dist.emplace_back(static_cast<double>(row.n), row.distance);
    fac.emplace_back(static_cast<double>(row.n), row.bound.factor);
    if (row.bound.factor > 0.0 && row.ratio > 0.0) {
      lo = any ? std::min(lo, row.ratio) : row.ratio;
      hi = any ? std::max(hi, row.ratio) : row.ratio;
      any = true;
    }
  }
  r.ratio_spread = any ? hi / lo : 0.0;
  try {
    r.distance_fit = fit_rate(dist);
    r.has_distance_fit = true;
  } catch (const DegenerateFitError&) {
  }
  try {
    r.factor_fit = fit_rate(fac);
    r.has_factor_fit = true;
  } catch (const DegenerateFitError&) {
  }
}

WeightedMeasure product_law(const std::vector<std::pair<LatticeMeasure, std::size_t>>& laws,
                            const WeightBasis& basis) {
  WeightedMeasure out = lift(delta(0), 0, basis);
  for (const auto& [law, index] : laws) out = wconvolve(out, lift(law, index, basis));
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

LatticeMeasure example_f() { return {{0, 0.375}, {1, 0.5}, {4, 0.125}}; }
LatticeMeasure example_g() { return {{0, 0.45}, {1, 0.25}, {2, 0.25}, {5, 0.05}}; }

ExamplePrereqs example_prereqs() {
  const auto f = example_f();
  const auto g = example_g();
  ExamplePrereqs p;
  for (int k = 1; k <= 4; ++k) {
    p.nu_plus_f.push_back(factorial_moment(f, k, Side::plus));
    p.nu_plus_g.push_back(factorial_moment(g, k, Side::plus));
  }
  p.moments_match_to_3 = moments_match(f, g, 3);
  p.beta4_plus = beta(f, g, 4, Side::plus);
  p.u = smoothness_u(f, g);
  p.franken = franken_value(f);
  return p;
}

ExampleResult run_example(const std::vector<std::uint64_t>& n_grid) {
  require_increasing(n_grid);
  ExampleResult out;
  out.prereqs = example_prereqs();
  const auto f = example_f();
  const auto g = example_g();
  const WeightBasis basis({1.0, std::sqrt(2.0)});

  out.sweep.kind = "example";
  out.sweep.rows = sweep(n_grid, [&](std::uint64_t n) {
    const std::uint64_t n1 = ceil_sqrt(n);
    const std::vector<Component> s{{f, n1, 0}, {f, n, 1}};
    const std::vector<Component> z{{g, n1, 0}, {g, n, 1}};
    SweepRow row;
    row.n = n;
    row.n1 = n1;
    row.distance = wkolmogorov_distance(weighted_sum_distribution(s, basis), weighted_sum_distribution(z, basis));
    const std::vector<BlockSpec> blocks{BlockSpec::iid(f, g, n1, 0), BlockSpec::iid(f, g, n, 1)};
    row.bound = bound_iid(blocks, basis, 3);
    row.ratio = row.distance / row.bound.factor;
    return row;
  });
  finish(out.sweep);
  return out;
}

SweepResult run_markov(const MarkovConfig& config) {
  require_increasing(config.n_grid);
  const WeightBasis basis(config.weights);
  for (const auto& b : config.blocks)
    if (b.weight_index >= basis.size()) throw std::out_of_range("markov block weight index out of range");

  SweepResult out;
  out.kind = "markov";
  out.rows = sweep(config.n_grid, [&](std::uint64_t n) {
    SweepRow row;
    row.n = n;
    std::vector<std::pair<LatticeMeasure, std::size_t>> h, d;
    std::vector<MarkovBlock> mblocks;
    for (std::size_t i = 0; i < config.blocks.size(); ++i) {
      const auto& b = config.blocks[i];
      const MBParams params{b.p, b.q_bar, n};
      auto exact = mb_pmf(params);
      auto din = build_din(params, config.tail_tol);
      const auto me = moments(exact);
      const auto md = moments(din.measure);
      const std::string key = "block" + std::to_string(i) + ".";
      row.extras.emplace_back(key + "cond1", cond1_check(params, config.k0, basis[b.weight_index]).satisfied);
      row.extras.emplace_back(key + "din_mass_error", std::abs(din.measure.total_mass() - 1.0));
      row.extras.emplace_back(key + "mean_gap", md.mean - me.mean);
      row.extras.emplace_back(key + "variance_gap", md.variance - me.variance);
      row.extras.emplace_back(key + "truncation_budget", din.truncation_budget);
      h.emplace_back(std::move(exact), b.weight_index);
      d.emplace_back(std::move(din.measure), b.weight_index);
      mblocks.push_back({params, b.weight_index});
    }
    row.distance = wkolmogorov_distance(product_law(h, basis), product_law(d, basis));
    row.bound = bound_markov(mblocks, basis, config.k0);
    row.ratio = row.distance / row.bound.factor;
    return row;
  });
  finish(out);
  return out;
}

SweepResult run_nb(const NbConfig& config) {
  require_increasing(config.n_grid);
  const WeightBasis basis(config.weights);
  std::vector<NbBlockConfig> blocks = config.blocks;
  if (blocks.empty()) blocks.push_back({example_f(), 0});

  SweepResult out;
  out.kind = "nb";
  out.rows = sweep(config.n_grid, [&](std::uint64_t n) {
    SweepRow row;
    row.n = n;
    std::vector<std::pair<LatticeMeasure, std::size_t>> s, z;
    std::vector<NbBlock> nblocks;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      const auto& b = blocks[i];
      const auto mom = moments(b.f);
      const double nd = static_cast<double>(n);
      const auto params = nb_match(nd * mom.mean, nd * mom.variance);
      s.emplace_back(power(b.f, n), b.weight_index);
      z.emplace_back(nb_component_pmf(params, 1, config.tail_tol), b.weight_index);
      nblocks.push_back({b.f, n, b.weight_index});
    }
    row.distance = wkolmogorov_distance(product_law(s, basis), product_law(z, basis));
    row.bound = bound_nb(nblocks, basis);
    row.ratio = row.distance / row.bound.factor;
    return row;
  });
  finish(out);
  return out;
}

SweepResult run_demo_intro(const std::vector<std::uint64_t>& n_grid, double w2, double tail_tol) {
  require_increasing(n_grid);
  const WeightBasis basis({1.0, w2});
  SweepResult out;
  out.kind = "demo-intro";
  out.rows = sweep(n_grid, [&](std::uint64_t n) {
    const auto poisson = exp_measure(static_cast<double>(n) * (delta(1) - delta(0)), tail_tol);
    const LatticeMeasure b3{{0, 2.0 / 3.0}, {1, 1.0 / 3.0}};
    const LatticeMeasure b4{{0, 0.75}, {1, 0.25}};
    SweepRow row;
    row.n = n;
    row.distance = wkolmogorov_distance(product_law({{poisson.measure, 0}, {b3, 1}}, basis),
                                        product_law({{poisson.measure, 0}, {b4, 1}}, basis));
    row.extras.emplace_back("poisson_tail_bound", poisson.tail_bound);
    return row;
  });
  finish(out);
  bool decreasing = true;
  for (std::size_t i = 1; i < out.rows.size(); ++i) decreasing = decreasing && out.rows[i].distance < out.rows[i - 1].distance;
  out.notes.push_back(decreasing ? "distance decreasing in n" : "distance NOT decreasing in n");
  return out;
}

Json to_json(const ExamplePrereqs& p) {
  return Json{{"nu_plus_F", p.nu_plus_f},      {"nu_plus_G", p.nu_plus_g}, {"moments_match_to_3", p.moments_match_to_3},
              {"beta4_plus", p.beta4_plus},    {"u", p.u},                 {"franken_F", p.franken}};
}

Json to_json(const SweepResult& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json j{{"n", row.n}, {"n1", row.n1}, {"distance", row.distance}, {"ratio", row.ratio}};
    for (const auto& [k, v] : row.extras) j[k] = v;
    j["bound"] = to_json(row.bound);
    rows.push_back(std::move(j));
  }
  Json out{{"kind", r.kind}, {"rows", rows}, {"ratio_spread", r.ratio_spread}};
  out["distance_fit"] = r.has_distance_fit ? to_json(r.distance_fit) : Json(nullptr);
  out["factor_fit"] = r.has_factor_fit ? to_json(r.factor_fit) : Json(nullptr);
  out["notes"] = r.notes;
  return out;
}

std::string to_csv(const SweepResult& r) {
  std::ostringstream os;
  os << "n,n1,distance,bound_factor,ratio";
  if (!r.rows.empty()) {
    for (const auto& [k, v] : r.rows.front().extras) os << ',' << k;
    for (const auto& [k, v] : r.rows.front().bound.components) os << ',' << k;
  }
  os << '\n';
  for (const auto& row : r.rows) {
    os << row.n << ',' << row.n1 << ',' << fmt(row.distance) << ',' << fmt(row.bound.factor) << ','
       << fmt(row.ratio);
    for (const auto& [k, v] : row.extras) os << ',' << fmt(v);
    for (const auto& [k, v] : row.bound.components) os << ',' << fmt(v);
    os << '\n';
  }
  return os.str();
}

}  // namespace wsum
