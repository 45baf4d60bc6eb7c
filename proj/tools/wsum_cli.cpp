// wsum: exact weighted-sum distributions, approximants and bound sweeps.
//
// Exit status: 0 ok, 1 bad input, 2 inequality suite failed, 3 resource guard.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wsum/errors.hpp"
#include "wsum/experiments.hpp"
#include "wsum/inequality_suite.hpp"
#include "wsum/json_io.hpp"
#include "wsum/rate_fit.hpp"

namespace {

using wsum::Json;

struct Common {
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::vector<std::uint64_t> n_grid;
  std::optional<double> tail_tol;
  bool json = false;
};

Json load_config(const std::string& path) {
  if (path.empty()) return Json::object();
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config " + path);
  Json j = Json::parse(in);
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  return j;
}

void check_kind(const Json& cfg, const std::string& kind) {
  if (cfg.contains("kind") && cfg["kind"].get<std::string>() != kind)
    throw std::invalid_argument("config kind '" + cfg["kind"].get<std::string>() + "' does not match subcommand '" +
                                kind + "'");
}

// Command line wins over config; config wins over defaults.
std::vector<std::uint64_t> grid_from(const Common& c, const Json& cfg, std::vector<std::uint64_t> fallback) {
  if (!c.n_grid.empty()) return c.n_grid;
  if (cfg.contains("n_grid")) return cfg["n_grid"].get<std::vector<std::uint64_t>>();
  return fallback;
}

double tol_from(const Common& c, const Json& cfg) {
  if (c.tail_tol) return *c.tail_tol;
  return cfg.value("tail_tol", wsum::kDefaultTailTol);
}

std::uint64_t seed_from(const Common& c, const Json& cfg) {
  if (c.seed) return *c.seed;
  return cfg.value("seed", std::uint64_t{1});
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << text;
}

std::string g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void print_table(const wsum::SweepResult& r) {
  std::printf("%8s %6s %14s %14s %12s\n", "n", "n1", "distance", "factor", "ratio");
  for (const auto& row : r.rows)
    std::printf("%8llu %6llu %14.6e %14.6e %12.4e\n", static_cast<unsigned long long>(row.n),
                static_cast<unsigned long long>(row.n1), row.distance, row.bound.factor, row.ratio);
  if (r.has_distance_fit)
    std::printf("distance slope %s (residual %s)\n", g(r.distance_fit.slope).c_str(), g(r.distance_fit.residual).c_str());
  if (r.has_factor_fit)
    std::printf("factor slope   %s (residual %s)\n", g(r.factor_fit.slope).c_str(), g(r.factor_fit.residual).c_str());
  if (r.ratio_spread > 0.0) std::printf("ratio spread   %s\n", g(r.ratio_spread).c_str());
  for (const auto& note : r.notes) std::printf("note: %s\n", note.c_str());
  if (!r.rows.empty())
    for (const auto& w : r.rows.back().bound.warnings) std::printf("warning: %s\n", w.c_str());
}

void emit(const Common& c, const wsum::SweepResult& r, Json json) {
  if (!c.out_path.empty()) write_file(c.out_path, wsum::to_csv(r));
  if (c.json)
    std::cout << json.dump(2) << '\n';
  else
    print_table(r);
}

int cmd_example(const Common& c) {
  const Json cfg = load_config(c.config_path);
  check_kind(cfg, "example");
  const auto result = wsum::run_example(grid_from(c, cfg, {16, 64, 256, 1024}));
  if (!c.json) {
    const auto& p = result.prereqs;
    std::printf("nu+ F: %s %s %s %s\n", g(p.nu_plus_f[0]).c_str(), g(p.nu_plus_f[1]).c_str(),
                g(p.nu_plus_f[2]).c_str(), g(p.nu_plus_f[3]).c_str());
    std::printf("nu+ G: %s %s %s %s\n", g(p.nu_plus_g[0]).c_str(), g(p.nu_plus_g[1]).c_str(),
                g(p.nu_plus_g[2]).c_str(), g(p.nu_plus_g[3]).c_str());
    std::printf("matched to 3: %s  beta4+ = %s  u = %s  Franken = %s\n", p.moments_match_to_3 ? "yes" : "no",
                g(p.beta4_plus).c_str(), g(p.u).c_str(), g(p.franken).c_str());
  }
  Json j = wsum::to_json(result.sweep);
  j["prerequisites"] = wsum::to_json(result.prereqs);
  emit(c, result.sweep, std::move(j));
  return 0;
}

int cmd_markov(const Common& c) {
  const Json cfg = load_config(c.config_path);
  check_kind(cfg, "markov");
  wsum::MarkovConfig mc;
  mc.n_grid = grid_from(c, cfg, mc.n_grid);
  mc.tail_tol = tol_from(c, cfg);
  mc.k0 = cfg.value("k0", mc.k0);
  if (cfg.contains("weights")) mc.weights = cfg["weights"].get<std::vector<double>>();
  if (cfg.contains("markov_blocks")) {
    mc.blocks.clear();
    for (const auto& b : cfg["markov_blocks"])
      mc.blocks.push_back({b.at("p").get<double>(), b.at("q_bar").get<double>(), b.value("weight_index", std::size_t{0})});
  }
  const auto r = wsum::run_markov(mc);
  emit(c, r, wsum::to_json(r));
  return 0;
}

int cmd_nb(const Common& c) {
  const Json cfg = load_config(c.config_path);
  check_kind(cfg, "nb");
  wsum::NbConfig nc;
  nc.n_grid = grid_from(c, cfg, nc.n_grid);
  nc.tail_tol = tol_from(c, cfg);
  if (cfg.contains("weights")) nc.weights = cfg["weights"].get<std::vector<double>>();
  if (cfg.contains("nb_laws"))
    for (const auto& b : cfg["nb_laws"])
      nc.blocks.push_back({wsum::lattice_from_json(b), b.value("weight_index", std::size_t{0})});
  const auto r = wsum::run_nb(nc);
  emit(c, r, wsum::to_json(r));
  return 0;
}

int cmd_demo(const Common& c, std::optional<double> w2_flag) {
  const Json cfg = load_config(c.config_path);
  check_kind(cfg, "demo-intro");
  const double w2 = w2_flag ? *w2_flag : cfg.value("w2", std::sqrt(2.0));
  const auto r = wsum::run_demo_intro(grid_from(c, cfg, {4, 16, 64, 256}), w2, tol_from(c, cfg));
  emit(c, r, wsum::to_json(r));
  return 0;
}

int cmd_check(const Common& c, std::optional<std::size_t> count_flag, const std::string& corrupt) {
  const Json cfg = load_config(c.config_path);
  check_kind(cfg, "check");
  const std::size_t count = count_flag ? *count_flag : cfg.value("count", std::size_t{200});
  wsum::CheckOptions opts;
  opts.corrupt = corrupt;
  const auto report = wsum::run_check(seed_from(c, cfg), count, opts);
  if (!c.out_path.empty()) {
    std::ostringstream os;
    os << "check,evaluations,failures,worst_ratio\n";
    for (const auto& o : report.checks) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", o.worst_ratio);
      os << o.name << ',' << o.evaluations << ',' << o.failures << ',' << buf << '\n';
    }
    write_file(c.out_path, os.str());
  }
  if (c.json) {
    std::cout << wsum::to_json(report).dump(2) << '\n';
  } else {
    for (const auto& o : report.checks)
      std::printf("%-22s %s  %6zu evaluations  worst ratio %s\n", o.name.c_str(), o.failures ? "FAIL" : "ok  ",
                  o.evaluations, g(o.worst_ratio).c_str());
    for (const auto& o : report.checks)
      for (const auto& d : o.failure_dumps) std::printf("%s: %s\n", o.name.c_str(), d.dump().c_str());
  }
  return report.all_passed() ? 0 : 2;
}

std::vector<std::pair<double, double>> read_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::vector<std::pair<double, double>> pts;
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
    const Json j = Json::parse(in);
    for (const auto& p : j.at("points")) pts.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    return pts;
  }
  // CSV: columns named n and distance, or the first two columns.
  std::string line;
  std::size_t ncol = 0, dcol = 1;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (header) {
      header = false;
      bool named = false;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i] == "n") ncol = i, named = true;
        if (cells[i] == "distance") dcol = i, named = true;
      }
      if (named) continue;
    }
    if (cells.size() <= std::max(ncol, dcol)) throw std::invalid_argument("short CSV row: " + line);
    pts.emplace_back(std::stod(cells[ncol]), std::stod(cells[dcol]));
  }
  return pts;
}

int cmd_fit(const Common& c, const std::string& input) {
  const auto fit = wsum::fit_rate(read_points(input));
  if (!c.out_path.empty()) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "slope,intercept,residual\n%.17g,%.17g,%.17g\n", fit.slope, fit.intercept,
                  fit.residual);
    write_file(c.out_path, buf);
  }
  if (c.json)
    std::cout << wsum::to_json(fit).dump(2) << '\n';
  else
    std::printf("slope %s  intercept %s  residual %s\n", g(fit.slope).c_str(), g(fit.intercept).c_str(),
                g(fit.residual).c_str());
  return 0;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config_path, "JSON config file")->check(CLI::ExistingFile);
  sub->add_option("--out", c.out_path, "write CSV here");
  sub->add_option("--seed", c.seed, "master seed");
  sub->add_option("--n-grid", c.n_grid, "comma separated n values")->delimiter(',');
  sub->add_option("--tail-tol", c.tail_tol, "truncation tolerance")->check(CLI::PositiveNumber);
  sub->add_flag("--json", c.json, "print JSON instead of a table");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact distributions of weighted lattice sums and their approximation bounds"};
  app.require_subcommand(1);

  Common common;
  auto* example = app.add_subcommand("example", "two-weight example sweep against the iid bound");
  auto* markov = app.add_subcommand("markov", "Markov binomial vs signed compound Poisson");
  auto* nb = app.add_subcommand("nb", "sums vs moment-matched negative binomial");
  auto* check = app.add_subcommand("check", "randomized inequality suite");
  auto* demo = app.add_subcommand("demo-intro", "Poisson plus weighted Bernoulli demo");
  auto* fit = app.add_subcommand("fit", "log-log rate fit of (n, distance) points");
  for (auto* sub : {example, markov, nb, check, demo, fit}) add_common(sub, common);

  std::optional<std::size_t> count;
  std::string corrupt;
  check->add_option("--count", count, "random instances");
  check->add_option("--corrupt", corrupt, "scale one check's bound by 1e-3 (self-test)");
  std::optional<double> w2;
  demo->add_option("--w2", w2, "weight of the Bernoulli term")->check(CLI::PositiveNumber);
  std::string fit_input;
  fit->add_option("input", fit_input, "CSV (n, distance columns) or JSON {\"points\": [[n, d], ...]}")
      ->required()
      ->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (example->parsed()) return cmd_example(common);
    if (markov->parsed()) return cmd_markov(common);
    if (nb->parsed()) return cmd_nb(common);
    if (check->parsed()) return cmd_check(common, count, corrupt);
    if (demo->parsed()) return cmd_demo(common, w2);
    if (fit->parsed()) return cmd_fit(common, fit_input);
  } catch (const wsum::ResourceError& e) {
    std::fprintf(stderr, "resource guard: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
