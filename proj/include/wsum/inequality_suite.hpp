#pragma once

// Property checks of the inequalities the bounds rest on, over seeded
// random instances. A failing instance is kept as a JSON dump.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "wsum/json_io.hpp"

namespace wsum {

struct CheckOutcome {
  std::string name;
  std::size_t evaluations = 0;
  std::size_t failures = 0;
  // max over evaluations of lhs / rhs (<= 1 means every case held).
  double worst_ratio = 0.0;
  std::vector<Json> failure_dumps;
};

struct CheckReport {
  std::uint64_t seed = 0;
  std::size_t count = 0;
  std::vector<CheckOutcome> checks;

  bool all_passed() const;
  const CheckOutcome& outcome(const std::string& name) const;
};

struct CheckOptions {
  // Test hook: the named check compares against its bound scaled by 1e-3.
  std::string corrupt;
  // Dumps kept per check.
  std::size_t max_dumps = 5;
};

// Names in report order.
const std::vector<std::string>& check_names();

CheckReport run_check(std::uint64_t seed, std::size_t count, const CheckOptions& options = {});

Json to_json(const CheckReport& r);

// Composite Simpson rule on [a, b] with `panels` (even) subintervals.
double simpson(const std::function<double(double)>& f, double a, double b, std::size_t panels);

}  // namespace wsum
