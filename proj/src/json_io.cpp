#include "wsum/json_io.hpp"

#include <stdexcept>

namespace wsum {

Json to_json(const LatticeMeasure& m) {
  Json entries = Json::array();
  for (const auto& [k, v] : m.entries()) entries.push_back(Json::array({k, v}));
  return Json{{"entries", entries}};
}

LatticeMeasure lattice_from_json(const Json& j) {
  std::vector<std::pair<std::int64_t, double>> entries;
  for (const auto& e : j.at("entries")) {
    if (!e.is_array() || e.size() != 2) throw std::invalid_argument("lattice entry must be [k, mass]");
    entries.emplace_back(e[0].get<std::int64_t>(), e[1].get<double>());
  }
  return LatticeMeasure::from_entries(entries);
}

Json to_json(const WeightedMeasure& m) {
  Json weights = Json::array();
  for (double w : m.basis().weights()) weights.push_back(w);
  Json entries = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto c = m.coeffs(i);
    entries.push_back(Json::array({Json(std::vector<std::int64_t>(c.begin(), c.end())), m.mass(i)}));
  }
  return Json{{"weights", weights}, {"entries", entries}};
}

WeightedMeasure weighted_from_json(const Json& j) {
  WeightBasis basis(j.at("weights").get<std::vector<double>>());
  std::vector<std::pair<SupportPoint, double>> entries;
  for (const auto& e : j.at("entries")) {
    if (!e.is_array() || e.size() != 2) throw std::invalid_argument("weighted entry must be [[c...], mass]");
    entries.emplace_back(SupportPoint{e[0].get<std::vector<std::int64_t>>()}, e[1].get<double>());
  }
  return WeightedMeasure(std::move(basis), std::move(entries));
}

Json to_json(const BoundReport& r) {
  Json comps = Json::object();
  for (const auto& [k, v] : r.components) comps[k] = v;
  return Json{{"kind", std::string(to_string(r.kind))},
              {"factor", r.factor},
              {"absolute_constant_excluded", r.absolute_constant_excluded},
              {"components", comps},
              {"warnings", r.warnings}};
}

Json to_json(const RateFit& f) {
  return Json{{"slope", f.slope}, {"intercept", f.intercept}, {"residual", f.residual}};
}

}  // namespace wsum
