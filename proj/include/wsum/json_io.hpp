#pragma once

// JSON forms:
//   lattice measure   {"entries": [[k, mass], ...]}
//   weighted measure  {"weights": [...], "entries": [[[c1..cN], mass], ...]}
//   bound report      {"kind", "factor", "absolute_constant_excluded",
//                      "components": {name: value, ...}, "warnings": [...]}

#include <json.hpp>

#include "wsum/bounds.hpp"
#include "wsum/lattice_measure.hpp"
#include "wsum/rate_fit.hpp"
#include "wsum/weighted_measure.hpp"

namespace wsum {

using Json = nlohmann::ordered_json;

Json to_json(const LatticeMeasure& m);
LatticeMeasure lattice_from_json(const Json& j);

Json to_json(const WeightedMeasure& m);
WeightedMeasure weighted_from_json(const Json& j);

Json to_json(const BoundReport& r);
Json to_json(const RateFit& f);

}  // namespace wsum
