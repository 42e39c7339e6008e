#pragma once

#include <string>

#include <json.hpp>

#include "robcons/allocation.hpp"
#include "robcons/circulant.hpp"
#include "robcons/design.hpp"
#include "robcons/error.hpp"
#include "robcons/graph.hpp"
#include "robcons/sim.hpp"

namespace robcons {

using Json = nlohmann::json;

// {"n": int, "edges": [{"u": int, "v": int, "capacity": int}, ...]}.
// Capacity defaults to 1. Throws kInvalidInput on malformed documents,
// duplicates and self-loops.
CapacitatedGraph GraphFromJson(const Json& j);
Json GraphToJson(const CapacitatedGraph& g);

// {"n", "generators", "h", "alpha"}; alpha defaults to 1.
CirculantSpec CirculantSpecFromJson(const Json& j);
Json CirculantSpecToJson(const CirculantSpec& spec);

// Real or the string "inf".
Json ExtendedRealToJson(const ExtendedReal& x);

// {"n", "k", "subgraphs": [[[u, v], ...], ...], "cost": real | "inf",
//  "flags": {...}}.
Json SolutionToJson(const DesignSolution& s);
// Reads subgraphs against `base`; the cost is recomputed.
DesignSolution SolutionFromJson(const Json& j, const CapacitatedGraph& base);
// Base graph taken as the union of the subgraphs with capacity equal to the
// number of subgraphs using each edge. n comes from "n" when present,
// otherwise the largest node id plus one.
DesignSolution SolutionFromJson(const Json& j);

Json FeasibilityToJson(const FeasibilityReport& r);
Json ValidationToJson(const ValidationReport& r);
Json GapToJson(const GapReport& r);
Json TreeResultToJson(const TreeSearchResult& r);
Json AllocationToJson(const AllocationResult& r);
Json SimConfigToJson(const SimConfig& cfg);
Json EstimateToJson(const VarianceEstimate& e, const SimConfig& cfg);

Json ErrorToJson(const Error& e);

// Reads and parses a JSON file; throws kInvalidInput when unreadable.
Json ReadJsonFile(const std::string& path);

// Rounds every floating value in `j` to `digits` decimals.
Json RoundFloats(const Json& j, int digits);

}  // namespace robcons
