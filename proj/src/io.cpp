#include "robcons/io.hpp"

#include <cmath>
#include <fstream>
#include <map>

#include "robcons/error.hpp"

namespace robcons {

namespace {

[[noreturn]] void Bad(const std::string& what) {
  throw Error(ErrorCode::kInvalidInput, what);
}

const Json& Field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) Bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int AsInt(const Json& j, const char* what) {
  if (!j.is_number_integer()) Bad(std::string(what) + " must be an integer");
  return j.get<int>();
}

std::vector<int> AsIntList(const Json& j, const char* what) {
  if (!j.is_array()) Bad(std::string(what) + " must be an array");
  std::vector<int> out;
  for (const Json& x : j) out.push_back(AsInt(x, what));
  return out;
}

Json EdgeToJson(const Edge& e) { return Json::array({e.u, e.v}); }

Edge EdgeFromJson(const Json& j) {
  if (j.is_array() && j.size() == 2) {
    return Edge::Canonical(AsInt(j[0], "edge endpoint"), AsInt(j[1], "edge endpoint"));
  }
  if (j.is_object()) {
    return Edge::Canonical(AsInt(Field(j, "u"), "u"), AsInt(Field(j, "v"), "v"));
  }
  Bad("edge must be [u, v] or {\"u\", \"v\"}");
}

std::vector<EdgeList> SubgraphsFromJson(const Json& j) {
  const Json& subs = Field(j, "subgraphs");
  if (!subs.is_array()) Bad("subgraphs must be an array");
  std::vector<EdgeList> out;
  for (const Json& sg : subs) {
    if (!sg.is_array()) Bad("each subgraph must be an array of edges");
    EdgeList edges;
    for (const Json& e : sg) edges.push_back(EdgeFromJson(e));
    out.push_back(std::move(edges));
  }
  if (j.contains("k") && AsInt(j.at("k"), "k") != static_cast<int>(out.size())) {
    Bad("k does not match the number of subgraphs");
  }
  return out;
}

Json FlagsToJson(const std::map<std::string, bool>& flags) {
  Json out = Json::object();
  for (const auto& [key, value] : flags) out[key] = value;
  return out;
}

}  // namespace

CapacitatedGraph GraphFromJson(const Json& j) {
  const int n = AsInt(Field(j, "n"), "n");
  if (n < 1) Bad("n must be positive");
  const Json& edges = Field(j, "edges");
  if (!edges.is_array()) Bad("edges must be an array");
  EdgeList list;
  std::vector<int> caps;
  for (const Json& e : edges) {
    list.push_back(EdgeFromJson(e));
    caps.push_back(e.is_object() && e.contains("capacity")
                       ? AsInt(e.at("capacity"), "capacity")
                       : 1);
  }
  return CapacitatedGraph(n, std::move(list), std::move(caps));
}

Json GraphToJson(const CapacitatedGraph& g) {
  Json edges = Json::array();
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    edges.push_back({{"u", g.edges()[i].u},
                     {"v", g.edges()[i].v},
                     {"capacity", g.capacities()[i]}});
  }
  return {{"n", g.n()}, {"edges", edges}};
}

CirculantSpec CirculantSpecFromJson(const Json& j) {
  CirculantSpec spec;
  spec.n = AsInt(Field(j, "n"), "n");
  spec.generators = AsIntList(Field(j, "generators"), "generators");
  spec.h = AsIntList(Field(j, "h"), "h");
  spec.alpha = j.contains("alpha") ? AsInt(j.at("alpha"), "alpha") : 1;
  return spec;
}

Json CirculantSpecToJson(const CirculantSpec& spec) {
  return {{"n", spec.n}, {"generators", spec.generators}, {"h", spec.h},
          {"alpha", spec.alpha}};
}

Json ExtendedRealToJson(const ExtendedReal& x) {
  if (x.is_infinite()) return "inf";
  return x.value();
}

Json SolutionToJson(const DesignSolution& s) {
  Json subs = Json::array();
  for (const EdgeList& sg : s.subgraphs) {
    Json edges = Json::array();
    for (const Edge& e : sg) edges.push_back(EdgeToJson(e));
    subs.push_back(edges);
  }
  return {{"n", s.base.n()},
          {"k", s.k},
          {"subgraphs", subs},
          {"cost", ExtendedRealToJson(s.cost)},
          {"flags", FlagsToJson(s.flags)}};
}

DesignSolution SolutionFromJson(const Json& j, const CapacitatedGraph& base) {
  std::map<std::string, bool> flags;
  if (j.contains("flags")) {
    if (!j.at("flags").is_object()) Bad("flags must be an object");
    for (const auto& [key, value] : j.at("flags").items()) {
      if (!value.is_boolean()) Bad("flag values must be booleans");
      flags[key] = value.get<bool>();
    }
  }
  return MakeSolution(base, SubgraphsFromJson(j), std::move(flags));
}

DesignSolution SolutionFromJson(const Json& j) {
  std::vector<EdgeList> subs = SubgraphsFromJson(j);
  int n = 0;
  std::map<Edge, int> usage;
  for (const EdgeList& sg : subs) {
    for (const Edge& e : sg) {
      n = std::max(n, e.v + 1);
      ++usage[e];
    }
  }
  if (j.contains("n")) {
    const int declared = AsInt(j.at("n"), "n");
    if (declared < n) Bad("edge endpoint exceeds n");
    n = declared;
  }
  EdgeList edges;
  std::vector<int> caps;
  for (const auto& [e, count] : usage) {
    edges.push_back(e);
    caps.push_back(count);
  }
  return SolutionFromJson(j, CapacitatedGraph(n, std::move(edges), std::move(caps)));
}

Json FeasibilityToJson(const FeasibilityReport& r) {
  return {{"min_cut_capacity", r.min_cut_capacity},
          {"min_cut_ok", r.min_cut_ok},
          {"total_capacity", r.total_capacity},
          {"total_ok", r.total_ok},
          {"verdict", r.verdict == FeasibilityVerdict::kProvablyInfeasible
                          ? "provably-infeasible"
                          : "necessary-conditions-hold"}};
}

Json ValidationToJson(const ValidationReport& r) {
  Json list = Json::array();
  for (const Violation& v : r.violations) {
    Json item = {{"code", v.code}, {"subgraph", v.subgraph}, {"detail", v.detail}};
    item["edge"] = v.edge ? EdgeToJson(*v.edge) : Json(nullptr);
    list.push_back(item);
  }
  return {{"ok", r.ok}, {"violations", list}};
}

Json GapToJson(const GapReport& r) {
  return {{"lower", r.lower},
          {"achieved", ExtendedRealToJson(r.achieved)},
          {"delta", r.delta},
          {"lower_heuristic", r.lower_heuristic}};
}

Json TreeResultToJson(const TreeSearchResult& r) {
  Json edges = Json::array();
  for (const Edge& e : r.tree.edges) edges.push_back(EdgeToJson(e));
  return {{"edges", edges},
          {"root", r.tree.root},
          {"wiener", r.wiener},
          {"average_distance", r.average_distance()},
          {"hstar", r.hstar()},
          {"class_counts", r.class_counts},
          {"heuristic", r.heuristic}};
}

Json AllocationToJson(const AllocationResult& r) {
  Json steps = Json::array();
  for (const AllocationStep& s : r.steps) {
    steps.push_back({{"edge", EdgeToJson(s.pair.edge)}, {"dim", s.pair.dim},
                     {"gain", s.gain}});
  }
  Json subs = Json::array();
  for (const EdgeList& sg : r.state.current_subgraphs()) {
    Json edges = Json::array();
    for (const Edge& e : sg) edges.push_back(EdgeToJson(e));
    subs.push_back(edges);
  }
  Json remaining = Json::array();
  const CapacitatedGraph& g = r.state.graph();
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    remaining.push_back({{"edge", EdgeToJson(g.edges()[i])},
                         {"remaining", r.state.remaining()[i]}});
  }
  const double scale = -1.0 / (2.0 * r.state.n());
  return {{"k", r.state.k()},
          {"initial_cost", scale * r.initial_objective},
          {"final_cost", scale * r.final_objective},
          {"initial_objective", r.initial_objective},
          {"final_objective", r.final_objective},
          {"gain", r.gain()},
          {"steps", steps},
          {"remaining", remaining},
          {"subgraphs", subs}};
}

Json SimConfigToJson(const SimConfig& cfg) {
  return {{"dt", cfg.dt},
          {"t_total", cfg.t_total},
          {"burn_in", cfg.burn_in},
          {"trials", cfg.trials},
          {"seed", cfg.seed},
          {"noise_scale", cfg.noise_scale},
          {"initial_spread", cfg.initial_spread}};
}

Json EstimateToJson(const VarianceEstimate& e, const SimConfig& cfg) {
  return {{"per_dimension", e.per_dimension},
          {"per_dimension_stderr", e.per_dimension_stderr},
          {"total", e.total},
          {"total_stderr", e.total_stderr},
          {"steps", e.steps},
          {"samples", e.samples},
          {"config", SimConfigToJson(cfg)}};
}

Json ErrorToJson(const Error& e) {
  return {{"error", std::string(ErrorCodeName(e.code()))}, {"message", e.what()}};
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) Bad("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    Bad(path + ": " + e.what());
  }
}

Json RoundFloats(const Json& j, int digits) {
  if (j.is_number_float()) {
    const double scale = std::pow(10.0, digits);
    const double x = j.get<double>();
    if (!std::isfinite(x)) return j;
    return std::round(x * scale) / scale;
  }
  if (j.is_array() || j.is_object()) {
    Json out = j;
    for (auto& item : out) item = RoundFloats(item, digits);
    return out;
  }
  return j;
}

}  // namespace robcons
