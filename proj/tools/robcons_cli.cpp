#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "robcons/allocation.hpp"
#include "robcons/circulant.hpp"
#include "robcons/design.hpp"
#include "robcons/error.hpp"
#include "robcons/io.hpp"
#include "robcons/sim.hpp"
#include "robcons/table.hpp"

using namespace robcons;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  int exact_threshold = TreeSearchOptions{}.exact_threshold;
  int restarts = TreeSearchOptions{}.restarts;
  bool json = false;
  std::vector<int> capacity_override;

  TreeSearchOptions search() const {
    TreeSearchOptions o;
    o.seed = seed;
    o.exact_threshold = exact_threshold;
    o.restarts = restarts;
    return o;
  }
};

void Emit(const Globals& g, const Json& j) {
  if (g.json) {
    std::cout << j.dump() << "\n";
  } else {
    std::cout << RoundFloats(j, 6).dump(2) << "\n";
  }
}

std::string Fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

int CmdHstar(const Globals& g, const std::string& path) {
  const CapacitatedGraph graph = GraphFromJson(ReadJsonFile(path));
  const ExtendedReal h = HStar(graph);
  if (g.json) {
    std::cout << Json{{"hstar", ExtendedRealToJson(h)}}.dump() << "\n";
  } else {
    std::cout << (h.is_infinite() ? std::string("inf") : Fixed6(h.value())) << "\n";
  }
  return 0;
}

int CmdFeasibility(const Globals& g, const std::string& path, int k) {
  const CapacitatedGraph graph = GraphFromJson(ReadJsonFile(path));
  Emit(g, FeasibilityToJson(CheckFeasibility(graph, k)));
  return 0;
}

int CmdSolve(const Globals& g, const std::string& path, std::optional<int> k_flag,
             bool brute) {
  const Json spec = ReadJsonFile(path);
  const std::string type = spec.value("type", "");
  if (type == "complete" || (type.empty() && !spec.contains("generators") &&
                             !spec.contains("edges") && !spec.contains("graph"))) {
    if (!spec.contains("n") || !spec.contains("alpha")) {
      throw Error(ErrorCode::kInvalidInput, "complete spec needs \"n\" and \"alpha\"");
    }
    Emit(g, SolutionToJson(SolveComplete(spec.at("n").get<int>(),
                                         spec.at("alpha").get<int>())));
    return 0;
  }
  if (type == "circulant" || (type.empty() && spec.contains("generators"))) {
    const CirculantSpec cs = CirculantSpecFromJson(spec);
    Algorithm1Options opts;
    opts.search = g.search();
    if (!g.capacity_override.empty()) opts.capacity_override = g.capacity_override;
    const DesignSolution sol = Algorithm1(cs, opts);
    Json out = SolutionToJson(sol);
    out["per_tree_hstar"] = HStar(sol.base.n(), sol.subgraphs.front()).value();
    Emit(g, out);
    return 0;
  }
  if (type == "brute-force" || brute || spec.contains("edges") || spec.contains("graph")) {
    const CapacitatedGraph graph =
        GraphFromJson(spec.contains("graph") ? spec.at("graph") : spec);
    std::optional<int> k = k_flag;
    if (!k && spec.contains("k")) k = spec.at("k").get<int>();
    if (!k) throw Error(ErrorCode::kInvalidInput, "brute force needs k (--k or \"k\")");
    Emit(g, SolutionToJson(BruteForce(graph, *k)));
    return 0;
  }
  throw Error(ErrorCode::kInvalidInput, "unknown spec type \"" + type + "\"");
}

int CmdAllocate(const Globals& g, const std::string& graph_path,
                const std::string& initial_path, bool exhaustive, bool rank_one) {
  const CapacitatedGraph graph = GraphFromJson(ReadJsonFile(graph_path));
  const Json initial = ReadJsonFile(initial_path);
  const DesignSolution start = SolutionFromJson(initial, graph);
  AllocationResult result =
      exhaustive ? ExhaustiveAllocate(graph, start.k, start.subgraphs)
                 : GreedyAllocate(graph, start.k, start.subgraphs,
                                  AllocationOptions{rank_one});
  Json out = AllocationToJson(result);
  out["method"] = exhaustive ? "exhaustive" : "greedy";
  Emit(g, out);
  return 0;
}

int CmdSimulate(const Globals& g, const std::string& path, SimConfig cfg) {
  cfg.seed = g.seed;
  const DesignSolution sol = SolutionFromJson(ReadJsonFile(path));
  const VarianceEstimate est = Simulate(sol, cfg);
  Json out = EstimateToJson(est, cfg);
  out["analytic"] = ExtendedRealToJson(AnalyticVariance(sol));
  Emit(g, out);
  return 0;
}

int CmdReproduceTable(const Globals& g, const std::string& path) {
  const std::string csv = TableCsv(ReproduceTable(g.search()));
  if (path.empty() || path == "-") {
    std::cout << csv;
  } else {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::kInvalidInput, "cannot write " + path);
    out << csv;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Capacity-constrained robust consensus design"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--exact-threshold", g.exact_threshold,
                 "Largest n solved by exact tree search")
      ->capture_default_str();
  app.add_option("--restarts", g.restarts, "Local search restarts")->capture_default_str();
  app.add_flag("--json", g.json, "Full-precision JSON output");
  app.add_option("--capacity-override", g.capacity_override,
                 "Per-class capacities for circulant solve")
      ->delimiter(',');

  std::string graph_path, second_path;
  int k = 0;
  std::optional<int> k_opt;
  bool brute = false, exhaustive = false, rank_one = false;
  SimConfig sim;

  auto* hstar = app.add_subcommand("hstar", "Print H* of a graph");
  hstar->add_option("graph", graph_path)->required();

  auto* feas = app.add_subcommand("feasibility", "Necessary feasibility conditions");
  feas->add_option("graph", graph_path)->required();
  feas->add_option("--k", k, "State dimension")->required();

  auto* solve = app.add_subcommand("solve", "Solve a design instance");
  solve->add_option("spec", graph_path)->required();
  solve->add_option("--k", k_opt, "State dimension for brute force");
  solve->add_flag("--brute-force", brute, "Treat the input as a graph for brute force");

  auto* alloc = app.add_subcommand("allocate", "Allocate spare capacity greedily");
  alloc->add_option("graph", graph_path)->required();
  alloc->add_option("initial", second_path)->required();
  alloc->add_flag("--exhaustive", exhaustive, "Exact optimum (small instances)");
  alloc->add_flag("--rank-one", rank_one, "Rank-one marginal gains");

  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo population variance");
  simulate->add_option("solution", graph_path)->required();
  simulate->add_option("--dt", sim.dt)->capture_default_str();
  simulate->add_option("--t-total", sim.t_total)->capture_default_str();
  simulate->add_option("--burn-in", sim.burn_in)->capture_default_str();
  simulate->add_option("--trials", sim.trials)->capture_default_str();

  auto* table = app.add_subcommand("reproduce-table", "Circulant comparison table as CSV");
  table->add_option("output", second_path, "CSV path (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*hstar) return CmdHstar(g, graph_path);
    if (*feas) return CmdFeasibility(g, graph_path, k);
    if (*solve) return CmdSolve(g, graph_path, k_opt, brute);
    if (*alloc) return CmdAllocate(g, graph_path, second_path, exhaustive, rank_one);
    if (*simulate) return CmdSimulate(g, graph_path, sim);
    if (*table) return CmdReproduceTable(g, second_path);
  } catch (const Error& e) {
    std::cout << ErrorToJson(e).dump() << "\n";
    return 1;
  } catch (const Json::exception& e) {
    std::cout << Json{{"error", "invalid-input"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cout << Json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
  return 1;
}
