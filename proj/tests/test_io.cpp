#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "robcons/error.hpp"
#include "robcons/io.hpp"
#include "robcons/table.hpp"

using namespace robcons;

namespace {

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no robcons::Error thrown");
  return ErrorCode::kInvalidState;
}

}  // namespace

TEST_CASE("graph json round trip") {
  const Json j = Json::parse(R"({"n": 4, "edges": [{"u": 2, "v": 1, "capacity": 3},
                                                    {"u": 0, "v": 1}]})");
  const CapacitatedGraph g = GraphFromJson(j);
  CHECK(g.edges() == EdgeList{{0, 1}, {1, 2}});
  CHECK(g.capacities() == std::vector<int>{1, 3});
  const Json out = GraphToJson(g);
  CHECK(out["edges"][0]["u"] == 0);
  CHECK(out["edges"][1]["capacity"] == 3);
  CHECK(GraphFromJson(out).edges() == g.edges());
}

TEST_CASE("graph json rejects bad documents") {
  CHECK(CodeOf([] { GraphFromJson(Json::parse(R"({"n": 3, "edges": [{"u": 1, "v": 1}]})")); }) ==
        ErrorCode::kInvalidInput);
  CHECK(CodeOf([] {
          GraphFromJson(Json::parse(R"({"n": 3, "edges": [{"u": 0, "v": 1}, {"u": 1, "v": 0}]})"));
        }) == ErrorCode::kInvalidInput);
  CHECK(CodeOf([] { GraphFromJson(Json::parse(R"({"edges": []})")); }) == ErrorCode::kInvalidInput);
  CHECK(CodeOf([] { GraphFromJson(Json::parse(R"({"n": "3", "edges": []})")); }) ==
        ErrorCode::kInvalidInput);
}

TEST_CASE("circulant spec json") {
  const CirculantSpec s =
      CirculantSpecFromJson(Json::parse(R"({"n": 10, "generators": [3, 5], "h": [5, 4]})"));
  CHECK(s.n == 10);
  CHECK(s.generators == std::vector<int>{3, 5});
  CHECK(s.h == std::vector<int>{5, 4});
  CHECK(s.alpha == 1);
  CHECK(CirculantSpecToJson(s)["alpha"] == 1);
}

TEST_CASE("solution json") {
  const DesignSolution s = SolveComplete(3, 1);
  const Json j = SolutionToJson(s);
  CHECK(j["k"] == 3);
  CHECK(j["subgraphs"][0] == Json::parse("[[0, 1], [0, 2]]"));
  CHECK(j["cost"].get<double>() == doctest::Approx(2.0 / 3));
  CHECK(j["flags"]["optimal"] == true);
  const DesignSolution back = SolutionFromJson(j, s.base);
  CHECK(back.subgraphs == s.subgraphs);
  CHECK(back.cost.value() == doctest::Approx(s.cost.value()));
  const DesignSolution standalone = SolutionFromJson(j);
  CHECK(standalone.base.n() == 3);
  CHECK(standalone.base.capacity(0, 1) == 2);

  const DesignSolution broken =
      MakeSolution(CapacitatedGraph::Complete(4, 1), {EdgeList{{0, 1}, {2, 3}}});
  CHECK(SolutionToJson(broken)["cost"] == "inf");
  CHECK(CodeOf([] { SolutionFromJson(Json::parse(R"({"k": 2, "subgraphs": [[[0, 1]]]})")); }) ==
        ErrorCode::kInvalidInput);
}

TEST_CASE("report json") {
  const Json f = FeasibilityToJson(CheckFeasibility(CapacitatedGraph::Complete(3, 2), 3));
  CHECK(f["verdict"] == "necessary-conditions-hold");
  CHECK(f["min_cut_capacity"] == 4);
  const Json err = ErrorToJson(Error(ErrorCode::kTooLarge, "x"));
  CHECK(err["error"] == "too-large");
  CHECK(err["message"] == "x");
}

TEST_CASE("allocation report json") {
  const AllocationResult r =
      GreedyAllocate(CapacitatedGraph::Complete(3, 1), 1, {EdgeList{{0, 1}, {1, 2}}});
  const Json j = AllocationToJson(r);
  CHECK(j["steps"][0]["edge"] == Json::parse("[0, 2]"));
  CHECK(j["steps"][0]["dim"] == 0);
  CHECK(j["steps"][0]["gain"].get<double>() == doctest::Approx(2.0 / 3));
  CHECK(j["initial_cost"].get<double>() == doctest::Approx(2.0 / 9));
  CHECK(j["final_cost"].get<double>() == doctest::Approx(1.0 / 9));
  for (const Json& e : j["remaining"]) CHECK(e["remaining"] == 0);
}

TEST_CASE("estimate json echoes config") {
  SimConfig cfg;
  cfg.t_total = 20;
  cfg.burn_in = 2;
  cfg.trials = 2;
  cfg.seed = 5;
  const VarianceEstimate e = Simulate(SolveComplete(3, 1), cfg);
  const Json j = EstimateToJson(e, cfg);
  CHECK(j["config"]["seed"] == 5);
  CHECK(j["per_dimension"].size() == 3);
  CHECK(j["total"].get<double>() == doctest::Approx(e.total));
}

TEST_CASE("rounding") {
  const Json j = Json::parse(R"({"a": 0.1234567, "b": [2.0000004, 3], "c": "x"})");
  const Json r = RoundFloats(j, 6);
  CHECK(r["a"].get<double>() == 0.123457);
  CHECK(r["b"][0].get<double>() == 2.0);
  CHECK(r["b"][1] == 3);
  CHECK(r["c"] == "x");
}

TEST_CASE("table csv") {
  TreeSearchOptions o;
  const std::vector<TableRow> rows(PublishedTable().begin(), PublishedTable().begin() + 1);
  const auto results = ReproduceTable(o, rows);
  const std::string csv = TableCsv(results);
  CHECK(csv == "n,classes,h,H*_MAD,H*_cMAD,Delta,heuristic\n"
               "10,\"3,5\",\"5,4\",0.605000,0.605000,0.000000,false\n");
  CHECK(PublishedTable().size() == 14);
}
