#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "robcons/allocation.hpp"
#include "robcons/circulant.hpp"
#include "robcons/design.hpp"
#include "robcons/error.hpp"
#include "robcons/io.hpp"
#include "robcons/sim.hpp"
#include "robcons/table.hpp"

namespace py = pybind11;
using namespace robcons;

namespace {

// Python objects cross the boundary in the same JSON shapes the CLI reads.
Json ToJson(const py::handle& obj) {
  const py::object dumps = py::module_::import("json").attr("dumps");
  return Json::parse(dumps(obj).cast<std::string>());
}

py::object ToPy(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

TreeSearchOptions Search(std::uint64_t seed, int exact_threshold, int restarts) {
  TreeSearchOptions o;
  o.seed = seed;
  o.exact_threshold = exact_threshold;
  o.restarts = restarts;
  return o;
}

double ToFloat(const ExtendedReal& x) {
  return x.is_infinite() ? std::numeric_limits<double>::infinity() : x.value();
}

DesignSolution SolutionArg(const py::dict& solution, const std::optional<py::dict>& graph) {
  return graph ? SolutionFromJson(ToJson(solution), GraphFromJson(ToJson(*graph)))
               : SolutionFromJson(ToJson(solution));
}

}  // namespace

PYBIND11_MODULE(_robcons, m) {
  m.doc() = "Capacity-constrained robust consensus design";

  static PyObject* error_type =
      PyErr_NewException("robcons._robcons.RobconsError", PyExc_ValueError, nullptr);
  m.add_object("RobconsError", py::reinterpret_borrow<py::object>(error_type));
  py::register_exception_translator([](std::exception_ptr p) {
    auto raise = [](const std::string& code, const std::string& message) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type)(code + ": " + message);
      exc.attr("code") = code;
      PyErr_SetObject(error_type, exc.ptr());
    };
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      raise(std::string(ErrorCodeName(e.code())), e.what());
    } catch (const Json::exception& e) {
      raise("invalid-input", e.what());
    }
  });

  constexpr int kThreshold = TreeSearchOptions{}.exact_threshold;
  constexpr int kRestarts = TreeSearchOptions{}.restarts;

  m.def("hstar", [](const py::dict& graph) { return ToFloat(HStar(GraphFromJson(ToJson(graph)))); },
        py::arg("graph"), "H* of a graph document; inf when disconnected.");

  m.def("check_feasibility",
        [](const py::dict& graph, int k) {
          return ToPy(FeasibilityToJson(CheckFeasibility(GraphFromJson(ToJson(graph)), k)));
        },
        py::arg("graph"), py::arg("k"));

  m.def("solve_complete", [](int n, int alpha) { return ToPy(SolutionToJson(SolveComplete(n, alpha))); },
        py::arg("n"), py::arg("alpha") = 1);

  m.def("find_mad",
        [](int n, const std::vector<int>& generators, std::uint64_t seed, int exact_threshold,
           int restarts) {
          return ToPy(TreeResultToJson(
              FindMad(n, generators, Search(seed, exact_threshold, restarts))));
        },
        py::arg("n"), py::arg("generators"), py::arg("seed") = 0,
        py::arg("exact_threshold") = kThreshold, py::arg("restarts") = kRestarts);

  m.def("find_cmad",
        [](const py::dict& spec, std::uint64_t seed, int exact_threshold, int restarts) {
          return ToPy(TreeResultToJson(
              FindCmad(CirculantSpecFromJson(ToJson(spec)), Search(seed, exact_threshold, restarts))));
        },
        py::arg("spec"), py::arg("seed") = 0, py::arg("exact_threshold") = kThreshold,
        py::arg("restarts") = kRestarts);

  m.def("algorithm1",
        [](const py::dict& spec, std::optional<std::vector<int>> capacity_override,
           std::uint64_t seed, int exact_threshold, int restarts) {
          Algorithm1Options o;
          o.search = Search(seed, exact_threshold, restarts);
          o.capacity_override = std::move(capacity_override);
          return ToPy(SolutionToJson(Algorithm1(CirculantSpecFromJson(ToJson(spec)), o)));
        },
        py::arg("spec"), py::arg("capacity_override") = py::none(), py::arg("seed") = 0,
        py::arg("exact_threshold") = kThreshold, py::arg("restarts") = kRestarts);

  m.def("brute_force",
        [](const py::dict& graph, int k) {
          return ToPy(SolutionToJson(BruteForce(GraphFromJson(ToJson(graph)), k)));
        },
        py::arg("graph"), py::arg("k"));

  m.def("validate",
        [](const py::dict& solution, std::optional<py::dict> graph) {
          return ToPy(ValidationToJson(ValidateSolution(SolutionArg(solution, graph))));
        },
        py::arg("solution"), py::arg("graph") = py::none());

  m.def("allocate",
        [](const py::dict& graph, const py::dict& initial, bool exhaustive, bool rank_one) {
          const CapacitatedGraph g = GraphFromJson(ToJson(graph));
          const DesignSolution start = SolutionFromJson(ToJson(initial), g);
          const AllocationResult r = exhaustive
                                         ? ExhaustiveAllocate(g, start.k, start.subgraphs)
                                         : GreedyAllocate(g, start.k, start.subgraphs,
                                                          AllocationOptions{rank_one});
          return ToPy(AllocationToJson(r));
        },
        py::arg("graph"), py::arg("initial"), py::arg("exhaustive") = false,
        py::arg("rank_one") = false);

  m.def("analytic_variance",
        [](const py::dict& solution) {
          return ToFloat(AnalyticVariance(SolutionFromJson(ToJson(solution))));
        },
        py::arg("solution"));

  m.def("simulate",
        [](const py::dict& solution, double dt, double t_total, double burn_in, int trials,
           std::uint64_t seed) {
          SimConfig cfg;
          cfg.dt = dt;
          cfg.t_total = t_total;
          cfg.burn_in = burn_in;
          cfg.trials = trials;
          cfg.seed = seed;
          const VarianceEstimate e = Simulate(SolutionFromJson(ToJson(solution)), cfg);
          return ToPy(EstimateToJson(e, cfg));
        },
        py::arg("solution"), py::arg("dt") = SimConfig{}.dt,
        py::arg("t_total") = SimConfig{}.t_total, py::arg("burn_in") = SimConfig{}.burn_in,
        py::arg("trials") = SimConfig{}.trials, py::arg("seed") = 0);

  m.def("reproduce_table",
        [](std::uint64_t seed, int exact_threshold, int restarts, int max_n) {
          std::vector<TableRow> rows;
          for (const TableRow& r : PublishedTable())
            if (r.n <= max_n) rows.push_back(r);
          if (rows.empty()) return std::string();
          return TableCsv(ReproduceTable(Search(seed, exact_threshold, restarts), rows));
        },
        py::arg("seed") = 0, py::arg("exact_threshold") = kThreshold,
        py::arg("restarts") = kRestarts, py::arg("max_n") = 1000,
        "Circulant comparison table as CSV, restricted to rows with n <= max_n.");
}
