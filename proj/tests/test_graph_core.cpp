#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "robcons/error.hpp"
#include "robcons/graph.hpp"

using namespace robcons;

namespace {

const EdgeList kP3 = {{0, 1}, {1, 2}};
const EdgeList kK3 = {{0, 1}, {0, 2}, {1, 2}};
const EdgeList kC4 = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};
const EdgeList kStar4 = {{0, 1}, {0, 2}, {0, 3}};
const EdgeList kTwoEdges = {{0, 1}, {2, 3}};

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

TEST_CASE("graph construction rejects malformed input") {
  CHECK(CodeOf([] { CapacitatedGraph(3, {{0, 0}}, {1}); }) == ErrorCode::kInvalidInput);
  CHECK(CodeOf([] { CapacitatedGraph(3, {{0, 1}, {1, 0}}, {1, 1}); }) ==
        ErrorCode::kInvalidInput);
  CHECK(CodeOf([] { CapacitatedGraph(3, {{0, 3}}, {1}); }) == ErrorCode::kInvalidInput);
  CHECK(CodeOf([] { CapacitatedGraph(3, {{0, 1}}, {-1}); }) == ErrorCode::kInvalidInput);
  CHECK(CodeOf([] { CapacitatedGraph(3, {{0, 1}}, {}); }) == ErrorCode::kInvalidInput);
}

TEST_CASE("edges are stored canonically") {
  CapacitatedGraph g(4, {{3, 2}, {1, 0}, {2, 0}}, {5, 6, 7});
  REQUIRE(g.num_edges() == 3);
  CHECK(g.edges()[0] == Edge{0, 1});
  CHECK(g.edges()[1] == Edge{0, 2});
  CHECK(g.edges()[2] == Edge{2, 3});
  CHECK(g.capacity(1, 0) == 6);
  CHECK(g.capacity(0, 2) == 7);
  CHECK(g.capacity(3, 2) == 5);
  CHECK_FALSE(g.has_edge(1, 3));
}

TEST_CASE("laplacian") {
  SUBCASE("path") {
    Eigen::MatrixXd expected(3, 3);
    expected << 1, -1, 0, -1, 2, -1, 0, -1, 1;
    CHECK(Laplacian(3, kP3) == expected);
  }
  SUBCASE("K3") {
    const Eigen::MatrixXd l = Laplacian(3, kK3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(l(i, j) == (i == j ? 2.0 : -1.0));
  }
  SUBCASE("empty n=2") { CHECK(Laplacian(2, EdgeList{}) == Eigen::MatrixXd::Zero(2, 2)); }
}

TEST_CASE("spectrum") {
  auto near = [](const std::vector<double>& got, const std::vector<double>& want) {
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
  };
  const EdgeList k4 = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  near(ComputeSpectrum(4, k4).eigenvalues, {0, 4, 4, 4});
  near(ComputeSpectrum(4, kStar4).eigenvalues, {0, 1, 1, 4});
  near(ComputeSpectrum(2, EdgeList{}).eigenvalues, {0, 0});
}

TEST_CASE("hstar examples") {
  CHECK(HStar(3, kP3).value() == doctest::Approx(2.0 / 9).epsilon(1e-12));
  CHECK(HStar(3, kK3).value() == doctest::Approx(1.0 / 9).epsilon(1e-12));
  CHECK(HStar(4, kTwoEdges).is_infinite());
  CHECK(HStar(4, kTwoEdges).to_string() == "inf");
  CHECK(CodeOf([] { HStar(1, EdgeList{}); }) == ErrorCode::kInvalidInput);
}

TEST_CASE("is_connected") {
  CHECK(IsConnected(4, kC4));
  CHECK_FALSE(IsConnected(4, kTwoEdges));
  CHECK(IsConnected(1, EdgeList{}));
}

TEST_CASE("average distance and tree hstar") {
  const SpanningTree p3{3, kP3, 0};
  const SpanningTree star{4, kStar4, 0};
  const SpanningTree edge{2, {{0, 1}}, 0};
  CHECK(AverageDistance(p3) == doctest::Approx(4.0 / 3));
  CHECK(AverageDistance(star) == doctest::Approx(1.5));
  CHECK(AverageDistance(edge) == doctest::Approx(1.0));
  CHECK(TreeHStar(p3) == doctest::Approx(2.0 / 9));
  CHECK(TreeHStar(star) == doctest::Approx(0.28125));
  CHECK(TreeHStar(edge) == doctest::Approx(0.125));
  CHECK(WienerIndex(star) == 9);
  CHECK(CodeOf([] { AverageDistance(SpanningTree{4, kC4, 0}); }) == ErrorCode::kInvalidInput);
  CHECK(CodeOf([] { AverageDistance(SpanningTree{4, kTwoEdges, 0}); }) ==
        ErrorCode::kInvalidInput);
}

TEST_CASE("min cut and total capacity") {
  CHECK(MinCutCapacity(CapacitatedGraph::Uniform(4, kC4)) == 2);
  CHECK(MinCutCapacity(CapacitatedGraph::Uniform(4, kStar4)) == 1);
  CHECK(MinCutCapacity(CapacitatedGraph::Complete(3, 2)) == 4);
  CHECK(MinCutCapacity(CapacitatedGraph::Uniform(4, kTwoEdges)) == 0);
  CHECK(CodeOf([] { MinCutCapacity(CapacitatedGraph(1, {}, {})); }) == ErrorCode::kInvalidInput);
  CHECK(TotalCapacity(CapacitatedGraph::Complete(3, 2)) == 6);
  CHECK(TotalCapacity(CapacitatedGraph(3, {}, {})) == 0);
  CHECK(TotalCapacity(CapacitatedGraph::Uniform(4, kC4)) == 4);
}

TEST_CASE("cut sets") {
  const std::vector<int> side = {0, 1};
  const Cut c = MakeCut(4, kC4, side);
  CHECK(c.side_u == std::vector<int>{0, 1});
  CHECK(c.side_w == std::vector<int>{2, 3});
  CHECK(c.cutset == EdgeList{{0, 3}, {1, 2}});
}

TEST_CASE("random graphs: hstar finite iff connected, laplacian invariants") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const EdgeList edges = oracle::RandomGraph(n, 0.4, rng);
    const ExtendedReal h = HStar(n, edges);
    if (IsConnected(n, edges)) {
      REQUIRE(h.is_finite());
      CHECK(h.value() > 0.0);
    } else {
      CHECK(h.is_infinite());
    }
    const Eigen::MatrixXd l = Laplacian(n, edges);
    for (int i = 0; i < n; ++i) CHECK(l.row(i).sum() == 0.0);
    const Spectrum s = ComputeSpectrum(n, edges);
    double sum = 0.0;
    for (double x : s.eigenvalues) sum += x;
    CHECK(std::abs(sum - 2.0 * static_cast<double>(edges.size())) <= 1e-9);
    CHECK(std::abs(s.eigenvalues.front()) <= 1e-9);
  }
}

TEST_CASE("tree formula equals spectral hstar on random trees") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 11);
    const SpanningTree t{n, oracle::RandomTree(n, rng), 0};
    REQUIRE(IsSpanningTree(t));
    CHECK(std::abs(TreeHStar(t) - HStar(n, t.edges).value()) <= 1e-9);
    CHECK(AverageDistance(t) == doctest::Approx(oracle::AverageDistanceBfs(n, t.edges)));
  }
}

TEST_CASE("adding an edge strictly decreases hstar") {
  std::mt19937_64 rng(17);
  int checked = 0;
  while (checked < 100) {
    const int n = 3 + static_cast<int>(rng() % 6);
    EdgeList edges = oracle::RandomGraph(n, 0.5, rng);
    if (!IsConnected(n, edges) || edges.size() == static_cast<std::size_t>(n * (n - 1) / 2)) continue;
    Edge extra{0, 0};
    do {
      extra = Edge::Canonical(static_cast<int>(rng() % n), static_cast<int>(rng() % n));
    } while (extra.u == extra.v || std::find(edges.begin(), edges.end(), extra) != edges.end());
    const double before = HStar(n, edges).value();
    edges.push_back(extra);
    CHECK(HStar(n, edges).value() < before);
    ++checked;
  }
}

TEST_CASE("min cut equals minimum over all bipartitions") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 9);
    const EdgeList edges = oracle::RandomGraph(n, 0.45, rng);
    std::vector<int> caps;
    for (std::size_t i = 0; i < edges.size(); ++i) caps.push_back(static_cast<int>(rng() % 4));
    const CapacitatedGraph g(n, edges, caps);
    CHECK(MinCutCapacity(g) == oracle::MinCutByBipartitions(g));
  }
}
