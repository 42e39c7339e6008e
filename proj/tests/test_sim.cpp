#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "robcons/design.hpp"
#include "robcons/error.hpp"
#include "robcons/sim.hpp"

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

const EdgeList kP3 = {{0, 1}, {1, 2}};

DesignSolution Single(const CapacitatedGraph& g) { return MakeSolution(g, {g.edges()}); }

}  // namespace

TEST_CASE("analytic variance") {
  CHECK(AnalyticVariance(SolveComplete(4, 1)).value() == doctest::Approx(9.0 / 8));
  const DesignSolution broken =
      MakeSolution(CapacitatedGraph::Complete(4, 1), {EdgeList{{0, 1}, {2, 3}}});
  CHECK(AnalyticVariance(broken).is_infinite());
}

TEST_CASE("lyapunov oracle matches the spectral value") {
  const EdgeList k5 = CapacitatedGraph::Complete(5).edges();
  CHECK(std::abs(LyapunovVariance(5, k5) - 0.08) <= 1e-10);
  CHECK(std::abs(LyapunovVariance(3, kP3) - 2.0 / 9) <= 1e-10);
  const EdgeList tree = {{0, 1}, {1, 2}, {1, 3}, {3, 4}, {3, 5}, {0, 6}};
  CHECK(std::abs(LyapunovVariance(7, tree) - HStar(7, tree).value()) <= 1e-10);
  CHECK(CodeOf([] { LyapunovVariance(4, {{0, 1}, {2, 3}}); }) == ErrorCode::kInvalidInput);
}

TEST_CASE("discrete lyapunov matches per-mode Euler variance") {
  const double dt = 0.05;
  // P3 eigenvalues 1 and 3: per-mode variance 1 / (lambda (2 - dt lambda)).
  const double expected = (1.0 / (1.0 * (2 - dt)) + 1.0 / (3.0 * (2 - 3 * dt))) / 3.0;
  CHECK(DiscreteLyapunovVariance(3, kP3, dt) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("config validation") {
  const DesignSolution k5 = Single(CapacitatedGraph::Complete(5));
  SimConfig cfg;
  cfg.dt = 0.5;  // 2/lambda_max = 0.4
  CHECK(CodeOf([&] { Simulate(k5, cfg); }) == ErrorCode::kInvalidConfig);
  cfg = SimConfig{};
  cfg.dt = 0.0;
  CHECK(CodeOf([&] { Simulate(k5, cfg); }) == ErrorCode::kInvalidConfig);
  cfg = SimConfig{};
  cfg.burn_in = cfg.t_total;
  CHECK(CodeOf([&] { Simulate(k5, cfg); }) == ErrorCode::kInvalidConfig);
  cfg = SimConfig{};
  cfg.trials = 0;
  CHECK(CodeOf([&] { Simulate(k5, cfg); }) == ErrorCode::kInvalidConfig);
  const DesignSolution broken =
      MakeSolution(CapacitatedGraph::Complete(4, 1), {EdgeList{{0, 1}, {2, 3}}});
  CHECK(CodeOf([&] { Simulate(broken, SimConfig{}); }) == ErrorCode::kInvalidInput);
}

TEST_CASE("monte carlo examples at dt = 0.01") {
  SimConfig cfg;
  cfg.dt = 0.01;
  cfg.t_total = 2000;
  cfg.burn_in = 200;
  cfg.trials = 8;
  const VarianceEstimate k5 = Simulate(Single(CapacitatedGraph::Complete(5)), cfg);
  CHECK(k5.total == doctest::Approx(0.08).epsilon(0.05));
  const VarianceEstimate p3 = Simulate(Single(CapacitatedGraph::Uniform(3, kP3)), cfg);
  CHECK(p3.total == doctest::Approx(2.0 / 9).epsilon(0.05));
  const VarianceEstimate c3 = Simulate(SolveComplete(3, 1), cfg);
  CHECK(c3.total == doctest::Approx(2.0 / 3).epsilon(0.05));
  REQUIRE(c3.per_dimension.size() == 3);
  double sum = 0.0;
  for (double v : c3.per_dimension) {
    CHECK(v >= 0.0);
    sum += v;
  }
  CHECK(sum == doctest::Approx(c3.total));
  for (double se : c3.per_dimension_stderr) CHECK(se >= 0.0);
}

TEST_CASE("estimate agrees with the exact Euler variance") {
  SimConfig cfg;
  cfg.dt = 0.02;
  cfg.t_total = 500;
  cfg.burn_in = 50;
  cfg.trials = 32;
  cfg.seed = 7;
  const DesignSolution p3 = Single(CapacitatedGraph::Uniform(3, kP3));
  const VarianceEstimate e = Simulate(p3, cfg);
  const double exact = DiscreteLyapunovVariance(3, kP3, cfg.dt);
  CHECK(std::abs(e.total - exact) <= 4.0 * e.total_stderr);
}

TEST_CASE("seed determinism") {
  SimConfig cfg;
  cfg.t_total = 50;
  cfg.burn_in = 5;
  cfg.trials = 3;
  cfg.seed = 123;
  const DesignSolution s = SolveComplete(3, 1);
  const VarianceEstimate a = Simulate(s, cfg);
  const VarianceEstimate b = Simulate(s, cfg);
  CHECK(a.per_dimension == b.per_dimension);
  CHECK(a.total == b.total);
  cfg.seed = 124;
  CHECK(Simulate(s, cfg).total != a.total);
}

TEST_CASE("zero noise converges to consensus") {
  SimConfig cfg;
  cfg.dt = 0.01;
  cfg.t_total = 100;
  cfg.burn_in = 1;
  cfg.trials = 2;
  cfg.noise_scale = 0.0;
  cfg.initial_spread = 1.0;
  const VarianceEstimate e = Simulate(Single(CapacitatedGraph::Uniform(3, kP3)), cfg);
  for (double v : e.final_variance) CHECK(v < 1e-10);
  CHECK(e.total > 0.0);
}

TEST_CASE("longer runs shrink the standard error") {
  SimConfig small;
  small.dt = 0.02;
  small.t_total = 100;
  small.burn_in = 10;
  small.trials = 4;
  SimConfig large = small;
  large.t_total = 1600;
  large.trials = 16;
  const DesignSolution k5 = Single(CapacitatedGraph::Complete(5));
  CHECK(Simulate(k5, large).total_stderr < Simulate(k5, small).total_stderr);
}
