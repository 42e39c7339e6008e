#pragma once

#include <cstdint>
#include <vector>

#include "robcons/design.hpp"
#include "robcons/extended_real.hpp"

namespace robcons {

struct SimConfig {
  double dt = 0.01;
  double t_total = 2000.0;
  double burn_in = 200.0;
  int trials = 8;
  std::uint64_t seed = 0;
  // Multiplies the driving noise; 0 gives the deterministic consensus flow.
  double noise_scale = 1.0;
  // Standard deviation of the i.i.d. normal initial state; 0 starts at the
  // origin.
  double initial_spread = 0.0;
};

struct VarianceEstimate {
  std::vector<double> per_dimension;
  std::vector<double> per_dimension_stderr;
  double total = 0.0;
  double total_stderr = 0.0;
  // Population variance at t_total, averaged over trials.
  std::vector<double> final_variance;
  int steps = 0;
  int samples = 0;
};

// Largest Laplacian eigenvalue over the subgraphs.
double MaxEigenvalue(int n, const std::vector<EdgeList>& subgraphs);

// Throws kInvalidConfig on dt <= 0, dt >= 2/lambda_max, burn_in outside
// [0, t_total), fewer than one trial or negative noise parameters;
// kInvalidInput on a disconnected subgraph.
void ValidateSimConfig(const DesignSolution& solution, const SimConfig& cfg);

// Euler-Maruyama on x' = -L x + xi per dimension, population variance
// time-averaged after burn-in. Trial t draws from a stream seeded by
// (seed, t) only.
VarianceEstimate Simulate(const DesignSolution& solution, const SimConfig& cfg);

// Sum of H* over the subgraphs; infinite when any is disconnected.
ExtendedReal AnalyticVariance(const DesignSolution& solution);

// Steady-state population variance of x' = -L x + xi from the continuous
// Lyapunov equation L S + S L = I - 11'/n, solved on the complement of the
// consensus direction. Throws kInvalidInput when disconnected.
double LyapunovVariance(int n, const EdgeList& edges);

// Same for the Euler-Maruyama chain with step dt:
// S = A S A' + dt (I - 11'/n), A = I - dt L.
double DiscreteLyapunovVariance(int n, const EdgeList& edges, double dt);

}  // namespace robcons
