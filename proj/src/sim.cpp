#include "robcons/sim.hpp"

#include <cmath>
#include <random>
#include <string>

#include "robcons/error.hpp"

namespace robcons {

double MaxEigenvalue(int n, const std::vector<EdgeList>& subgraphs) {
  double top = 0.0;
  for (const EdgeList& sg : subgraphs) {
    const Spectrum s = ComputeSpectrum(n, sg);
    if (!s.eigenvalues.empty()) top = std::max(top, s.eigenvalues.back());
  }
  return top;
}

void ValidateSimConfig(const DesignSolution& solution, const SimConfig& cfg) {
  const int n = solution.base.n();
  if (n < 2) throw Error(ErrorCode::kInvalidInput, "need n >= 2");
  for (std::size_t l = 0; l < solution.subgraphs.size(); ++l) {
    if (!IsConnected(n, solution.subgraphs[l])) {
      throw Error(ErrorCode::kInvalidInput,
                  "subgraph " + std::to_string(l) + " is disconnected");
    }
  }
  if (!(cfg.dt > 0.0)) throw Error(ErrorCode::kInvalidConfig, "dt must be positive");
  const double top = MaxEigenvalue(n, solution.subgraphs);
  if (cfg.dt * top >= 2.0) {
    throw Error(ErrorCode::kInvalidConfig,
                "dt " + std::to_string(cfg.dt) + " is not below 2/lambda_max = " +
                    std::to_string(2.0 / top));
  }
  if (!(cfg.burn_in >= 0.0) || !(cfg.burn_in < cfg.t_total)) {
    throw Error(ErrorCode::kInvalidConfig, "need 0 <= burn_in < t_total");
  }
  if (cfg.trials < 1) throw Error(ErrorCode::kInvalidConfig, "trials must be >= 1");
  if (cfg.noise_scale < 0.0 || cfg.initial_spread < 0.0) {
    throw Error(ErrorCode::kInvalidConfig, "noise parameters must be non-negative");
  }
}

namespace {

struct Adjacency {
  std::vector<int> offset;
  std::vector<int> target;
};

Adjacency MakeAdjacency(int n, const EdgeList& edges) {
  Adjacency a;
  a.offset.assign(n + 1, 0);
  for (const Edge& e : edges) {
    ++a.offset[e.u + 1];
    ++a.offset[e.v + 1];
  }
  for (int i = 0; i < n; ++i) a.offset[i + 1] += a.offset[i];
  a.target.resize(a.offset[n]);
  std::vector<int> fill(a.offset.begin(), a.offset.end() - 1);
  for (const Edge& e : edges) {
    a.target[fill[e.u]++] = e.v;
    a.target[fill[e.v]++] = e.u;
  }
  return a;
}

double PopulationVariance(const std::vector<double>& x) {
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double acc = 0.0;
  for (double v : x) acc += (v - mean) * (v - mean);
  return acc / static_cast<double>(x.size());
}

double MeanAndStderr(const std::vector<double>& values, double& stderr_out) {
  const double count = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= count;
  if (values.size() < 2) {
    stderr_out = 0.0;
    return mean;
  }
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  stderr_out = std::sqrt(ss / (count - 1.0) / count);
  return mean;
}

}  // namespace

VarianceEstimate Simulate(const DesignSolution& solution, const SimConfig& cfg) {
  ValidateSimConfig(solution, cfg);
  const int n = solution.base.n();
  const int k = static_cast<int>(solution.subgraphs.size());
  const int steps = static_cast<int>(std::llround(cfg.t_total / cfg.dt));
  const int burn = static_cast<int>(std::llround(cfg.burn_in / cfg.dt));
  const double noise = std::sqrt(cfg.dt) * cfg.noise_scale;

  std::vector<Adjacency> adjacency;
  for (const EdgeList& sg : solution.subgraphs) adjacency.push_back(MakeAdjacency(n, sg));

  // trial_means[l][t]
  std::vector<std::vector<double>> trial_means(k, std::vector<double>(cfg.trials));
  std::vector<double> trial_totals(cfg.trials, 0.0);
  std::vector<double> final_variance(k, 0.0);

  for (int t = 0; t < cfg.trials; ++t) {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed),
                      static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(t)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal;
    for (int l = 0; l < k; ++l) {
      const Adjacency& adj = adjacency[l];
      std::vector<double> x(n, 0.0), next(n);
      if (cfg.initial_spread > 0.0)
        for (double& v : x) v = cfg.initial_spread * normal(rng);
      double acc = 0.0;
      for (int step = 1; step <= steps; ++step) {
        for (int i = 0; i < n; ++i) {
          double lx = 0.0;
          for (int p = adj.offset[i]; p < adj.offset[i + 1]; ++p) lx += x[i] - x[adj.target[p]];
          next[i] = x[i] - cfg.dt * lx;
        }
        if (noise > 0.0)
          for (int i = 0; i < n; ++i) next[i] += noise * normal(rng);
        x.swap(next);
        if (step > burn) acc += PopulationVariance(x);
      }
      trial_means[l][t] = acc / static_cast<double>(steps - burn);
      trial_totals[t] += trial_means[l][t];
      final_variance[l] += PopulationVariance(x) / cfg.trials;
    }
  }

  VarianceEstimate out;
  out.steps = steps;
  out.samples = steps - burn;
  out.final_variance = final_variance;
  for (int l = 0; l < k; ++l) {
    double se = 0.0;
    out.per_dimension.push_back(MeanAndStderr(trial_means[l], se));
    out.per_dimension_stderr.push_back(se);
  }
  for (double v : out.per_dimension) out.total += v;
  MeanAndStderr(trial_totals, out.total_stderr);
  return out;
}

ExtendedReal AnalyticVariance(const DesignSolution& solution) {
  return SolutionCost(solution.base.n(), solution.subgraphs);
}

namespace {

// Orthonormal basis of the complement of the all-ones vector (n x (n-1)).
Eigen::MatrixXd ConsensusComplement(int n) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
  m.col(0).setOnes();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  Eigen::MatrixXd q = qr.householderQ();
  return q.rightCols(n - 1);
}

Eigen::MatrixXd ReducedLaplacian(int n, const EdgeList& edges) {
  if (n < 2) throw Error(ErrorCode::kInvalidInput, "need n >= 2");
  if (!IsConnected(n, edges)) throw Error(ErrorCode::kInvalidInput, "graph is disconnected");
  const Eigen::MatrixXd q = ConsensusComplement(n);
  return q.transpose() * Laplacian(n, edges) * q;
}

// Solves op * vec(S) = vec(rhs).
Eigen::MatrixXd SolveKronecker(const Eigen::MatrixXd& op, const Eigen::MatrixXd& rhs) {
  const Eigen::Index m = rhs.rows();
  Eigen::VectorXd vec = Eigen::Map<const Eigen::VectorXd>(rhs.data(), m * m);
  Eigen::VectorXd sol = op.partialPivLu().solve(vec);
  return Eigen::Map<Eigen::MatrixXd>(sol.data(), m, m);
}

Eigen::MatrixXd Kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

double LyapunovVariance(int n, const EdgeList& edges) {
  const Eigen::MatrixXd lr = ReducedLaplacian(n, edges);
  const Eigen::Index m = lr.rows();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(m, m);
  // vec(L S + S L) = (I (x) L + L (x) I) vec(S)
  const Eigen::MatrixXd s = SolveKronecker(Kron(id, lr) + Kron(lr, id), id);
  return s.trace() / n;
}

double DiscreteLyapunovVariance(int n, const EdgeList& edges, double dt) {
  const Eigen::MatrixXd lr = ReducedLaplacian(n, edges);
  const Eigen::Index m = lr.rows();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(m, m);
  const Eigen::MatrixXd a = id - dt * lr;
  const Eigen::MatrixXd op = Eigen::MatrixXd::Identity(m * m, m * m) - Kron(a, a);
  const Eigen::MatrixXd s = SolveKronecker(op, dt * id);
  return s.trace() / n;
}

}  // namespace robcons
