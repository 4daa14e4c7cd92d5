#pragma once

#include "trisph/certify.hpp"
#include "trisph/kernels.hpp"
#include "trisph/types.hpp"

#include <cstdint>
#include <vector>

namespace trisph {

// Annealing schedule 1e-1, 1e-2, ..., 1e-8 for the smoothing parameter.
std::vector<double> default_smoothing_schedule();

// Backtracking line search with Armijo acceptance; the accepted step is
// carried (grown) into the next iteration.
struct StepRule {
  double initial_step = 1.0;
  double shrink = 0.5;
  double grow = 2.0;
  double armijo_c = 1e-4;
  int max_backtracks = 60;
  double max_step = 1024.0;
};

struct OptimizerSettings {
  int dim;
  int n_points;
  KernelSpec kernel;
  // Optimize weights through a softmax parametrization; otherwise weights
  // stay uniform.
  bool optimize_weights = false;
  int restarts = 1;
  // Iteration budget per smoothing level.
  int max_iters = 500;
  std::vector<double> smoothing_schedule = default_smoothing_schedule();
  StepRule step_rule;
  std::uint64_t seed = 0;
  // Riemannian gradient norm declaring a level converged.
  double convergence_tol = 1e-10;

  OptimizerSettings(int dim_in, int n_points_in, KernelSpec kernel_in)
      : dim(dim_in), n_points(n_points_in), kernel(std::move(kernel_in)) {}
};

struct TracePoint {
  long long iter = 0;
  double epsilon = 0.0;
  double energy = 0.0;
};

struct RestartSummary {
  int restart = 0;
  double energy = 0.0;
  bool converged = false;
  long long iterations = 0;
};

struct OptimizerResult {
  WeightedConfig best_config;
  // Unsmoothed energy of best_config, recomputed through the standard
  // energy evaluation.
  double best_energy;
  bool converged;
  int best_restart;
  // Accepted steps of the best restart (smoothed objective values).
  std::vector<TracePoint> trace;
  std::vector<RestartSummary> restarts;
};

// Projected Riemannian gradient descent over point positions (and weight
// softmax parameters when enabled), annealed over the smoothing schedule.
// Deterministic for fixed settings; restart r draws from stream (seed, r).
// Requires a smoothable kernel. Throws TheoremViolation if the final energy
// undercuts the proved lower bound 1/d^2 (triple product kernel, or pframe
// with p <= 1) by more than 1e-9.
OptimizerResult minimize_energy(const OptimizerSettings& settings);

struct PackingSearchResult {
  WeightedConfig config;
  // Exact (unsmoothed) maximum of <x,y><x,z><y,z> over distinct triples.
  double minimax_product = 0.0;
};

// Minimizes the maximum triple product over n_points unit vectors via
// annealed log-sum-exp smoothing of the max.
PackingSearchResult search_packing(int dim, int n_points, int restarts,
                                   std::uint64_t seed, int max_iters = 500);

// Central finite differences along random tangent directions against the
// analytic Riemannian gradient of the smoothed objective (first schedule
// entry; weights held fixed). Residual is the worst relative error.
CertReport gradient_check(const OptimizerSettings& settings,
                          const WeightedConfig& at, double fd_step = 1e-6,
                          double tol = 1e-5);

}  // namespace trisph
