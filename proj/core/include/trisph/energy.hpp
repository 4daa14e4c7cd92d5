#pragma once

#include "trisph/kernels.hpp"
#include "trisph/types.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace trisph {

// Second moment matrix sum_i w_i x_i x_i^T: symmetric PSD with trace 1.
struct MomentMatrix {
  int dim = 0;
  Matrix entries;

  MomentMatrix(int dim, Matrix entries);
};

MomentMatrix moment_matrix(const WeightedConfig& config);

// Tr(A^3); for a moment matrix this equals the triple-product energy of the
// underlying measure and is >= 1/d^2 with equality iff isotropic.
double trace_cubed(const MomentMatrix& m);

// Contributions split by index coincidence among the ordered triple (i,j,k).
struct EnergyBreakdown {
  double all_equal = 0.0;
  double two_equal = 0.0;
  double all_distinct = 0.0;
};

struct EnergyReport {
  double value = 0.0;
  std::string kernel;
  int n_points = 0;
  std::optional<EnergyBreakdown> breakdown;
};

// E_K = sum_{i,j,k} w_i w_j w_k K(u,v,t) over ordered triples, with
// u = <x_j,x_k>, v = <x_i,x_k>, t = <x_i,x_j>. Deterministic summation
// order; data parallelism over the outer index does not change results.
EnergyReport three_point_energy(const WeightedConfig& config,
                                const KernelSpec& kernel,
                                bool with_breakdown = false);

// sum_{i,j} w_i w_j |<x_i,x_j>|^p, p > 0.
double two_point_frame_energy(const WeightedConfig& config, double p);

// size x size matrix with entries sum_{a,b,c} w_a w_b w_c S_{m,i,j} over the
// configuration, 0 <= i,j < size. Symmetric; PSD for every measure.
Matrix s_moment_matrix(const WeightedConfig& config, int m, int size);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long long n_samples = 0;
  std::uint64_t seed = 0;
};

// Monte Carlo estimate of the kernel integral over three independent
// uniform points of S^{dim-1}. Deterministic for a fixed seed.
McEstimate mc_energy(int dim, const KernelSpec& kernel, long long n_samples,
                     std::uint64_t seed);

}  // namespace trisph
