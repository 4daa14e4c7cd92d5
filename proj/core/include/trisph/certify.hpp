#pragma once

#include "trisph/types.hpp"

#include <array>
#include <cstdint>
#include <string>

namespace trisph {

// Outcome of a single certificate. passed holds iff residual <= tolerance.
struct CertReport {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string witness;
};

// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(const Matrix& symmetric);

// Support points clustered at Euclidean distance tol; weights of a cluster
// add up, the first point encountered represents it.
struct MergedSupport {
  Matrix points;
  Vector weights;
  std::vector<int> representative;

  int size() const { return static_cast<int>(points.cols()); }
};
MergedSupport merge_support(const WeightedConfig& config,
                            double tol = kDistinctPointTol);

// Polynomial identities behind the positive-definiteness certificates,
// verified pointwise on random (u,v,t) from [-1,1]^3:
//   6 ((d-1)^2/d^2) S_{0,2,2} = 2(u^2v^2+u^2t^2+v^2t^2) - (4/d)(u^2+v^2+t^2) + 6/d^2
//   6 S_{1,1,1}               = 6uvt - 2(u^2v^2+u^2t^2+v^2t^2)
CertReport check_identity_rosenfeld(int d, int n_samples, std::uint64_t seed,
                                    double tol = 1e-10);
//   uvt = ((d-1)^2/d^2) S_{0,2,2} + S_{1,1,1} + (2/(3d))(u^2+v^2+t^2) - 1/d^2
CertReport check_identity_uvt(int d, int n_samples, std::uint64_t seed,
                              double tol = 1e-10);

// Smallest eigenvalue across the s-moment matrices of levels 0..m_max must
// exceed -tol.
CertReport psd_check(const WeightedConfig& config, int m_max, int size,
                     double tol = 1e-8);

// Frobenius distance of the moment matrix from I/d.
CertReport check_isotropic(const WeightedConfig& config, double tol = 1e-9);
// Norm of the barycenter sum_i w_i x_i.
CertReport check_balanced(const WeightedConfig& config, double tol = 1e-9);
// Uniform weights: |sum_{ij} <x_i,x_j>^2 - N^2/d|; general weights: distance
// of the squared-inner-product energy from 1/d.
CertReport check_tight_frame(const WeightedConfig& config, double tol = 1e-8);

enum class PackingMode { Nonpositive, StrictlyNegative };

struct PackingReport {
  PackingMode mode = PackingMode::Nonpositive;
  double epsilon = 0.0;
  // Distinct support points examined.
  int n_points = 0;
  // Cardinality bound certified when the check passes: 2d for nonpositive,
  // min(d+1, floor(1+1/epsilon)) for strictly negative.
  long long bound = 0;
  std::array<int, 3> worst_triple = {-1, -1, -1};
  double worst_product = 0.0;
  bool passed = false;
  // Fewer than three distinct support points: nothing to check.
  bool vacuous = false;
};

// Maximum of <x,y><x,z><y,z> over unordered triples of distinct support
// points. Nonpositive mode passes iff max <= tol; strictly-negative mode
// needs epsilon > 0 and passes iff max <= -epsilon + tol. A passing check
// whose point count exceeds the certified bound throws TheoremViolation.
PackingReport check_packing(const WeightedConfig& config, PackingMode mode,
                            double tol = 1e-12, double epsilon = 0.0);

// Every triple of distinct support points must contain an almost-orthogonal
// pair: max over triples of min pairwise |inner product|.
CertReport check_nearly_orthogonal(const WeightedConfig& config,
                                   double tol = 1e-6);
// All triple products <x,y><x,z><y,z> over support triples (repeats allowed)
// must be >= -tol.
CertReport check_nonneg_triples(const WeightedConfig& config,
                                double tol = 1e-12);
// Every distinct support point needs an almost-orthogonal partner: max over
// points of min over other points of |inner product|.
CertReport check_orthogonal_counterpart(const WeightedConfig& config,
                                        double tol = 1e-6);

// For balanced isotropic configurations: (a) sum_{ij} w_i w_j
// (t_ij - 1)(t_ij + 1/d) must vanish; (b) if additionally all pairwise inner
// products are >= -1/d - tol, the support must be a regular simplex of d+1
// uniformly weighted points with pairwise inner products -1/d. Rejects
// configurations that fail the precondition.
CertReport check_simplex_rigidity(const WeightedConfig& config,
                                  double tol = 1e-9);

// Certifies the rigidity statement "isotropic with no obtuse pair implies
// uniformly weighted orthonormal basis": checks isotropy, the non-obtuse
// hypothesis and the ONB structure of the merged support.
CertReport check_onb_structure(const WeightedConfig& config,
                               double tol = 1e-6);

// Structural classification used on optimizer output: support clusters into
// d lines (antipodal points identified), pairwise orthogonal, each line of
// weight 1/d.
CertReport classify_onb_up_to_signs(const WeightedConfig& config,
                                    double tol = 1e-4);

}  // namespace trisph
