#pragma once

#include "trisph/types.hpp"

namespace trisph {

// Source configuration on S^{d-1} together with a pole of S^d orthogonal
// (within 1e-12) to every source point embedded in the first d coordinates.
struct LiftSpec {
  WeightedConfig source;
  UnitVector pole;

  LiftSpec(WeightedConfig source, UnitVector pole);
  static LiftSpec with_default_pole(WeightedConfig source);
};

// x -> sqrt(d/(d+1)) x + pole/sqrt(d+1). Inner products transform as
// <f(x),f(y)> = (d <x,y> + 1)/(d+1); weights carry over.
WeightedConfig lift(const LiftSpec& spec);
WeightedConfig lift(const WeightedConfig& source);

// e_1..e_d, uniform weights.
WeightedConfig gen_orthonormal_basis(int d);
// +-e_1..+-e_d, uniform weights.
WeightedConfig gen_crosspolytope(int d);
// d+1 points with pairwise inner products exactly -1/d, uniform weights.
WeightedConfig gen_simplex(int d);
// Two orthonormal bases of R^2 rotated by theta in [0, pi/2], the first
// carrying total weight lambda in [0, 1] split evenly, the second 1-lambda.
WeightedConfig gen_two_bases(double theta, double lambda);

}  // namespace trisph
