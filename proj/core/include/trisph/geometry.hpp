#pragma once

#include "trisph/types.hpp"

namespace trisph {

// u = <y,z>, v = <x,z>, t = <x,y>, clamped to [-1, 1].
GramTriple gram_triple(const UnitVector& x, const UnitVector& y,
                       const UnitVector& z);

// Geodesic distance arccos(<x,y>) in [0, pi].
double spherical_distance(const UnitVector& x, const UnitVector& y);

// Largest geodesic distance between support points. Needs at least two
// support points.
double spherical_diameter(const WeightedConfig& config);

struct Ball {
  Vector center;
  double radius = -1.0;
};

// Smallest Euclidean ball containing the points (Welzl, move-to-front,
// deterministically shuffled). Exact for points in general position up to
// roundoff.
Ball smallest_enclosing_ball(const std::vector<Vector>& points);

struct CapReport {
  UnitVector center;
  double radius = 0.0;
  // Support indices (into the original configuration) whose distance to the
  // center equals the radius within 1e-9.
  std::vector<int> attained_at;
};

// Smallest spherical cap containing the support. The support must lie in an
// open hemisphere; otherwise a ValidationError is thrown.
CapReport min_enclosing_cap(const WeightedConfig& config);

}  // namespace trisph
