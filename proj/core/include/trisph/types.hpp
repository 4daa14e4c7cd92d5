#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace trisph {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr const char* kToolVersion = "0.1.0";

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input data or a parameter outside its domain. The CLI maps this to
// exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A numeric result contradicted a proved bound. Must never trigger on valid
// data; the CLI maps this to exit code 1.
class TheoremViolation : public Error {
 public:
  using Error::Error;
};

// Weights at or below this threshold are excluded from the support.
inline constexpr double kSupportWeightEps = 1e-15;
// Points within this Euclidean distance count as a single support point.
inline constexpr double kDistinctPointTol = 1e-9;
// Maximum tolerated deviation of an input point from unit norm.
inline constexpr double kNormRejectTol = 1e-6;
// Maximum tolerated deviation of an input weight vector from total mass 1.
inline constexpr double kWeightSumTol = 1e-6;

// A point of S^{d-1}. Renormalizes on construction; rejects (near-)zero input.
class UnitVector {
 public:
  explicit UnitVector(Vector coords);
  static UnitVector axis(int dim, int k);

  int dim() const { return static_cast<int>(coords_.size()); }
  const Vector& coords() const { return coords_; }
  double operator[](int i) const { return coords_[i]; }

 private:
  Vector coords_;
};

// Pairwise inner products of an ordered point triple (x, y, z):
//   u = <y,z>, v = <x,z>, t = <x,y>.
struct GramTriple {
  double u = 1.0;
  double v = 1.0;
  double t = 1.0;
};

// A finitely supported probability measure on S^{d-1}: unit points x_1..x_N
// (columns) with nonnegative weights summing to 1. Immutable once built.
// Duplicate points are allowed and are not merged.
class WeightedConfig {
 public:
  WeightedConfig(Matrix points, Vector weights);
  static WeightedConfig with_uniform_weights(Matrix points);

  int dim() const { return static_cast<int>(points_.rows()); }
  int size() const { return static_cast<int>(points_.cols()); }
  const Matrix& points() const { return points_; }
  const Vector& weights() const { return weights_; }
  Vector point(int i) const { return points_.col(i); }
  UnitVector unit_point(int i) const { return UnitVector(points_.col(i)); }
  double weight(int i) const { return weights_[i]; }

  // Indices with weight above kSupportWeightEps.
  std::vector<int> support() const;
  // Same measure with points (and their weights) sorted lexicographically.
  WeightedConfig canonicalized() const;
  // N x N matrix of pairwise inner products, entries clamped to [-1, 1].
  Matrix gram() const;

 private:
  Matrix points_;
  Vector weights_;
};

}  // namespace trisph
