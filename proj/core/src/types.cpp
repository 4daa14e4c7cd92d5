#include "trisph/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace trisph {

UnitVector::UnitVector(Vector coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) {
    throw ValidationError("unit vector must have dimension >= 2");
  }
  const double n = coords_.norm();
  if (!std::isfinite(n) || n < 1e-12) {
    throw ValidationError("unit vector must have nonzero finite norm");
  }
  coords_ /= n;
}

UnitVector UnitVector::axis(int dim, int k) {
  if (dim < 2 || k < 0 || k >= dim) {
    throw ValidationError("axis index out of range");
  }
  Vector e = Vector::Zero(dim);
  e[k] = 1.0;
  return UnitVector(std::move(e));
}

WeightedConfig::WeightedConfig(Matrix points, Vector weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (points_.rows() < 2) {
    throw ValidationError("configuration dimension must be >= 2");
  }
  if (points_.cols() < 1) {
    throw ValidationError("configuration needs at least one point");
  }
  if (weights_.size() != points_.cols()) {
    throw ValidationError("weight count does not match point count");
  }
  for (int i = 0; i < points_.cols(); ++i) {
    const double n = points_.col(i).norm();
    if (!std::isfinite(n) || std::abs(n - 1.0) > kNormRejectTol) {
      throw ValidationError("point " + std::to_string(i) +
                            " is off the unit sphere (norm " +
                            std::to_string(n) + ")");
    }
    points_.col(i) /= n;
  }
  double sum = 0.0;
  for (int i = 0; i < weights_.size(); ++i) {
    if (!std::isfinite(weights_[i]) || weights_[i] < 0.0) {
      throw ValidationError("weight " + std::to_string(i) +
                            " is negative or non-finite");
    }
    sum += weights_[i];
  }
  if (std::abs(sum - 1.0) > kWeightSumTol) {
    throw ValidationError("weights sum to " + std::to_string(sum) +
                          ", expected 1");
  }
  weights_ /= sum;
}

WeightedConfig WeightedConfig::with_uniform_weights(Matrix points) {
  const auto n = points.cols();
  return WeightedConfig(std::move(points), Vector::Constant(n, 1.0 / n));
}

std::vector<int> WeightedConfig::support() const {
  std::vector<int> idx;
  for (int i = 0; i < size(); ++i) {
    if (weights_[i] > kSupportWeightEps) idx.push_back(i);
  }
  return idx;
}

WeightedConfig WeightedConfig::canonicalized() const {
  std::vector<int> order(size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    for (int r = 0; r < dim(); ++r) {
      if (points_(r, a) != points_(r, b)) return points_(r, a) < points_(r, b);
    }
    return weights_[a] < weights_[b];
  });
  Matrix pts(dim(), size());
  Vector w(size());
  for (int i = 0; i < size(); ++i) {
    pts.col(i) = points_.col(order[i]);
    w[i] = weights_[order[i]];
  }
  return WeightedConfig(std::move(pts), std::move(w));
}

Matrix WeightedConfig::gram() const {
  Matrix g = points_.transpose() * points_;
  for (int i = 0; i < g.rows(); ++i) {
    for (int j = 0; j < g.cols(); ++j) {
      g(i, j) = std::clamp(g(i, j), -1.0, 1.0);
    }
  }
  return g;
}

}  // namespace trisph
