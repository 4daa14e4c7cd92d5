#include "trisph/construct.hpp"

#include <cmath>
#include <numbers>

namespace trisph {

namespace {

void check_pole(const WeightedConfig& source, const UnitVector& pole) {
  const int d = source.dim();
  if (pole.dim() != d + 1) {
    throw ValidationError("lift pole must live one dimension above the source");
  }
  for (int i = 0; i < source.size(); ++i) {
    double inner = 0.0;
    for (int r = 0; r < d; ++r) inner += source.points()(r, i) * pole[r];
    if (std::abs(inner) > 1e-12) {
      throw ValidationError("lift pole must be orthogonal to every embedded "
                            "source point");
    }
  }
}

}  // namespace

LiftSpec::LiftSpec(WeightedConfig source_in, UnitVector pole_in)
    : source(std::move(source_in)), pole(std::move(pole_in)) {
  check_pole(source, pole);
}

LiftSpec LiftSpec::with_default_pole(WeightedConfig source) {
  const int d = source.dim();
  return LiftSpec(std::move(source), UnitVector::axis(d + 1, d));
}

WeightedConfig lift(const LiftSpec& spec) {
  const int d = spec.source.dim();
  const int n = spec.source.size();
  const double scale = std::sqrt(static_cast<double>(d) / (d + 1));
  const Vector shift = spec.pole.coords() / std::sqrt(d + 1.0);
  Matrix pts = Matrix::Zero(d + 1, n);
  for (int i = 0; i < n; ++i) {
    pts.col(i).head(d) = scale * spec.source.points().col(i);
    pts.col(i) += shift;
  }
  return WeightedConfig(std::move(pts), spec.source.weights());
}

WeightedConfig lift(const WeightedConfig& source) {
  return lift(LiftSpec::with_default_pole(source));
}

WeightedConfig gen_orthonormal_basis(int d) {
  if (d < 2) throw ValidationError("dimension must be >= 2");
  return WeightedConfig::with_uniform_weights(Matrix::Identity(d, d));
}

WeightedConfig gen_crosspolytope(int d) {
  if (d < 2) throw ValidationError("dimension must be >= 2");
  Matrix pts = Matrix::Zero(d, 2 * d);
  for (int i = 0; i < d; ++i) {
    pts(i, i) = 1.0;
    pts(i, d + i) = -1.0;
  }
  return WeightedConfig::with_uniform_weights(std::move(pts));
}

WeightedConfig gen_simplex(int d) {
  if (d < 2) throw ValidationError("dimension must be >= 2");
  const double alpha = std::sqrt((d + 1.0) / d);
  const double beta = (1.0 - std::sqrt(d + 1.0)) / (d * std::sqrt(d));
  Matrix pts(d, d + 1);
  for (int i = 0; i < d; ++i) {
    pts.col(i).setConstant(beta);
    pts(i, i) += alpha;
  }
  pts.col(d).setConstant(-1.0 / std::sqrt(d));
  return WeightedConfig::with_uniform_weights(std::move(pts));
}

WeightedConfig gen_two_bases(double theta, double lambda) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi / 2)) {
    throw ValidationError("rotation angle must lie in [0, pi/2]");
  }
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw ValidationError("basis weight must lie in [0, 1]");
  }
  Matrix pts(2, 4);
  pts.col(0) << 1.0, 0.0;
  pts.col(1) << 0.0, 1.0;
  pts.col(2) << std::cos(theta), std::sin(theta);
  pts.col(3) << -std::sin(theta), std::cos(theta);
  Vector w(4);
  w << lambda / 2, lambda / 2, (1.0 - lambda) / 2, (1.0 - lambda) / 2;
  return WeightedConfig(std::move(pts), std::move(w));
}

}  // namespace trisph
