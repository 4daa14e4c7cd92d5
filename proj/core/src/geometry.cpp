#include "trisph/geometry.hpp"

#include "trisph/rng.hpp"

#include <algorithm>
#include <cmath>

namespace trisph {

namespace {

double clamped_inner(const Vector& a, const Vector& b) {
  return std::clamp(a.dot(b), -1.0, 1.0);
}

// Circumscribed ball of an affinely independent boundary set: with q0 as
// origin, solve 2 (q_i-q0).(q_j-q0) lam_j = |q_i-q0|^2.
Ball ball_from_boundary(const std::vector<Vector>& boundary) {
  if (boundary.empty()) return Ball{};
  if (boundary.size() == 1) return Ball{boundary[0], 0.0};
  const Vector& q0 = boundary[0];
  const int m = static_cast<int>(boundary.size()) - 1;
  Matrix a(m, m);
  Vector b(m);
  for (int i = 0; i < m; ++i) {
    const Vector di = boundary[i + 1] - q0;
    for (int j = 0; j < m; ++j) {
      a(i, j) = 2.0 * di.dot(boundary[j + 1] - q0);
    }
    b[i] = di.squaredNorm();
  }
  Eigen::FullPivLU<Matrix> lu(a);
  if (!lu.isInvertible()) {
    std::vector<Vector> reduced(boundary.begin(), boundary.end() - 1);
    return ball_from_boundary(reduced);
  }
  const Vector lam = lu.solve(b);
  Vector center = q0;
  for (int j = 0; j < m; ++j) center += lam[j] * (boundary[j + 1] - q0);
  return Ball{center, (center - q0).norm()};
}

bool ball_contains(const Ball& ball, const Vector& p) {
  if (ball.radius < 0.0) return false;
  return (p - ball.center).norm() <= ball.radius * (1.0 + 1e-12) + 1e-14;
}

Ball welzl(std::vector<Vector>& pts, std::vector<Vector>& boundary, int n,
           int dim) {
  if (n == 0 || static_cast<int>(boundary.size()) == dim + 1) {
    return ball_from_boundary(boundary);
  }
  Ball ball = welzl(pts, boundary, n - 1, dim);
  if (ball_contains(ball, pts[n - 1])) return ball;
  boundary.push_back(pts[n - 1]);
  ball = welzl(pts, boundary, n - 1, dim);
  boundary.pop_back();
  // Move-to-front keeps the expected recursion depth small.
  const Vector p = pts[n - 1];
  for (int i = n - 1; i > 0; --i) pts[i] = pts[i - 1];
  pts[0] = p;
  return ball;
}

}  // namespace

GramTriple gram_triple(const UnitVector& x, const UnitVector& y,
                       const UnitVector& z) {
  if (x.dim() != y.dim() || x.dim() != z.dim()) {
    throw ValidationError("gram triple needs points of equal dimension");
  }
  return GramTriple{clamped_inner(y.coords(), z.coords()),
                    clamped_inner(x.coords(), z.coords()),
                    clamped_inner(x.coords(), y.coords())};
}

double spherical_distance(const UnitVector& x, const UnitVector& y) {
  if (x.dim() != y.dim()) {
    throw ValidationError("spherical distance needs points of equal dimension");
  }
  return std::acos(clamped_inner(x.coords(), y.coords()));
}

double spherical_diameter(const WeightedConfig& config) {
  const auto sup = config.support();
  if (sup.size() < 2) {
    throw ValidationError("spherical diameter needs at least two support points");
  }
  const Matrix g = config.gram();
  double min_inner = 1.0;
  for (std::size_t a = 0; a + 1 < sup.size(); ++a) {
    for (std::size_t b = a + 1; b < sup.size(); ++b) {
      min_inner = std::min(min_inner, g(sup[a], sup[b]));
    }
  }
  return std::acos(std::clamp(min_inner, -1.0, 1.0));
}

Ball smallest_enclosing_ball(const std::vector<Vector>& points) {
  if (points.empty()) {
    throw ValidationError("enclosing ball needs at least one point");
  }
  const int dim = static_cast<int>(points[0].size());
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != dim) {
      throw ValidationError("enclosing ball needs points of equal dimension");
    }
  }
  std::vector<Vector> pts = points;
  Rng rng(0x5eb5eb5eb5eb5ebULL);
  for (int i = static_cast<int>(pts.size()) - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.uniform() * (i + 1));
    std::swap(pts[i], pts[std::min(j, i)]);
  }
  std::vector<Vector> boundary;
  return welzl(pts, boundary, static_cast<int>(pts.size()), dim);
}

CapReport min_enclosing_cap(const WeightedConfig& config) {
  const auto sup = config.support();
  std::vector<Vector> pts;
  pts.reserve(sup.size());
  for (int idx : sup) pts.push_back(config.point(idx));
  const Ball ball = smallest_enclosing_ball(pts);
  if (ball.center.norm() < 1e-9) {
    throw ValidationError(
        "support is not contained in an open hemisphere; no enclosing cap");
  }
  UnitVector center(ball.center);
  double radius = 0.0;
  std::vector<double> dist(sup.size());
  for (std::size_t i = 0; i < sup.size(); ++i) {
    dist[i] = spherical_distance(center, config.unit_point(sup[i]));
    radius = std::max(radius, dist[i]);
  }
  CapReport report{std::move(center), radius, {}};
  for (std::size_t i = 0; i < sup.size(); ++i) {
    if (radius - dist[i] <= 1e-9) report.attained_at.push_back(sup[i]);
  }
  return report;
}

}  // namespace trisph
