#include <doctest.h>

#include "trisph/construct.hpp"
#include "trisph/geometry.hpp"
#include "trisph/rng.hpp"

#include "oracles.hpp"

#include <cmath>
#include <numbers>

using namespace trisph;

namespace {

UnitVector unit2(double a, double b) {
  Vector v(2);
  v << a, b;
  return UnitVector(std::move(v));
}

}  // namespace

TEST_CASE("weighted config validation") {
  Matrix ok(2, 2);
  ok.col(0) << 0.6, 0.8;
  ok.col(1) << 1.0, 0.0;

  SUBCASE("default uniform weights") {
    const auto cfg = WeightedConfig::with_uniform_weights(ok);
    CHECK(cfg.weight(0) == 0.5);
    CHECK(cfg.weight(1) == 0.5);
    CHECK(cfg.dim() == 2);
    CHECK(cfg.size() == 2);
  }
  SUBCASE("near-unit points are renormalized, far ones rejected") {
    Matrix close = ok;
    close.col(0) *= 1.0 + 5e-7;
    const auto cfg = WeightedConfig::with_uniform_weights(close);
    CHECK(cfg.point(0).norm() == doctest::Approx(1.0).epsilon(1e-14));

    Matrix off = ok;
    off.col(0) << 0.6, 0.81;
    CHECK_THROWS_AS(WeightedConfig::with_uniform_weights(off),
                    ValidationError);
  }
  SUBCASE("weight validation") {
    Vector negative(2);
    negative << 1.2, -0.2;
    CHECK_THROWS_AS(WeightedConfig(ok, negative), ValidationError);
    Vector off_sum(2);
    off_sum << 0.6, 0.5;
    CHECK_THROWS_AS(WeightedConfig(ok, off_sum), ValidationError);
    Vector nearly(2);
    nearly << 0.5, 0.5000001;
    const WeightedConfig cfg(ok, nearly);
    CHECK(cfg.weights().sum() == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("shape validation") {
    CHECK_THROWS_AS(WeightedConfig(ok, Vector::Constant(3, 1.0 / 3)),
                    ValidationError);
    CHECK_THROWS_AS(
        WeightedConfig::with_uniform_weights(Matrix::Identity(1, 1)),
        ValidationError);
  }
  SUBCASE("support excludes zero weights") {
    Vector w(2);
    w << 1.0, 0.0;
    const WeightedConfig cfg(ok, w);
    CHECK(cfg.support() == std::vector<int>{0});
  }
}

TEST_CASE("canonicalized sorts points and is stable under permutation") {
  Rng rng(21);
  const auto cfg = oracle::random_config(rng, 3, 6, true);
  std::vector<int> perm = {3, 0, 5, 1, 4, 2};
  Matrix pts(3, 6);
  Vector w(6);
  for (int i = 0; i < 6; ++i) {
    pts.col(i) = cfg.point(perm[i]);
    w[i] = cfg.weight(perm[i]);
  }
  const WeightedConfig shuffled(pts, w);
  const auto a = cfg.canonicalized();
  const auto b = shuffled.canonicalized();
  CHECK(a.points() == b.points());
  CHECK(a.weights() == b.weights());
}

TEST_CASE("gram triple values and equivariance") {
  const auto e1 = UnitVector::axis(3, 0);
  const auto e2 = UnitVector::axis(3, 1);
  const auto e3 = UnitVector::axis(3, 2);

  SUBCASE("pinned values") {
    const auto same = gram_triple(e1, e1, e1);
    CHECK(same.u == 1.0);
    CHECK(same.v == 1.0);
    CHECK(same.t == 1.0);
    const auto orth = gram_triple(e1, e2, e3);
    CHECK(orth.u == 0.0);
    CHECK(orth.v == 0.0);
    CHECK(orth.t == 0.0);
    const double r = std::numbers::sqrt2 / 2;
    const auto mixed = gram_triple(unit2(1, 0), unit2(0, 1), unit2(r, r));
    CHECK(mixed.u == doctest::Approx(r).epsilon(1e-15));
    CHECK(mixed.v == doctest::Approx(r).epsilon(1e-15));
    CHECK(mixed.t == 0.0);
  }
  SUBCASE("point swaps permute the coordinates") {
    Rng rng(22);
    for (int rep = 0; rep < 20; ++rep) {
      const auto x = rng.sphere_point(4);
      const auto y = rng.sphere_point(4);
      const auto z = rng.sphere_point(4);
      const auto g = gram_triple(x, y, z);
      const auto yx = gram_triple(y, x, z);
      CHECK(yx.u == g.v);
      CHECK(yx.v == g.u);
      CHECK(yx.t == g.t);
      const auto zx = gram_triple(z, y, x);
      CHECK(zx.u == g.t);
      CHECK(zx.v == g.v);
      CHECK(zx.t == g.u);
      const auto xz = gram_triple(x, z, y);
      CHECK(xz.u == g.u);
      CHECK(xz.v == g.t);
      CHECK(xz.t == g.v);
    }
  }
  SUBCASE("negating the first point flips v and t") {
    Rng rng(23);
    const auto x = rng.sphere_point(3);
    const auto y = rng.sphere_point(3);
    const auto z = rng.sphere_point(3);
    const auto g = gram_triple(x, y, z);
    const auto neg = gram_triple(UnitVector(-x.coords()), y, z);
    CHECK(neg.u == g.u);
    CHECK(neg.v == -g.v);
    CHECK(neg.t == -g.t);
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(gram_triple(e1, e2, UnitVector::axis(4, 0)),
                    ValidationError);
  }
}

TEST_CASE("spherical diameter") {
  CHECK(spherical_diameter(gen_orthonormal_basis(3)) ==
        doctest::Approx(std::numbers::pi / 2).epsilon(1e-14));
  CHECK(spherical_diameter(gen_simplex(2)) ==
        doctest::Approx(2 * std::numbers::pi / 3).epsilon(1e-13));
  CHECK(spherical_diameter(gen_crosspolytope(2)) ==
        doctest::Approx(std::numbers::pi).epsilon(1e-14));

  Matrix pts(2, 2);
  pts.col(0) << 1, 0;
  pts.col(1) << 0, 1;
  Vector w(2);
  w << 1.0, 0.0;
  CHECK_THROWS_AS(spherical_diameter(WeightedConfig(pts, w)),
                  ValidationError);
}

TEST_CASE("smallest enclosing ball basics") {
  SUBCASE("two points give the midpoint ball") {
    Vector a(3), b(3);
    a << 1, 0, 0;
    b << 0, 1, 0;
    const Ball ball = smallest_enclosing_ball({a, b});
    CHECK((ball.center - 0.5 * (a + b)).norm() <= 1e-12);
    CHECK(ball.radius == doctest::Approx((a - b).norm() / 2).epsilon(1e-12));
  }
  SUBCASE("regular simplex vertices give the unit ball about the origin") {
    const auto simplex = gen_simplex(4);
    std::vector<Vector> pts;
    for (int i = 0; i < simplex.size(); ++i) pts.push_back(simplex.point(i));
    const Ball ball = smallest_enclosing_ball(pts);
    CHECK(ball.center.norm() <= 1e-10);
    CHECK(ball.radius == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("random sets: containment and sandwich bounds") {
    Rng rng(24);
    for (int rep = 0; rep < 40; ++rep) {
      const int d = 2 + static_cast<int>(rng.uniform() * 4);
      const int n = 2 + static_cast<int>(rng.uniform() * 30);
      std::vector<Vector> pts;
      for (int i = 0; i < n; ++i) pts.push_back(rng.gaussian(d));
      const Ball ball = smallest_enclosing_ball(pts);
      double max_pair = 0.0;
      Vector centroid = Vector::Zero(d);
      for (const auto& p : pts) centroid += p / n;
      double centroid_radius = 0.0;
      for (const auto& p : pts) {
        CHECK((p - ball.center).norm() <= ball.radius + 1e-9);
        centroid_radius = std::max(centroid_radius, (p - centroid).norm());
        for (const auto& q : pts) {
          max_pair = std::max(max_pair, (p - q).norm());
        }
      }
      CHECK(ball.radius >= max_pair / 2 - 1e-9);
      CHECK(ball.radius <= centroid_radius + 1e-9);
    }
  }
}

TEST_CASE("minimal enclosing cap") {
  SUBCASE("orthonormal basis") {
    const auto cap = min_enclosing_cap(gen_orthonormal_basis(3));
    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    for (int r = 0; r < 3; ++r) {
      CHECK(cap.center[r] == doctest::Approx(inv_sqrt3).epsilon(1e-10));
    }
    CHECK(cap.radius == doctest::Approx(std::acos(inv_sqrt3)).epsilon(1e-10));
    CHECK(cap.attained_at == std::vector<int>{0, 1, 2});
  }
  SUBCASE("single support point has radius zero") {
    Matrix pts(2, 2);
    pts.col(0) << 1, 0;
    pts.col(1) << 0, 1;
    Vector w(2);
    w << 1.0, 0.0;
    const auto cap = min_enclosing_cap(WeightedConfig(pts, w));
    CHECK(cap.radius == 0.0);
    CHECK(cap.attained_at == std::vector<int>{0});
  }
  SUBCASE("configurations spanning no open hemisphere are rejected") {
    CHECK_THROWS_AS(min_enclosing_cap(gen_crosspolytope(3)), ValidationError);
    CHECK_THROWS_AS(min_enclosing_cap(gen_simplex(3)), ValidationError);
  }
  SUBCASE("clustered points give a small cap") {
    Rng rng(25);
    for (int rep = 0; rep < 10; ++rep) {
      const int d = 3;
      const int n = 12;
      Matrix pts(d, n);
      for (int i = 0; i < n; ++i) {
        const double theta = rng.uniform(0.0, 0.3);
        Vector tang = Vector::Zero(d);
        tang.tail(d - 1) = rng.gaussian(d - 1);
        tang /= tang.norm();
        pts.col(i) = std::cos(theta) * Vector::Unit(d, 0) +
                     std::sin(theta) * tang;
      }
      const auto cfg = WeightedConfig::with_uniform_weights(pts);
      const auto cap = min_enclosing_cap(cfg);
      CHECK(cap.radius <= 0.3 + 1e-9);
      for (int i = 0; i < n; ++i) {
        CHECK(spherical_distance(cap.center, cfg.unit_point(i)) <=
              cap.radius + 1e-9);
      }
    }
  }
}
