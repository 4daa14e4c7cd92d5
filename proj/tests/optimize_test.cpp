#include <doctest.h>

#include "trisph/certify.hpp"
#include "trisph/construct.hpp"
#include "trisph/energy.hpp"
#include "trisph/optimize.hpp"
#include "trisph/rng.hpp"

#include "oracles.hpp"

#include <cmath>

using namespace trisph;

TEST_CASE("analytic gradients match finite differences") {
  Rng rng(71);
  SUBCASE("smoothed pframe objective") {
    OptimizerSettings settings(3, 5, KernelSpec::pframe(3, 1.0));
    settings.seed = 5;
    const auto at = oracle::random_config(rng, 3, 5);
    const auto report = gradient_check(settings, at, 1e-6, 1e-5);
    CHECK(report.passed);
  }
  SUBCASE("polynomial objectives are exact to roundoff") {
    OptimizerSettings settings(4, 4, KernelSpec::triple_product(4));
    settings.seed = 6;
    const auto at = oracle::random_config(rng, 4, 4);
    const auto report = gradient_check(settings, at, 1e-6, 1e-7);
    CHECK(report.passed);
    CHECK(report.residual <= 1e-7);
  }
  SUBCASE("weighted configurations") {
    OptimizerSettings settings(3, 4, KernelSpec::pframe(3, 2.0));
    settings.seed = 7;
    const auto at = oracle::random_config(rng, 3, 4, true);
    CHECK(gradient_check(settings, at, 1e-6, 1e-5).passed);
  }
  SUBCASE("validation") {
    OptimizerSettings settings(3, 4, KernelSpec::s_entry(3, 1, 0, 0));
    CHECK_THROWS_AS(gradient_check(settings, oracle::random_config(rng, 3, 4),
                                   1e-6, 1e-5),
                    ValidationError);
  }
}

TEST_CASE("two points under the triple product flow to an orthogonal pair") {
  OptimizerSettings settings(2, 2, KernelSpec::triple_product(2));
  settings.seed = 2026;
  settings.restarts = 2;
  const auto result = minimize_energy(settings);
  CHECK(result.best_energy == doctest::Approx(0.25).epsilon(1e-8));
  const double inner =
      result.best_config.point(0).dot(result.best_config.point(1));
  CHECK(std::abs(inner) <= 1e-4);
  CHECK(result.restarts.size() == 2);
  CHECK(result.best_restart >= 0);
  CHECK(result.best_restart < 2);
  CHECK(result.restarts[result.best_restart].energy == result.best_energy);
  CHECK(result.restarts[result.best_restart].converged == result.converged);
}

TEST_CASE("three points in dimension three recover an orthonormal basis") {
  OptimizerSettings settings(3, 3, KernelSpec::pframe(3, 0.5));
  settings.seed = 2026;
  settings.restarts = 3;
  const auto result = minimize_energy(settings);
  CHECK(result.best_energy == doctest::Approx(1.0 / 9).epsilon(1e-4));
  CHECK(result.best_energy >= 1.0 / 9 - 1e-9);
  CHECK(classify_onb_up_to_signs(result.best_config).passed);
}

TEST_CASE("four points in the plane reach the flat minimum 1/4") {
  OptimizerSettings settings(2, 4, KernelSpec::pframe(2, 1.0));
  settings.seed = 11;
  settings.restarts = 2;
  const auto result = minimize_energy(settings);
  CHECK(result.best_energy == doctest::Approx(0.25).epsilon(1e-5));
  CHECK(result.best_energy >= 0.25 - 1e-9);
}

TEST_CASE("weight optimization stays at the proved minimum") {
  OptimizerSettings settings(2, 4, KernelSpec::pframe(2, 1.0));
  settings.seed = 12;
  settings.restarts = 2;
  settings.optimize_weights = true;
  const auto result = minimize_energy(settings);
  CHECK(result.best_energy >= 0.25 - 1e-9);
  CHECK(result.best_energy <= 0.251);
  CHECK(result.best_config.weights().sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("optimizer trace is monotone and well formed") {
  OptimizerSettings settings(3, 4, KernelSpec::pframe(3, 1.0));
  settings.seed = 13;
  const auto result = minimize_energy(settings);
  REQUIRE(!result.trace.empty());
  for (std::size_t k = 0; k < result.trace.size(); ++k) {
    CHECK(std::isfinite(result.trace[k].energy));
    CHECK(result.trace[k].iter == static_cast<long long>(k) + 1);
    if (k > 0) {
      CHECK(result.trace[k].energy <=
            result.trace[k - 1].energy + 1e-12);
      CHECK(result.trace[k].epsilon <= result.trace[k - 1].epsilon);
    }
  }
}

TEST_CASE("optimizer is deterministic and sign-symmetric") {
  OptimizerSettings settings(3, 3, KernelSpec::pframe(3, 1.5));
  settings.seed = 14;
  settings.restarts = 2;
  const auto a = minimize_energy(settings);
  const auto b = minimize_energy(settings);
  CHECK(a.best_energy == b.best_energy);
  CHECK((a.best_config.points() - b.best_config.points()).norm() == 0.0);
  CHECK(a.trace.size() == b.trace.size());

  // Flipping the sign of any point leaves every considered energy unchanged.
  Matrix flipped = a.best_config.points();
  flipped.col(1) *= -1.0;
  const double e_flip =
      three_point_energy(WeightedConfig(flipped, a.best_config.weights()),
                         settings.kernel)
          .value;
  CHECK(e_flip == doctest::Approx(a.best_energy).epsilon(1e-13));
}

TEST_CASE("optimizer validation") {
  OptimizerSettings bad_kernel(3, 3, KernelSpec::s_entry(3, 1, 1, 1));
  CHECK_THROWS_AS(minimize_energy(bad_kernel), ValidationError);

  OptimizerSettings mismatch(4, 3, KernelSpec::pframe(3, 1.0));
  CHECK_THROWS_AS(minimize_energy(mismatch), ValidationError);

  OptimizerSettings bad_schedule(3, 3, KernelSpec::pframe(3, 1.0));
  bad_schedule.smoothing_schedule.clear();
  CHECK_THROWS_AS(minimize_energy(bad_schedule), ValidationError);

  OptimizerSettings bad_step(3, 3, KernelSpec::pframe(3, 1.0));
  bad_step.step_rule.shrink = 1.5;
  CHECK_THROWS_AS(minimize_energy(bad_step), ValidationError);

  OptimizerSettings bad_restarts(3, 3, KernelSpec::pframe(3, 1.0));
  bad_restarts.restarts = 0;
  CHECK_THROWS_AS(minimize_energy(bad_restarts), ValidationError);
}

TEST_CASE("packing search") {
  SUBCASE("four points on the circle avoid positive triples") {
    const auto result = search_packing(2, 4, 3, 19, 400);
    CHECK(result.minimax_product <= 5e-3);
    CHECK(result.config.size() == 4);
    // The exact maximum reported matches a direct recomputation.
    const Matrix g = result.config.gram();
    double worst = -1.0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        for (int k = j + 1; k < 4; ++k)
          worst = std::max(worst, g(i, j) * g(i, k) * g(j, k));
    CHECK(result.minimax_product == doctest::Approx(worst).epsilon(1e-12).scale(1.0));
  }
  SUBCASE("five points on the circle cannot") {
    const auto result = search_packing(2, 5, 3, 19, 300);
    CHECK(result.minimax_product > 1e-2);
  }
  SUBCASE("deterministic") {
    const auto a = search_packing(2, 4, 2, 23, 150);
    const auto b = search_packing(2, 4, 2, 23, 150);
    CHECK(a.minimax_product == b.minimax_product);
    CHECK((a.config.points() - b.config.points()).norm() == 0.0);
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(search_packing(1, 4, 1, 0), ValidationError);
    CHECK_THROWS_AS(search_packing(2, 2, 1, 0), ValidationError);
    CHECK_THROWS_AS(search_packing(2, 4, 0, 0), ValidationError);
  }
}
