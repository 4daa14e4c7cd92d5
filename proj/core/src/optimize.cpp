#include "trisph/optimize.hpp"

#include "trisph/detail/kahan.hpp"
#include "trisph/energy.hpp"
#include "trisph/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

namespace trisph {

namespace {

Vector softmax(const Vector& theta) {
  const double m = theta.maxCoeff();
  Vector w = (theta.array() - m).exp();
  return w / w.sum();
}

// Smoothed three-point energy with optional gradients in positions and, for
// the softmax parametrization, in raw weights.
double smoothed_energy(const Matrix& x, const Vector& w, const KernelSpec& k,
                       double eps, Matrix* grad_x, Vector* grad_w) {
  const int n = static_cast<int>(x.cols());
  const Matrix g = x.transpose() * x;
  detail::Kahan total;
  if (grad_x) grad_x->setZero(x.rows(), n);
  if (grad_w) grad_w->setZero(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double wij = w[i] * w[j];
      for (int kk = 0; kk < n; ++kk) {
        const GramTriple triple{g(j, kk), g(i, kk), g(i, j)};
        if (grad_x || grad_w) {
          const KernelSpec::Derivs der = k.smoothed_derivs(triple, eps);
          const double www = wij * w[kk];
          total.add(www * der.value);
          if (grad_x) {
            grad_x->col(i) +=
                www * (der.dv * x.col(kk) + der.dt * x.col(j));
            grad_x->col(j) +=
                www * (der.du * x.col(kk) + der.dt * x.col(i));
            grad_x->col(kk) +=
                www * (der.du * x.col(j) + der.dv * x.col(i));
          }
          if (grad_w) {
            (*grad_w)[i] += w[j] * w[kk] * der.value;
            (*grad_w)[j] += w[i] * w[kk] * der.value;
            (*grad_w)[kk] += wij * der.value;
          }
        } else {
          total.add(wij * w[kk] * k.smoothed_value(triple, eps));
        }
      }
    }
  }
  return total.sum;
}

// Projects columns of grad onto the tangent spaces at the columns of x.
void project_tangent(const Matrix& x, Matrix& grad) {
  for (int i = 0; i < x.cols(); ++i) {
    grad.col(i) -= grad.col(i).dot(x.col(i)) * x.col(i);
  }
}

std::optional<Matrix> retract(const Matrix& x, const Matrix& dir,
                              double step) {
  Matrix y = x - step * dir;
  for (int i = 0; i < y.cols(); ++i) {
    const double norm = y.col(i).norm();
    if (norm < 1e-12) return std::nullopt;
    y.col(i) /= norm;
  }
  return y;
}

void check_step_rule(const StepRule& r) {
  if (!(r.initial_step > 0.0) || !(r.max_step >= r.initial_step)) {
    throw ValidationError("step sizes must satisfy 0 < initial <= max");
  }
  if (!(r.shrink > 0.0 && r.shrink < 1.0)) {
    throw ValidationError("step shrink factor must lie in (0, 1)");
  }
  if (!(r.grow >= 1.0)) throw ValidationError("step grow factor must be >= 1");
  if (!(r.armijo_c > 0.0 && r.armijo_c < 1.0)) {
    throw ValidationError("Armijo constant must lie in (0, 1)");
  }
  if (r.max_backtracks < 1) {
    throw ValidationError("line search needs at least one backtrack");
  }
}

void check_schedule(const std::vector<double>& schedule) {
  if (schedule.empty()) {
    throw ValidationError("smoothing schedule must not be empty");
  }
  for (double eps : schedule) {
    if (!std::isfinite(eps) || !(eps > 0.0)) {
      throw ValidationError("smoothing levels must be positive");
    }
  }
}

struct LevelOutcome {
  bool converged = false;
  long long accepted = 0;
};

LevelOutcome run_level(Matrix& x, Vector& theta, double eps,
                       const OptimizerSettings& s, double& step,
                       std::vector<TracePoint>& trace,
                       long long& global_iter) {
  const int n = s.n_points;
  const bool ow = s.optimize_weights;
  LevelOutcome out;
  Matrix grad_x;
  Vector grad_w;
  for (int iter = 0; iter < s.max_iters; ++iter) {
    Vector w = ow ? softmax(theta) : Vector::Constant(n, 1.0 / n);
    const double value =
        smoothed_energy(x, w, s.kernel, eps, &grad_x, ow ? &grad_w : nullptr);
    project_tangent(x, grad_x);
    Vector grad_theta;
    double gnorm2 = grad_x.squaredNorm();
    if (ow) {
      const double avg = w.dot(grad_w);
      grad_theta = w.cwiseProduct(grad_w - Vector::Constant(n, avg));
      gnorm2 += grad_theta.squaredNorm();
    }
    if (std::sqrt(gnorm2) <= s.convergence_tol) {
      out.converged = true;
      return out;
    }
    double alpha = step;
    bool accepted = false;
    for (int bt = 0; bt < s.step_rule.max_backtracks && !accepted; ++bt) {
      const auto cand = retract(x, grad_x, alpha);
      if (cand) {
        Vector theta_cand = theta;
        if (ow) theta_cand -= alpha * grad_theta;
        Vector w_cand = ow ? softmax(theta_cand) : w;
        const double cand_value =
            smoothed_energy(*cand, w_cand, s.kernel, eps, nullptr, nullptr);
        if (cand_value <= value - s.step_rule.armijo_c * alpha * gnorm2) {
          x = *cand;
          theta = theta_cand;
          step = std::min(alpha * s.step_rule.grow, s.step_rule.max_step);
          ++global_iter;
          ++out.accepted;
          trace.push_back({global_iter, eps, cand_value});
          accepted = true;
        }
      }
      if (!accepted) alpha *= s.step_rule.shrink;
    }
    if (!accepted) return out;  // no descent step available: stalled
  }
  return out;
}

bool has_quadratic_lower_bound(const KernelSpec& k) {
  return k.kind() == KernelSpec::Kind::TripleProduct ||
         (k.kind() == KernelSpec::Kind::PFrame && k.p() <= 1.0);
}

}  // namespace

std::vector<double> default_smoothing_schedule() {
  return {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8};
}

OptimizerResult minimize_energy(const OptimizerSettings& s) {
  if (s.dim < 2) throw ValidationError("dimension must be >= 2");
  if (s.n_points < 1) throw ValidationError("need at least one point");
  if (s.kernel.dim() != s.dim) {
    throw ValidationError("kernel dimension does not match optimizer dimension");
  }
  if (!s.kernel.smoothable()) {
    throw ValidationError("optimizer needs a smoothable kernel "
                          "(pframe, triple product or polynomial)");
  }
  if (s.restarts < 1) throw ValidationError("need at least one restart");
  if (s.max_iters < 1) throw ValidationError("need at least one iteration");
  if (!(s.convergence_tol >= 0.0)) {
    throw ValidationError("convergence tolerance must be >= 0");
  }
  check_schedule(s.smoothing_schedule);
  check_step_rule(s.step_rule);

  std::optional<OptimizerResult> best;
  std::vector<RestartSummary> summaries;
  for (int r = 0; r < s.restarts; ++r) {
    Rng rng(s.seed, static_cast<std::uint64_t>(r));
    Matrix x(s.dim, s.n_points);
    for (int i = 0; i < s.n_points; ++i) {
      x.col(i) = rng.sphere_point(s.dim).coords();
    }
    Vector theta = Vector::Zero(s.n_points);
    double step = s.step_rule.initial_step;
    std::vector<TracePoint> trace;
    long long global_iter = 0;
    bool converged = false;
    for (double eps : s.smoothing_schedule) {
      converged = run_level(x, theta, eps, s, step, trace, global_iter)
                      .converged;
    }
    Vector w = s.optimize_weights ? softmax(theta)
                                  : Vector::Constant(s.n_points,
                                                     1.0 / s.n_points);
    WeightedConfig config(x, w);
    const double energy = three_point_energy(config, s.kernel).value;
    summaries.push_back({r, energy, converged, global_iter});
    if (!best || energy < best->best_energy) {
      best = OptimizerResult{std::move(config), energy, converged, r,
                             std::move(trace), {}};
    }
  }
  best->restarts = std::move(summaries);

  if (has_quadratic_lower_bound(s.kernel)) {
    const double bound = 1.0 / (static_cast<double>(s.dim) * s.dim);
    if (best->best_energy < bound - 1e-9) {
      std::ostringstream msg;
      msg << "energy " << best->best_energy
          << " undercuts the proved lower bound " << bound << " for kernel "
          << s.kernel.describe();
      throw TheoremViolation(msg.str());
    }
  }
  return std::move(*best);
}

PackingSearchResult search_packing(int dim, int n_points, int restarts,
                                   std::uint64_t seed, int max_iters) {
  if (dim < 2) throw ValidationError("dimension must be >= 2");
  if (n_points < 3) throw ValidationError("packing search needs >= 3 points");
  if (restarts < 1) throw ValidationError("need at least one restart");
  if (max_iters < 1) throw ValidationError("need at least one iteration");

  std::vector<std::array<int, 3>> triples;
  for (int i = 0; i < n_points; ++i) {
    for (int j = i + 1; j < n_points; ++j) {
      for (int k = j + 1; k < n_points; ++k) triples.push_back({i, j, k});
    }
  }

  // Log-sum-exp relaxation of the max triple product at temperature tau.
  const auto lse = [&](const Matrix& x, double tau,
                       Matrix* grad) -> double {
    const Matrix g = x.transpose() * x;
    double peak = -std::numeric_limits<double>::infinity();
    std::vector<double> prods(triples.size());
    for (std::size_t t = 0; t < triples.size(); ++t) {
      const auto& [i, j, k] = triples[t];
      prods[t] = g(i, j) * g(i, k) * g(j, k);
      peak = std::max(peak, prods[t]);
    }
    double denom = 0.0;
    for (double p : prods) denom += std::exp((p - peak) / tau);
    if (grad) {
      grad->setZero(x.rows(), n_points);
      for (std::size_t t = 0; t < triples.size(); ++t) {
        const auto& [i, j, k] = triples[t];
        const double sigma = std::exp((prods[t] - peak) / tau) / denom;
        const double a = g(j, k), b = g(i, k), c = g(i, j);
        grad->col(i) += sigma * (a * c * x.col(k) + a * b * x.col(j));
        grad->col(j) += sigma * (b * c * x.col(k) + a * b * x.col(i));
        grad->col(k) += sigma * (b * c * x.col(j) + a * c * x.col(i));
      }
    }
    return peak + tau * std::log(denom);
  };
  const auto exact_max = [&](const Matrix& x) {
    const Matrix g = x.transpose() * x;
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& [i, j, k] : triples) {
      worst = std::max(worst, g(i, j) * g(i, k) * g(j, k));
    }
    return worst;
  };

  const std::vector<double> taus = {1e-1, 1e-2, 1e-3, 1e-4,
                                    1e-5, 1e-6, 1e-7};
  const StepRule rule;
  std::optional<Matrix> best_x;
  double best_value = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    Rng rng(seed, static_cast<std::uint64_t>(r));
    Matrix x(dim, n_points);
    for (int i = 0; i < n_points; ++i) {
      x.col(i) = rng.sphere_point(dim).coords();
    }
    double step = rule.initial_step;
    Matrix grad;
    for (double tau : taus) {
      for (int iter = 0; iter < max_iters; ++iter) {
        const double value = lse(x, tau, &grad);
        project_tangent(x, grad);
        const double gnorm2 = grad.squaredNorm();
        if (std::sqrt(gnorm2) <= 1e-12) break;
        double alpha = step;
        bool accepted = false;
        for (int bt = 0; bt < rule.max_backtracks && !accepted; ++bt) {
          const auto cand = retract(x, grad, alpha);
          if (cand && lse(*cand, tau, nullptr) <=
                          value - rule.armijo_c * alpha * gnorm2) {
            x = *cand;
            step = std::min(alpha * rule.grow, rule.max_step);
            accepted = true;
          }
          if (!accepted) alpha *= rule.shrink;
        }
        if (!accepted) break;
      }
    }
    const double value = exact_max(x);
    if (value < best_value) {
      best_value = value;
      best_x = x;
    }
  }
  WeightedConfig config = WeightedConfig::with_uniform_weights(*best_x);
  if (best_value <= 1e-12) {
    // Feeds the proved cardinality bound; throws if it were ever exceeded.
    check_packing(config, PackingMode::Nonpositive);
  }
  return PackingSearchResult{std::move(config), best_value};
}

CertReport gradient_check(const OptimizerSettings& s, const WeightedConfig& at,
                          double fd_step, double tol) {
  if (!s.kernel.smoothable()) {
    throw ValidationError("gradient check needs a smoothable kernel");
  }
  if (at.dim() != s.dim) {
    throw ValidationError("configuration dimension does not match settings");
  }
  if (!(fd_step > 0.0)) throw ValidationError("step size must be > 0");
  check_schedule(s.smoothing_schedule);
  const double eps = s.smoothing_schedule.front();

  const Matrix& x = at.points();
  const Vector& w = at.weights();
  Matrix grad;
  smoothed_energy(x, w, s.kernel, eps, &grad, nullptr);
  project_tangent(x, grad);

  Rng rng(s.seed);
  double worst = 0.0;
  std::string witness = "all directions agree";
  for (int rep = 0; rep < 5; ++rep) {
    Matrix dir(at.dim(), at.size());
    do {
      for (int i = 0; i < at.size(); ++i) dir.col(i) = rng.gaussian(at.dim());
      project_tangent(x, dir);
    } while (dir.norm() < 1e-12);
    dir /= dir.norm();
    const double analytic = (grad.array() * dir.array()).sum();
    const auto plus = retract(x, dir, -fd_step);
    const auto minus = retract(x, dir, fd_step);
    if (!plus || !minus) {
      throw ValidationError("finite-difference step left the sphere");
    }
    const double numeric =
        (smoothed_energy(*plus, w, s.kernel, eps, nullptr, nullptr) -
         smoothed_energy(*minus, w, s.kernel, eps, nullptr, nullptr)) /
        (2.0 * fd_step);
    const double rel = std::abs(analytic - numeric) /
                       std::max({1.0, std::abs(analytic), std::abs(numeric)});
    if (rel > worst) {
      worst = rel;
      std::ostringstream out;
      out << "direction " << rep << ": analytic " << analytic << ", numeric "
          << numeric;
      witness = out.str();
    }
  }
  return CertReport{"gradient-check(" + s.kernel.describe() + ")",
                    worst <= tol, worst, tol, witness};
}

}  // namespace trisph
