#include "trisph/certify.hpp"

#include "trisph/detail/kahan.hpp"
#include "trisph/energy.hpp"
#include "trisph/kernels.hpp"
#include "trisph/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace trisph {

namespace {

CertReport make_report(std::string name, double residual, double tol,
                       std::string witness) {
  return CertReport{std::move(name), residual <= tol, residual, tol,
                    std::move(witness)};
}

std::string triple_string(double u, double v, double t) {
  std::ostringstream out;
  out << "(u,v,t)=(" << u << ", " << v << ", " << t << ")";
  return out.str();
}

Matrix merged_gram(const MergedSupport& ms) {
  Matrix g = ms.points.transpose() * ms.points;
  for (int i = 0; i < g.rows(); ++i) {
    for (int j = 0; j < g.cols(); ++j) {
      g(i, j) = std::clamp(g(i, j), -1.0, 1.0);
    }
  }
  return g;
}

}  // namespace

double min_eigenvalue(const Matrix& symmetric) {
  if (symmetric.rows() != symmetric.cols()) {
    throw ValidationError("eigenvalue computation needs a square matrix");
  }
  if ((symmetric - symmetric.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw ValidationError("eigenvalue computation needs a symmetric matrix");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetric, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

MergedSupport merge_support(const WeightedConfig& config, double tol) {
  MergedSupport ms;
  std::vector<Vector> reps;
  std::vector<double> weights;
  std::vector<int> rep_idx;
  for (int idx : config.support()) {
    const Vector x = config.point(idx);
    int found = -1;
    for (std::size_t r = 0; r < reps.size(); ++r) {
      if ((reps[r] - x).norm() <= tol) {
        found = static_cast<int>(r);
        break;
      }
    }
    if (found >= 0) {
      weights[found] += config.weight(idx);
    } else {
      reps.push_back(x);
      weights.push_back(config.weight(idx));
      rep_idx.push_back(idx);
    }
  }
  ms.points.resize(config.dim(), static_cast<int>(reps.size()));
  ms.weights.resize(static_cast<int>(reps.size()));
  for (std::size_t r = 0; r < reps.size(); ++r) {
    ms.points.col(static_cast<int>(r)) = reps[r];
    ms.weights[static_cast<int>(r)] = weights[r];
  }
  ms.representative = std::move(rep_idx);
  return ms;
}

CertReport check_identity_rosenfeld(int d, int n_samples, std::uint64_t seed,
                                    double tol) {
  if (d < 2) throw ValidationError("dimension must be >= 2");
  if (n_samples < 1) throw ValidationError("sample count must be >= 1");
  Rng rng(seed);
  const double dd = static_cast<double>(d);
  const double scale022 = 6.0 * (dd - 1.0) * (dd - 1.0) / (dd * dd);
  double worst = 0.0;
  std::string witness;
  for (int s = 0; s < n_samples; ++s) {
    const double u = rng.uniform(-1.0, 1.0);
    const double v = rng.uniform(-1.0, 1.0);
    const double t = rng.uniform(-1.0, 1.0);
    const GramTriple g{u, v, t};
    const double sq = u * u * v * v + u * u * t * t + v * v * t * t;
    const double lhs1 = scale022 * s_kernel(0, 2, 2, d, g);
    const double rhs1 = 2.0 * sq - (4.0 / dd) * (u * u + v * v + t * t) +
                        6.0 / (dd * dd);
    const double lhs2 = 6.0 * s_kernel(1, 1, 1, d, g);
    const double rhs2 = 6.0 * u * v * t - 2.0 * sq;
    const double err = std::max(std::abs(lhs1 - rhs1), std::abs(lhs2 - rhs2));
    if (err >= worst) {
      worst = err;
      witness = triple_string(u, v, t);
    }
  }
  return make_report("identity-rosenfeld(d=" + std::to_string(d) + ")", worst,
                     tol, witness);
}

CertReport check_identity_uvt(int d, int n_samples, std::uint64_t seed,
                              double tol) {
  if (d < 2) throw ValidationError("dimension must be >= 2");
  if (n_samples < 1) throw ValidationError("sample count must be >= 1");
  Rng rng(seed);
  const double dd = static_cast<double>(d);
  const double c022 = (dd - 1.0) * (dd - 1.0) / (dd * dd);
  double worst = 0.0;
  std::string witness;
  for (int s = 0; s < n_samples; ++s) {
    const double u = rng.uniform(-1.0, 1.0);
    const double v = rng.uniform(-1.0, 1.0);
    const double t = rng.uniform(-1.0, 1.0);
    const GramTriple g{u, v, t};
    const double rhs = c022 * s_kernel(0, 2, 2, d, g) +
                       s_kernel(1, 1, 1, d, g) +
                       (2.0 / (3.0 * dd)) * (u * u + v * v + t * t) -
                       1.0 / (dd * dd);
    const double err = std::abs(u * v * t - rhs);
    if (err >= worst) {
      worst = err;
      witness = triple_string(u, v, t);
    }
  }
  return make_report("identity-uvt(d=" + std::to_string(d) + ")", worst, tol,
                     witness);
}

CertReport psd_check(const WeightedConfig& config, int m_max, int size,
                     double tol) {
  if (m_max < 0) throw ValidationError("m_max must be >= 0");
  double min_eig = std::numeric_limits<double>::infinity();
  int worst_m = 0;
  for (int m = 0; m <= m_max; ++m) {
    const Matrix block = s_moment_matrix(config, m, size);
    const double e = min_eigenvalue(block);
    if (e < min_eig) {
      min_eig = e;
      worst_m = m;
    }
  }
  std::ostringstream witness;
  witness << "min eigenvalue " << min_eig << " at level m=" << worst_m;
  return make_report("psd(m_max=" + std::to_string(m_max) +
                         ", size=" + std::to_string(size) + ")",
                     std::max(0.0, -min_eig), tol, witness.str());
}

CertReport check_isotropic(const WeightedConfig& config, double tol) {
  const Matrix a = moment_matrix(config).entries;
  const int d = config.dim();
  const Matrix r = a - Matrix::Identity(d, d) / static_cast<double>(d);
  std::ostringstream witness;
  witness << "||A - I/d||_F = " << r.norm();
  return make_report("isotropic", r.norm(), tol, witness.str());
}

CertReport check_balanced(const WeightedConfig& config, double tol) {
  const Vector b = config.points() * config.weights();
  std::ostringstream witness;
  witness << "||sum w_i x_i|| = " << b.norm();
  return make_report("balanced", b.norm(), tol, witness.str());
}

CertReport check_tight_frame(const WeightedConfig& config, double tol) {
  const int n = config.size();
  const Vector& w = config.weights();
  bool uniform = true;
  for (int i = 0; i < n; ++i) {
    if (std::abs(w[i] - 1.0 / n) > 1e-12) {
      uniform = false;
      break;
    }
  }
  const int d = config.dim();
  double residual = 0.0;
  std::ostringstream witness;
  if (uniform) {
    const Matrix g = config.gram();
    detail::Kahan acc;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) acc.add(g(i, j) * g(i, j));
    }
    const double target = static_cast<double>(n) * n / d;
    residual = std::abs(acc.sum - target);
    witness << "sum of squared inner products " << acc.sum << ", target "
            << target;
  } else {
    const double e = two_point_frame_energy(config, 2.0);
    residual = std::abs(e - 1.0 / d);
    witness << "squared-inner-product energy " << e << ", target " << 1.0 / d;
  }
  return make_report("tight-frame", residual, tol, witness.str());
}

PackingReport check_packing(const WeightedConfig& config, PackingMode mode,
                            double tol, double epsilon) {
  if (mode == PackingMode::StrictlyNegative && !(epsilon > 0.0)) {
    throw ValidationError("strictly-negative packing mode needs epsilon > 0");
  }
  const int d = config.dim();
  PackingReport report;
  report.mode = mode;
  report.epsilon = epsilon;
  if (mode == PackingMode::Nonpositive) {
    report.bound = 2LL * d;
  } else {
    const double lemma = std::floor(1.0 + 1.0 / epsilon + 1e-12);
    report.bound = std::min<long long>(
        d + 1, lemma > 1e18 ? static_cast<long long>(1e18)
                            : static_cast<long long>(lemma));
  }

  const MergedSupport ms = merge_support(config);
  report.n_points = ms.size();
  if (ms.size() < 3) {
    report.vacuous = true;
    report.passed = true;
    return report;
  }
  const Matrix g = merged_gram(ms);
  double worst = -std::numeric_limits<double>::infinity();
  for (int a = 0; a + 2 < ms.size(); ++a) {
    for (int b = a + 1; b + 1 < ms.size(); ++b) {
      for (int c = b + 1; c < ms.size(); ++c) {
        const double prod = g(a, b) * g(a, c) * g(b, c);
        if (prod > worst) {
          worst = prod;
          report.worst_triple = {ms.representative[a], ms.representative[b],
                                 ms.representative[c]};
        }
      }
    }
  }
  report.worst_product = worst;
  report.passed = (mode == PackingMode::Nonpositive) ? worst <= tol
                                                     : worst <= -epsilon + tol;
  if (report.passed && report.n_points > report.bound) {
    std::ostringstream msg;
    msg << "three-point packing bound violated: " << report.n_points
        << " distinct points in dimension " << d
        << " satisfy the triple-product condition, exceeding the proved bound "
        << report.bound;
    throw TheoremViolation(msg.str());
  }
  return report;
}

CertReport check_nearly_orthogonal(const WeightedConfig& config, double tol) {
  const MergedSupport ms = merge_support(config);
  if (ms.size() < 3) {
    return make_report("nearly-orthogonal", 0.0, tol,
                       "vacuous: fewer than three distinct support points");
  }
  const Matrix g = merged_gram(ms);
  double residual = 0.0;
  std::array<int, 3> worst = {-1, -1, -1};
  for (int a = 0; a + 2 < ms.size(); ++a) {
    for (int b = a + 1; b + 1 < ms.size(); ++b) {
      for (int c = b + 1; c < ms.size(); ++c) {
        const double best_pair = std::min(
            {std::abs(g(a, b)), std::abs(g(a, c)), std::abs(g(b, c))});
        if (best_pair > residual) {
          residual = best_pair;
          worst = {ms.representative[a], ms.representative[b],
                   ms.representative[c]};
        }
      }
    }
  }
  std::ostringstream witness;
  witness << "triple (" << worst[0] << ", " << worst[1] << ", " << worst[2]
          << ") has no pair with |inner product| <= " << tol;
  return make_report("nearly-orthogonal", residual, tol,
                     residual <= tol ? "all triples contain an "
                                       "almost-orthogonal pair"
                                     : witness.str());
}

CertReport check_nonneg_triples(const WeightedConfig& config, double tol) {
  const auto sup = config.support();
  const Matrix g = config.gram();
  double min_prod = 1.0;
  std::array<int, 3> worst = {-1, -1, -1};
  for (std::size_t a = 0; a < sup.size(); ++a) {
    for (std::size_t b = a; b < sup.size(); ++b) {
      for (std::size_t c = b; c < sup.size(); ++c) {
        const int i = sup[a], j = sup[b], k = sup[c];
        const double prod = g(i, j) * g(i, k) * g(j, k);
        if (prod < min_prod) {
          min_prod = prod;
          worst = {i, j, k};
        }
      }
    }
  }
  std::ostringstream witness;
  witness << "minimum triple product " << min_prod << " at (" << worst[0]
          << ", " << worst[1] << ", " << worst[2] << ")";
  return make_report("nonneg-triples", std::max(0.0, -min_prod), tol,
                     witness.str());
}

CertReport check_orthogonal_counterpart(const WeightedConfig& config,
                                        double tol) {
  const MergedSupport ms = merge_support(config);
  const Matrix g = merged_gram(ms);
  double residual = 0.0;
  int worst = ms.representative.empty() ? -1 : ms.representative[0];
  for (int a = 0; a < ms.size(); ++a) {
    double best = 1.0;
    for (int b = 0; b < ms.size(); ++b) {
      if (b != a) best = std::min(best, std::abs(g(a, b)));
    }
    if (best > residual) {
      residual = best;
      worst = ms.representative[a];
    }
  }
  std::ostringstream witness;
  witness << "point " << worst
          << " has minimum |inner product| = " << residual
          << " against the other support points";
  return make_report("orthogonal-counterpart", residual, tol, witness.str());
}

CertReport check_simplex_rigidity(const WeightedConfig& config, double tol) {
  const CertReport bal = check_balanced(config, tol);
  const CertReport iso = check_isotropic(config, tol);
  if (!bal.passed || !iso.passed) {
    return CertReport{
        "simplex-rigidity", false, std::max(bal.residual, iso.residual), tol,
        "precondition failed: configuration must be balanced and isotropic"};
  }
  const int d = config.dim();
  const int n = config.size();
  const Matrix g = config.gram();
  const Vector& w = config.weights();
  detail::Kahan acc;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      acc.add(w[i] * w[j] * (g(i, j) - 1.0) * (g(i, j) + 1.0 / d));
    }
  }
  double residual = std::abs(acc.sum);
  std::ostringstream witness;
  witness << "sum w_i w_j (t-1)(t+1/d) = " << acc.sum;

  const MergedSupport ms = merge_support(config);
  const Matrix mg = merged_gram(ms);
  double min_inner = 1.0;
  for (int a = 0; a + 1 < ms.size(); ++a) {
    for (int b = a + 1; b < ms.size(); ++b) {
      min_inner = std::min(min_inner, mg(a, b));
    }
  }
  if (ms.size() >= 2 && min_inner >= -1.0 / d - tol) {
    if (ms.size() != d + 1) {
      residual = std::max(residual, 1.0);
      witness << "; expected " << d + 1 << " distinct points, found "
              << ms.size();
    } else {
      double dev = 0.0;
      for (int a = 0; a + 1 < ms.size(); ++a) {
        for (int b = a + 1; b < ms.size(); ++b) {
          dev = std::max(dev, std::abs(mg(a, b) + 1.0 / d));
        }
      }
      for (int a = 0; a < ms.size(); ++a) {
        dev = std::max(dev, std::abs(ms.weights[a] - 1.0 / (d + 1)));
      }
      residual = std::max(residual, dev);
      witness << "; simplex structure deviation " << dev;
    }
  } else {
    witness << "; structure clause not applicable (obtuse pair below -1/d)";
  }
  return make_report("simplex-rigidity", residual, tol, witness.str());
}

CertReport check_onb_structure(const WeightedConfig& config, double tol) {
  const int d = config.dim();
  const CertReport iso = check_isotropic(config, tol);
  double residual = iso.residual;
  std::ostringstream witness;
  witness << "isotropy residual " << iso.residual;

  const MergedSupport ms = merge_support(config);
  const Matrix g = merged_gram(ms);
  double min_inner = 1.0;
  for (int a = 0; a + 1 < ms.size(); ++a) {
    for (int b = a + 1; b < ms.size(); ++b) {
      min_inner = std::min(min_inner, g(a, b));
    }
  }
  residual = std::max(residual, std::max(0.0, -min_inner));
  if (min_inner < -tol) {
    witness << "; obtuse pair with inner product " << min_inner;
  }
  if (ms.size() != d) {
    residual = std::max(residual, 1.0);
    witness << "; expected " << d << " distinct points, found " << ms.size();
  } else {
    double dev = 0.0;
    for (int a = 0; a < d; ++a) {
      for (int b = a + 1; b < d; ++b) dev = std::max(dev, std::abs(g(a, b)));
      dev = std::max(dev, std::abs(ms.weights[a] - 1.0 / d));
    }
    residual = std::max(residual, dev);
    witness << "; basis structure deviation " << dev;
  }
  return make_report("onb-structure", residual, tol, witness.str());
}

CertReport classify_onb_up_to_signs(const WeightedConfig& config, double tol) {
  const int d = config.dim();
  struct Line {
    Vector rep;
    double weight;
  };
  std::vector<Line> lines;
  double residual = 0.0;
  for (int idx : config.support()) {
    const Vector x = config.point(idx);
    int best = -1;
    double best_inner = -1.0;
    for (std::size_t l = 0; l < lines.size(); ++l) {
      const double inner = std::min(1.0, std::abs(x.dot(lines[l].rep)));
      if (inner > best_inner) {
        best_inner = inner;
        best = static_cast<int>(l);
      }
    }
    if (best >= 0 && best_inner >= 0.5) {
      lines[best].weight += config.weight(idx);
      residual = std::max(residual, 1.0 - best_inner);
    } else {
      lines.push_back({x, config.weight(idx)});
    }
  }
  for (std::size_t a = 0; a + 1 < lines.size(); ++a) {
    for (std::size_t b = a + 1; b < lines.size(); ++b) {
      residual =
          std::max(residual, std::abs(lines[a].rep.dot(lines[b].rep)));
    }
  }
  std::ostringstream witness;
  witness << lines.size() << " lines";
  if (static_cast<int>(lines.size()) != d) {
    residual = std::max(residual, 1.0);
    witness << " (expected " << d << ")";
  } else {
    double dev = 0.0;
    for (const auto& line : lines) {
      dev = std::max(dev, std::abs(line.weight - 1.0 / d));
    }
    residual = std::max(residual, dev);
    witness << ", max weight deviation from 1/d among lines " << dev;
  }
  return make_report("onb-up-to-signs", residual, tol, witness.str());
}

}  // namespace trisph
