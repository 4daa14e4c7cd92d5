#include "trisph/energy.hpp"

#include "trisph/detail/kahan.hpp"
#include "trisph/gegenbauer.hpp"
#include "trisph/geometry.hpp"
#include "trisph/parallel.hpp"
#include "trisph/rng.hpp"

#include <algorithm>
#include <cmath>

namespace trisph {

MomentMatrix::MomentMatrix(int dim_in, Matrix entries_in)
    : dim(dim_in), entries(std::move(entries_in)) {
  if (dim < 2) throw ValidationError("moment matrix dimension must be >= 2");
  if (entries.rows() != dim || entries.cols() != dim) {
    throw ValidationError("moment matrix shape does not match dimension");
  }
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      if (!std::isfinite(entries(r, c))) {
        throw ValidationError("moment matrix entries must be finite");
      }
      if (std::abs(entries(r, c) - entries(c, r)) > 1e-12) {
        throw ValidationError("moment matrix must be symmetric");
      }
    }
  }
  if (std::abs(entries.trace() - 1.0) > 1e-12) {
    throw ValidationError("moment matrix must have trace 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(entries, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw ValidationError("moment matrix must be positive semidefinite");
  }
}

MomentMatrix moment_matrix(const WeightedConfig& config) {
  Matrix a = Matrix::Zero(config.dim(), config.dim());
  for (int i = 0; i < config.size(); ++i) {
    const Vector x = config.point(i);
    a.noalias() += config.weight(i) * (x * x.transpose());
  }
  return MomentMatrix(config.dim(), std::move(a));
}

double trace_cubed(const MomentMatrix& m) {
  return (m.entries * m.entries * m.entries).trace();
}

EnergyReport three_point_energy(const WeightedConfig& config,
                                const KernelSpec& kernel,
                                bool with_breakdown) {
  if (kernel.dim() != config.dim()) {
    throw ValidationError("kernel dimension does not match configuration");
  }
  const int n = config.size();
  const Matrix g = config.gram();
  const Vector& w = config.weights();

  std::vector<double> part(n), part_eq(n), part_two(n), part_dist(n);
  parallel_for(n, [&](int i) {
    detail::Kahan acc, acc_eq, acc_two, acc_dist;
    for (int j = 0; j < n; ++j) {
      const double wj = w[j];
      for (int k = 0; k < n; ++k) {
        const double val =
            wj * w[k] * kernel.eval(GramTriple{g(j, k), g(i, k), g(i, j)});
        acc.add(val);
        if (with_breakdown) {
          if (i == j && j == k) {
            acc_eq.add(val);
          } else if (i == j || j == k || i == k) {
            acc_two.add(val);
          } else {
            acc_dist.add(val);
          }
        }
      }
    }
    part[i] = acc.sum;
    part_eq[i] = acc_eq.sum;
    part_two[i] = acc_two.sum;
    part_dist[i] = acc_dist.sum;
  });

  detail::Kahan total;
  for (int i = 0; i < n; ++i) total.add(w[i] * part[i]);
  EnergyReport report{total.sum, kernel.describe(), n, std::nullopt};
  if (with_breakdown) {
    detail::Kahan eq, two, dist;
    for (int i = 0; i < n; ++i) {
      eq.add(w[i] * part_eq[i]);
      two.add(w[i] * part_two[i]);
      dist.add(w[i] * part_dist[i]);
    }
    report.breakdown = EnergyBreakdown{eq.sum, two.sum, dist.sum};
  }
  return report;
}

double two_point_frame_energy(const WeightedConfig& config, double p) {
  if (!(p > 0.0)) throw ValidationError("frame exponent must be > 0");
  const int n = config.size();
  const Matrix g = config.gram();
  const Vector& w = config.weights();
  detail::Kahan total;
  for (int i = 0; i < n; ++i) {
    detail::Kahan row;
    for (int j = 0; j < n; ++j) {
      const double s = std::abs(g(i, j));
      row.add(w[j] * (s == 0.0 ? 0.0 : std::pow(s, p)));
    }
    total.add(w[i] * row.sum);
  }
  return total.sum;
}

Matrix s_moment_matrix(const WeightedConfig& config, int m, int size) {
  if (size < 1 || size > 6) {
    throw ValidationError("s-moment block size must be between 1 and 6");
  }
  if (m < 0) throw ValidationError("kernel level must be >= 0");
  const int d = config.dim();
  if (m >= 2 && d < 3) {
    throw ValidationError("kernel levels >= 2 need dimension >= 3");
  }
  const int n = config.size();
  const int h = d + 2 * m;
  const Matrix g = config.gram();
  const Vector& w = config.weights();

  constexpr int kPerms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  std::vector<detail::Kahan> acc(size * size);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const double wab = w[a] * w[b];
      if (wab == 0.0) continue;
      for (int c = 0; c < n; ++c) {
        const double w3 = wab * w[c];
        if (w3 == 0.0) continue;
        const double coords[3] = {g(b, c), g(a, c), g(a, b)};
        for (const auto& perm : kPerms) {
          const double pu = coords[perm[0]];
          const double pv = coords[perm[1]];
          const double pt = coords[perm[2]];
          const auto fu = gegenbauer_all(size - 1, h, pu);
          const auto fv = gegenbauer_all(size - 1, h, pv);
          const double q = q_kernel(m, d, GramTriple{pu, pv, pt});
          const double scale = w3 / 6.0 * q;
          for (int i = 0; i < size; ++i) {
            for (int j = i; j < size; ++j) {
              acc[i * size + j].add(scale * fu[i] * fv[j]);
            }
          }
        }
      }
    }
  }
  Matrix out(size, size);
  for (int i = 0; i < size; ++i) {
    for (int j = i; j < size; ++j) {
      out(i, j) = acc[i * size + j].sum;
      out(j, i) = out(i, j);
    }
  }
  return out;
}

McEstimate mc_energy(int dim, const KernelSpec& kernel, long long n_samples,
                     std::uint64_t seed) {
  if (dim < 2) throw ValidationError("dimension must be >= 2");
  if (kernel.dim() != dim) {
    throw ValidationError("kernel dimension does not match sampling dimension");
  }
  if (n_samples < 1) throw ValidationError("sample count must be >= 1");
  Rng rng(seed);
  detail::Kahan sum, sumsq;
  for (long long s = 0; s < n_samples; ++s) {
    const UnitVector x = rng.sphere_point(dim);
    const UnitVector y = rng.sphere_point(dim);
    const UnitVector z = rng.sphere_point(dim);
    const double val = kernel.eval(gram_triple(x, y, z));
    sum.add(val);
    sumsq.add(val * val);
  }
  const double nn = static_cast<double>(n_samples);
  const double mean = sum.sum / nn;
  double variance = 0.0;
  if (n_samples > 1) {
    variance = std::max(0.0, (sumsq.sum - nn * mean * mean) / (nn - 1.0));
  }
  return McEstimate{mean, std::sqrt(variance / nn), n_samples, seed};
}

}  // namespace trisph
