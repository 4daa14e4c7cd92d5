#include "trisph/kernels.hpp"

#include "trisph/gegenbauer.hpp"
#include "trisph/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace trisph {

namespace {

double checked_coord(double x, const char* name) {
  if (!std::isfinite(x) || std::abs(x) > 1.0 + 1e-12) {
    throw ValidationError(std::string("gram coordinate ") + name +
                          " must lie in [-1, 1]");
  }
  return std::clamp(x, -1.0, 1.0);
}

GramTriple checked_triple(const GramTriple& g) {
  return GramTriple{checked_coord(g.u, "u"), checked_coord(g.v, "v"),
                    checked_coord(g.t, "t")};
}

void check_q_domain(int m, int d) {
  if (m < 0) throw ValidationError("kernel level must be >= 0");
  if (d < 2) throw ValidationError("kernel dimension must be >= 2");
  if (m >= 2 && d < 3) {
    throw ValidationError("kernel levels >= 2 need dimension >= 3");
  }
}

constexpr int kPerms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                              {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};

double ipow(double x, int n) {
  double r = 1.0;
  for (int k = 0; k < n; ++k) r *= x;
  return r;
}

}  // namespace

double q_kernel(int m, int d, const GramTriple& g0) {
  check_q_domain(m, d);
  const GramTriple g = checked_triple(g0);
  if (m == 0) return 1.0;
  const double s = g.t - g.u * g.v;
  if (m == 1) return s;
  const double q = (1.0 - g.u * g.u) * (1.0 - g.v * g.v);
  double prev = 1.0;
  double cur = s;
  for (int k = 2; k <= m; ++k) {
    const double next =
        ((2.0 * k + d - 5.0) * s * cur - (k - 1.0) * q * prev) / (k + d - 4.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double y_kernel(int m, int i, int j, int d, const GramTriple& g0) {
  check_q_domain(m, d);
  if (i < 0 || j < 0) throw ValidationError("kernel degrees must be >= 0");
  const GramTriple g = checked_triple(g0);
  return gegenbauer_eval(i, d + 2 * m, g.u) *
         gegenbauer_eval(j, d + 2 * m, g.v) * q_kernel(m, d, g);
}

double s_kernel(int m, int i, int j, int d, const GramTriple& g0) {
  check_q_domain(m, d);
  if (i < 0 || j < 0) throw ValidationError("kernel degrees must be >= 0");
  const GramTriple g = checked_triple(g0);
  const double c[3] = {g.u, g.v, g.t};
  double sum = 0.0;
  for (const auto& perm : kPerms) {
    sum += y_kernel(m, i, j, d,
                    GramTriple{c[perm[0]], c[perm[1]], c[perm[2]]});
  }
  return sum / 6.0;
}

double s_kernel(int m, int i, int j, int d, const UnitVector& x,
                const UnitVector& y, const UnitVector& z) {
  if (x.dim() != d) throw ValidationError("point dimension does not match kernel");
  return s_kernel(m, i, j, d, gram_triple(x, y, z));
}

double pframe_potential(double p, const GramTriple& g0) {
  if (!(p > 0.0)) throw ValidationError("pframe exponent must be > 0");
  const GramTriple g = checked_triple(g0);
  const double s = std::abs(g.u * g.v * g.t);
  if (s == 0.0) return 0.0;
  return std::pow(s, p);
}

PsdBlock::PsdBlock(int level_in, Matrix entries_in)
    : level(level_in), entries(std::move(entries_in)) {
  if (level < 0) throw ValidationError("block level must be >= 0");
  if (entries.rows() < 1 || entries.rows() != entries.cols()) {
    throw ValidationError("block matrix must be square and nonempty");
  }
  for (int r = 0; r < entries.rows(); ++r) {
    for (int c = 0; c < entries.cols(); ++c) {
      if (!std::isfinite(entries(r, c))) {
        throw ValidationError("block matrix entries must be finite");
      }
      if (std::abs(entries(r, c) - entries(c, r)) > 1e-12) {
        throw ValidationError("block matrix must be symmetric");
      }
    }
  }
  if (level == 0) {
    for (int k = 0; k < entries.rows(); ++k) {
      if (entries(0, k) != 0.0 || entries(k, 0) != 0.0) {
        throw ValidationError(
            "level-0 block must have zero first row and column");
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(entries,
                                           Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw ValidationError("block matrix must be positive semidefinite");
  }
}

KernelSpec KernelSpec::pframe(int dim, double p) {
  if (dim < 2) throw ValidationError("kernel dimension must be >= 2");
  if (!(p > 0.0)) throw ValidationError("pframe exponent must be > 0");
  KernelSpec k(Kind::PFrame, dim);
  k.p_ = p;
  return k;
}

KernelSpec KernelSpec::triple_product(int dim) {
  if (dim < 2) throw ValidationError("kernel dimension must be >= 2");
  return KernelSpec(Kind::TripleProduct, dim);
}

KernelSpec KernelSpec::s_entry(int dim, int m, int i, int j) {
  check_q_domain(m, dim);
  if (i < 0 || j < 0) throw ValidationError("kernel degrees must be >= 0");
  KernelSpec k(Kind::SEntry, dim);
  k.m_ = m;
  k.i_ = i;
  k.j_ = j;
  return k;
}

KernelSpec KernelSpec::poly_uvt(
    int dim, const std::map<std::array<int, 3>, double>& coeffs) {
  if (dim < 2) throw ValidationError("kernel dimension must be >= 2");
  std::map<std::array<int, 3>, double> sym;
  for (const auto& [expo, coef] : coeffs) {
    if (expo[0] < 0 || expo[1] < 0 || expo[2] < 0) {
      throw ValidationError("monomial exponents must be >= 0");
    }
    if (!std::isfinite(coef)) {
      throw ValidationError("monomial coefficients must be finite");
    }
    for (const auto& perm : kPerms) {
      sym[{expo[perm[0]], expo[perm[1]], expo[perm[2]]}] += coef / 6.0;
    }
  }
  KernelSpec k(Kind::PolyUVT, dim);
  for (const auto& [expo, coef] : sym) {
    if (coef != 0.0) k.monomials_.push_back({expo[0], expo[1], expo[2], coef});
  }
  return k;
}

KernelSpec KernelSpec::cone(int dim, std::vector<PsdBlock> blocks) {
  if (dim < 2) throw ValidationError("kernel dimension must be >= 2");
  for (const auto& blk : blocks) check_q_domain(blk.level, dim);
  KernelSpec k(Kind::Cone, dim);
  k.blocks_ = std::move(blocks);
  return k;
}

double KernelSpec::eval(const GramTriple& g0) const {
  const GramTriple g = checked_triple(g0);
  switch (kind_) {
    case Kind::PFrame:
      return pframe_potential(p_, g);
    case Kind::TripleProduct:
      return g.u * g.v * g.t;
    case Kind::SEntry:
      return s_kernel(m_, i_, j_, dim_, g);
    case Kind::PolyUVT: {
      double sum = 0.0;
      for (const auto& mono : monomials_) {
        sum += mono.coef * ipow(g.u, mono.a) * ipow(g.v, mono.b) *
               ipow(g.t, mono.c);
      }
      return sum;
    }
    case Kind::Cone: {
      const double c[3] = {g.u, g.v, g.t};
      double total = 0.0;
      for (const auto& perm : kPerms) {
        const double pu = c[perm[0]], pv = c[perm[1]], pt = c[perm[2]];
        for (const auto& blk : blocks_) {
          const int h = dim_ + 2 * blk.level;
          const auto fu = gegenbauer_all(blk.size() - 1, h, pu);
          const auto fv = gegenbauer_all(blk.size() - 1, h, pv);
          const double q = q_kernel(blk.level, dim_, GramTriple{pu, pv, pt});
          double bilinear = 0.0;
          for (int i = 0; i < blk.size(); ++i) {
            for (int j = 0; j < blk.size(); ++j) {
              bilinear += blk.entries(i, j) * fu[i] * fv[j];
            }
          }
          total += q * bilinear;
        }
      }
      return total / 6.0;
    }
  }
  throw Error("unreachable kernel kind");
}

double KernelSpec::eval(const UnitVector& x, const UnitVector& y,
                        const UnitVector& z) const {
  if (x.dim() != dim_) {
    throw ValidationError("point dimension does not match kernel");
  }
  return eval(gram_triple(x, y, z));
}

bool KernelSpec::smoothable() const {
  return kind_ == Kind::PFrame || kind_ == Kind::TripleProduct ||
         kind_ == Kind::PolyUVT;
}

double KernelSpec::smoothed_value(const GramTriple& g, double eps) const {
  if (kind_ == Kind::PFrame) {
    const double s = g.u * g.v * g.t;
    return std::pow(s * s + eps * eps, p_ / 2.0);
  }
  return eval(g);
}

KernelSpec::Derivs KernelSpec::smoothed_derivs(const GramTriple& g,
                                               double eps) const {
  Derivs d;
  switch (kind_) {
    case Kind::PFrame: {
      const double s = g.u * g.v * g.t;
      const double base = s * s + eps * eps;
      if (base == 0.0) return d;
      d.value = std::pow(base, p_ / 2.0);
      const double dfds = p_ * s * std::pow(base, p_ / 2.0 - 1.0);
      d.du = dfds * g.v * g.t;
      d.dv = dfds * g.u * g.t;
      d.dt = dfds * g.u * g.v;
      return d;
    }
    case Kind::TripleProduct:
      d.value = g.u * g.v * g.t;
      d.du = g.v * g.t;
      d.dv = g.u * g.t;
      d.dt = g.u * g.v;
      return d;
    case Kind::PolyUVT:
      for (const auto& mono : monomials_) {
        const double pu = ipow(g.u, mono.a);
        const double pv = ipow(g.v, mono.b);
        const double pt = ipow(g.t, mono.c);
        d.value += mono.coef * pu * pv * pt;
        if (mono.a > 0) {
          d.du += mono.coef * mono.a * ipow(g.u, mono.a - 1) * pv * pt;
        }
        if (mono.b > 0) {
          d.dv += mono.coef * mono.b * pu * ipow(g.v, mono.b - 1) * pt;
        }
        if (mono.c > 0) {
          d.dt += mono.coef * mono.c * pu * pv * ipow(g.t, mono.c - 1);
        }
      }
      return d;
    case Kind::SEntry:
    case Kind::Cone:
      break;
  }
  throw ValidationError("kernel does not support smoothed evaluation");
}

std::string KernelSpec::describe() const {
  std::ostringstream out;
  switch (kind_) {
    case Kind::PFrame:
      out << "pframe(p=" << p_ << ", d=" << dim_ << ")";
      break;
    case Kind::TripleProduct:
      out << "uvt(d=" << dim_ << ")";
      break;
    case Kind::SEntry:
      out << "s(m=" << m_ << ", i=" << i_ << ", j=" << j_ << ", d=" << dim_
          << ")";
      break;
    case Kind::PolyUVT:
      out << "poly(" << monomials_.size() << " monomials, d=" << dim_ << ")";
      break;
    case Kind::Cone:
      out << "cone(" << blocks_.size() << " blocks, d=" << dim_ << ")";
      break;
  }
  return out.str();
}

}  // namespace trisph
