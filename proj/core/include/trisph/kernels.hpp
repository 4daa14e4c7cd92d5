#pragma once

#include "trisph/types.hpp"

#include <array>
#include <map>
#include <vector>

namespace trisph {

// Q_m^d(u,v,t) = ((1-u^2)(1-v^2))^{m/2} P_m^{d-1}(s / sqrt((1-u^2)(1-v^2)))
// with s = t - uv, evaluated through a square-root-free recurrence in
// (s, q = (1-u^2)(1-v^2)) so the formula extends continuously to u,v = +-1.
// Needs d >= 3 when m >= 2 (P^{d-1} requires a sphere parameter >= 2).
double q_kernel(int m, int d, const GramTriple& g);

// Y_{m,i,j}^d(u,v,t) = P_i^{d+2m}(u) P_j^{d+2m}(v) Q_m^d(u,v,t).
double y_kernel(int m, int i, int j, int d, const GramTriple& g);

// S_{m,i,j}^d: average of Y_{m,i,j}^d over the six permutations of (u,v,t).
// Symmetric in all three points and in (i, j).
double s_kernel(int m, int i, int j, int d, const GramTriple& g);
double s_kernel(int m, int i, int j, int d, const UnitVector& x,
                const UnitVector& y, const UnitVector& z);

// |uvt|^p for p > 0 (0^p = 0).
double pframe_potential(double p, const GramTriple& g);

// Positive semidefinite coefficient block attached to one kernel level m.
// Level 0 blocks must have an identically zero first row and column (the
// constant-degree slot carries no mass).
struct PsdBlock {
  int level = 0;
  Matrix entries;

  PsdBlock(int level, Matrix entries);
  int size() const { return static_cast<int>(entries.rows()); }
};

// A three-point kernel K(u,v,t) on a fixed dimension. Supported kinds:
//   pframe         |uvt|^p
//   triple product uvt
//   s entry        S_{m,i,j}^d
//   polynomial     symmetrized polynomial in (u,v,t)
//   cone           sum_m <A_m, S-block of level m>, every A_m PSD
class KernelSpec {
 public:
  enum class Kind { PFrame, TripleProduct, SEntry, PolyUVT, Cone };

  struct Monomial {
    int a = 0, b = 0, c = 0;
    double coef = 0.0;
  };

  struct Derivs {
    double value = 0.0, du = 0.0, dv = 0.0, dt = 0.0;
  };

  static KernelSpec pframe(int dim, double p);
  static KernelSpec triple_product(int dim);
  static KernelSpec s_entry(int dim, int m, int i, int j);
  // Coefficients keyed by exponent triple (a,b,c); the kernel is the
  // symmetrization (1/6) sum over permutations of (u,v,t).
  static KernelSpec poly_uvt(int dim,
                             const std::map<std::array<int, 3>, double>& coeffs);
  static KernelSpec cone(int dim, std::vector<PsdBlock> blocks);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  double p() const { return p_; }
  int s_m() const { return m_; }
  int s_i() const { return i_; }
  int s_j() const { return j_; }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  const std::vector<PsdBlock>& blocks() const { return blocks_; }

  double eval(const GramTriple& g) const;
  double eval(const UnitVector& x, const UnitVector& y,
              const UnitVector& z) const;

  // Kinds that admit the smoothed evaluation used by the optimizer.
  bool smoothable() const;
  // PFrame is smoothed as (s^2 + eps^2)^{p/2} with s = uvt; the smooth kinds
  // (triple product, polynomial) ignore eps. Throws for s-entry and cone.
  double smoothed_value(const GramTriple& g, double eps) const;
  Derivs smoothed_derivs(const GramTriple& g, double eps) const;

  std::string describe() const;

 private:
  KernelSpec(Kind kind, int dim) : kind_(kind), dim_(dim) {}

  Kind kind_;
  int dim_;
  double p_ = 0.0;
  int m_ = 0, i_ = 0, j_ = 0;
  std::vector<Monomial> monomials_;
  std::vector<PsdBlock> blocks_;
};

}  // namespace trisph
