#include "trisph/rng.hpp"

#include <cmath>
#include <numbers>

namespace trisph {

Rng::Rng(std::uint64_t seed) : gen_(seed) {}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  gen_.seed(seq);
}

double Rng::uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) {
  if (!(lo < hi)) throw ValidationError("uniform range must satisfy lo < hi");
  return lo + (hi - lo) * uniform();
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

Vector Rng::gaussian(int dim) {
  if (dim < 1) throw ValidationError("gaussian dimension must be >= 1");
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = normal();
  return v;
}

UnitVector Rng::sphere_point(int dim) {
  if (dim < 2) throw ValidationError("sphere dimension must be >= 2");
  for (;;) {
    Vector v = gaussian(dim);
    if (v.norm() > 1e-12) return UnitVector(std::move(v));
  }
}

}  // namespace trisph
