#include "trisph/gegenbauer.hpp"

#include "trisph/types.hpp"

#include <algorithm>
#include <cmath>

namespace trisph {

namespace {

double checked_argument(int m, int h, double x) {
  if (m < 0) throw ValidationError("Gegenbauer degree must be >= 0");
  if (h < 2) throw ValidationError("Gegenbauer sphere parameter must be >= 2");
  if (!std::isfinite(x) || std::abs(x) > 1.0 + 1e-12) {
    throw ValidationError("Gegenbauer argument must lie in [-1, 1]");
  }
  return std::clamp(x, -1.0, 1.0);
}

}  // namespace

double gegenbauer_eval(int m, int h, double x) {
  x = checked_argument(m, h, x);
  if (m == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int k = 2; k <= m; ++k) {
    const double next =
        ((2.0 * k + h - 4.0) * x * cur - (k - 1.0) * prev) / (k + h - 3.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> gegenbauer_all(int mmax, int h, double x) {
  x = checked_argument(mmax, h, x);
  std::vector<double> vals(mmax + 1);
  vals[0] = 1.0;
  if (mmax == 0) return vals;
  vals[1] = x;
  for (int k = 2; k <= mmax; ++k) {
    vals[k] =
        ((2.0 * k + h - 4.0) * x * vals[k - 1] - (k - 1.0) * vals[k - 2]) /
        (k + h - 3.0);
  }
  return vals;
}

}  // namespace trisph
