#pragma once

#include <vector>

namespace trisph {

// Gegenbauer polynomial P_m^h attached to S^{h-1} (ultraspherical parameter
// lambda = (h-2)/2), normalized so P_m^h(1) = 1. For h = 2 this degenerates
// to the Chebyshev polynomial T_m.
double gegenbauer_eval(int m, int h, double x);

// P_0^h(x) .. P_mmax^h(x) in one recurrence pass.
std::vector<double> gegenbauer_all(int mmax, int h, double x);

}  // namespace trisph
