#pragma once

namespace trisph::detail {

// Compensated accumulator; summation order stays part of the contract for
// bit-reproducible results.
struct Kahan {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace trisph::detail
