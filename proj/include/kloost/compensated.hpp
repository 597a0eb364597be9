#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "kloost/arith.hpp"

namespace kloost {

using complex = std::complex<double>;

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class CompensatedComplexSum {
 public:
  void add(complex z) noexcept {
    re_.add(z.real());
    im_.add(z.imag());
  }

  complex value() const noexcept { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

/// e(k/c) = exp(2 pi i k/c) from an exact residue. The residue is folded into
/// (-c/2, c/2] so the angle passed to sin/cos never exceeds pi.
inline complex unit_root(u64 k, u64 c) {
  k %= c;
  double frac;
  if (k > c / 2) {
    frac = -static_cast<double>(c - k) / static_cast<double>(c);
  } else {
    frac = static_cast<double>(k) / static_cast<double>(c);
  }
  const double angle = 2.0 * std::numbers::pi * frac;
  return {std::cos(angle), std::sin(angle)};
}

/// e(t) for a real t, reduced to [-1/2, 1/2] before the trig call.
inline complex unit_phase(double t) {
  const double frac = t - std::nearbyint(t);
  const double angle = 2.0 * std::numbers::pi * frac;
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace kloost
