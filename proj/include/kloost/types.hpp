#pragma once

#include <complex>
#include <cstdint>

#include "kloost/arith.hpp"

namespace kloost {

/// Frequencies (a, b) and modulus c of one Kloosterman sum. The frequencies
/// are stored as given; evaluation only sees their residues mod c.
struct SumParams {
  i64 a = 0;
  i64 b = 0;
  Modulus c;

  SumParams(i64 a_, i64 b_, Modulus c_) : a(a_), b(b_), c(c_) {}
  SumParams(i64 a_, i64 b_, u64 c_) : a(a_), b(b_), c(c_) {}
};

/// The half-open integer interval (M, M+L].
struct IntervalSpec {
  i64 M = 0;
  u64 L = 0;

  i64 first() const noexcept { return M + 1; }
  i64 last() const noexcept { return M + static_cast<i64>(L); }

  friend bool operator==(const IntervalSpec&, const IntervalSpec&) = default;
};

struct SumValue {
  double re = 0.0;
  double im = 0.0;
  // Number of unit residues that contributed a term.
  u64 term_count = 0;

  std::complex<double> value() const noexcept { return {re, im}; }
  double abs() const noexcept { return std::abs(value()); }

  static SumValue from(std::complex<double> z, u64 count) noexcept {
    return {z.real(), z.imag(), count};
  }
};

}  // namespace kloost
