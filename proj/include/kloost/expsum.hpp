#pragma once

// Direct evaluation of complete and incomplete Kloosterman sums
//   S(a,b;c)    = sum over units x mod c   of e((a x + b x^{-1})/c)
//   S(a,b;c,I)  = sum over units x in I    of e((a x + b x^{-1})/c)
// together with the exact identities they satisfy at prime moduli.

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "kloost/arith.hpp"
#include "kloost/compensated.hpp"
#include "kloost/spectral.hpp"
#include "kloost/types.hpp"

namespace kloost {

namespace detail {

// Residues are inverted in blocks so memory stays bounded for long intervals.
inline constexpr u64 kInverseBlock = u64{1} << 20;

// Visits every unit residue r of the interval in order, as
// visit(offset, r, r^{-1}) where offset is the 0-based position in the interval.
template <typename Visit>
void for_each_unit(const IntervalSpec& interval, u64 c, bool prime, Visit&& visit) {
  std::vector<u64> block;
  std::vector<u64> offsets;
  block.reserve(std::min(interval.L, kInverseBlock));
  offsets.reserve(block.capacity());
  u64 offset = 0;
  u64 r = reduce(interval.first(), c);
  u64 remaining = interval.L;
  while (remaining > 0) {
    block.clear();
    offsets.clear();
    const u64 take = std::min(remaining, kInverseBlock);
    for (u64 i = 0; i < take; ++i) {
      const bool unit = prime ? r != 0 : std::gcd(r, c) == 1;
      if (unit) {
        block.push_back(r);
        offsets.push_back(offset);
      }
      r = (r + 1 == c) ? 0 : r + 1;
      ++offset;
    }
    remaining -= take;
    const std::vector<u64> inv = batch_inverse_residues(block, c);
    for (std::size_t i = 0; i < block.size(); ++i) visit(offsets[i], block[i], inv[i]);
  }
}

}  // namespace detail

inline SumValue incomplete_kloosterman(const SumParams& params, const IntervalSpec& interval) {
  const u64 c = params.c.value();
  const u64 ar = params.c.reduce(params.a);
  const u64 br = params.c.reduce(params.b);
  CompensatedComplexSum acc;
  u64 count = 0;
  detail::for_each_unit(interval, c, params.c.is_prime(), [&](u64, u64 x, u64 x_inv) {
    const u64 phase = (mul_mod(ar, x, c) + mul_mod(br, x_inv, c)) % c;
    acc.add(unit_root(phase, c));
    ++count;
  });
  return SumValue::from(acc.value(), count);
}

/// O(c); term_count is Euler's totient of c.
inline SumValue complete_kloosterman(const SumParams& params) {
  return incomplete_kloosterman(params, IntervalSpec{0, params.c.value()});
}

struct Lemma2Result {
  SumValue lhs;
  SumValue rhs;
  double max_abs_diff = 0.0;
};

/// sum_a S(a,b;p) e(ma/p) against p e(-b m^{-1}/p), from a precomputed
/// complete spectrum for (b, p).
inline Lemma2Result lemma2_transform(i64 b, i64 m, const SpectrumVector& spectrum) {
  const Modulus& p = spectrum.p();
  if (!spectrum.is_complete() || p.reduce(spectrum.b()) != p.reduce(b)) {
    throw std::invalid_argument("lemma2_transform needs the complete spectrum for (b, p)");
  }
  const u64 n = p.value();
  const u64 mr = p.reduce(m);
  CompensatedComplexSum acc;
  u64 phase = 0;
  for (u64 a = 0; a < n; ++a) {
    acc.add(spectrum[a] * unit_root(phase, n));
    phase += mr;
    if (phase >= n) phase -= n;
  }
  const complex lhs = acc.value();
  const complex rhs = full_period_twisted_sum(b, m, p);
  return {SumValue::from(lhs, n), SumValue::from(rhs, mr == 0 ? 0 : 1), std::abs(lhs - rhs)};
}

inline Lemma2Result lemma2_transform(i64 b, i64 m, const Modulus& p) {
  return lemma2_transform(b, m, all_complete_sums(b, p));
}

/// sum over a of |S(a,b;p)|^2, which equals p(p-1).
inline double second_moment_complete(const SpectrumVector& spectrum) {
  if (!spectrum.is_complete()) throw std::invalid_argument("complete spectrum required");
  CompensatedSum acc;
  for (const complex& z : spectrum.values()) acc.add(std::norm(z));
  return acc.value();
}

inline double second_moment_complete(i64 b, const Modulus& p) {
  return second_moment_complete(all_complete_sums(b, p));
}

struct SecondMoment {
  double value = 0.0;
  u64 unit_count = 0;
};

/// (1/p) sum over a of |S(a,b;p,I)|^2 and the number of units in I. The two
/// coincide whenever L <= p.
inline SecondMoment second_moment_incomplete(i64 b, const Modulus& p, const IntervalSpec& interval) {
  require_prime(p);
  if (interval.L > p.value()) {
    throw IntervalTooLong("second moment identity needs L <= p (L = " +
                          std::to_string(interval.L) + ", p = " + std::to_string(p.value()) + ")");
  }
  const SpectrumVector spectrum = all_incomplete_sums(b, p, interval);
  CompensatedSum acc;
  for (const complex& z : spectrum.values()) acc.add(std::norm(z));
  return {acc.value() / static_cast<double>(p.value()),
          prime_unit_count(interval.M, interval.L, p.value())};
}

}  // namespace kloost
