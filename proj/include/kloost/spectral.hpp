#pragma once

// All-frequency evaluation: for fixed (b, p) the map a -> S(a,b;p) is the
// forward DFT of x -> e(b x^{-1}/p) (slot 0 empty), so one prime-length
// transform yields every complete sum in O(p log p).

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kloost/arith.hpp"
#include "kloost/compensated.hpp"
#include "kloost/fft.hpp"
#include "kloost/types.hpp"

namespace kloost {

/// values[a] = S(a, b; p) (complete) or S(a, b; p, I) (incomplete) for
/// every a in [0, p-1]. Immutable once built.
class SpectrumVector {
 public:
  SpectrumVector(Modulus p, i64 b, std::vector<complex> values,
                 std::optional<IntervalSpec> interval)
      : p_(p), b_(b), values_(std::move(values)), interval_(interval) {
    if (values_.size() != p_.value()) {
      throw std::invalid_argument("spectrum length must equal the modulus");
    }
  }

  const Modulus& p() const noexcept { return p_; }
  i64 b() const noexcept { return b_; }
  std::span<const complex> values() const noexcept { return values_; }
  bool is_complete() const noexcept { return !interval_.has_value(); }
  const std::optional<IntervalSpec>& interval() const noexcept { return interval_; }

  const complex& operator[](u64 a) const { return values_[a]; }
  // Periodic access for any integer frequency.
  const complex& at_frequency(i64 a) const { return values_[p_.reduce(a)]; }

 private:
  Modulus p_;
  i64 b_;
  std::vector<complex> values_;
  std::optional<IntervalSpec> interval_;
};

inline SpectrumVector all_complete_sums(i64 b, const Modulus& p) {
  require_prime(p);
  const u64 n = p.value();
  const u64 br = p.reduce(b);
  std::vector<u64> units(n - 1);
  for (u64 x = 1; x < n; ++x) units[x - 1] = x;
  const std::vector<u64> inv = batch_inverse_residues(units, n);
  std::vector<complex> load(n, complex{0.0, 0.0});
  for (u64 x = 1; x < n; ++x) load[x] = unit_root(mul_mod(br, inv[x - 1], n), n);
  return SpectrumVector(p, b, dft(load, Direction::forward), std::nullopt);
}

inline SpectrumVector all_incomplete_sums(i64 b, const Modulus& p, const IntervalSpec& interval) {
  require_prime(p);
  const u64 n = p.value();
  if (interval.L > n) {
    throw IntervalTooLong("interval length " + std::to_string(interval.L) +
                          " exceeds the modulus " + std::to_string(n));
  }
  if (interval.L == 0) {
    return SpectrumVector(p, b, std::vector<complex>(n), interval);
  }
  const u64 br = p.reduce(b);
  std::vector<u64> units;
  units.reserve(interval.L);
  u64 r = p.reduce(interval.first());
  for (u64 i = 0; i < interval.L; ++i) {
    if (r != 0) units.push_back(r);
    r = (r + 1 == n) ? 0 : r + 1;
  }
  const std::vector<u64> inv = batch_inverse_residues(units, n);
  std::vector<complex> load(n, complex{0.0, 0.0});
  for (std::size_t i = 0; i < units.size(); ++i) {
    load[units[i]] = unit_root(mul_mod(br, inv[i], n), n);
  }
  return SpectrumVector(p, b, dft(load, Direction::forward), interval);
}

/// sum over one full period of a of S(a,b;p) e(ma/p): p e(-b m^{-1}/p) when
/// p does not divide m, and 0 when it does.
inline complex full_period_twisted_sum(i64 b, i64 m, const Modulus& p) {
  const u64 n = p.value();
  const u64 mr = p.reduce(m);
  if (mr == 0) return {0.0, 0.0};
  const u64 phase = mul_mod(p.reduce(b), mod_inverse(static_cast<i64>(mr), p), n);
  return static_cast<double>(n) * unit_root(phase == 0 ? 0 : n - phase, n);
}

/// sum over integers x < a <= x + y of S(a,b;p) e(ma/p), reading S from a
/// complete spectrum. Whole periods are taken in closed form.
inline SumValue windowed_mean_value(i64 b, const Modulus& p, i64 m, double x, double y,
                                    const SpectrumVector& spectrum) {
  if (!spectrum.is_complete() || spectrum.p() != p || spectrum.p().reduce(spectrum.b()) != p.reduce(b)) {
    throw std::invalid_argument("windowed_mean_value needs the complete spectrum for (b, p)");
  }
  if (!(y > 0.0)) throw std::invalid_argument("window length y must be positive");
  const u64 n = p.value();
  const i64 lo = static_cast<i64>(std::floor(x)) + 1;
  const i64 hi = static_cast<i64>(std::floor(x + y));
  if (hi < lo) return {};
  const u64 count = static_cast<u64>(hi - lo + 1);
  const u64 periods = count / n;
  const u64 rest = count % n;

  CompensatedComplexSum acc;
  if (periods > 0) acc.add(static_cast<double>(periods) * full_period_twisted_sum(b, m, p));
  const u64 mr = p.reduce(m);
  u64 a = p.reduce(lo + static_cast<i64>(periods * n));
  for (u64 i = 0; i < rest; ++i) {
    acc.add(spectrum[a] * unit_root(mul_mod(mr, a, n), n));
    a = (a + 1 == n) ? 0 : a + 1;
  }
  return SumValue::from(acc.value(), count);
}

}  // namespace kloost
