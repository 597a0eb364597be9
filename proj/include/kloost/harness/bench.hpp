#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <vector>

#include "kloost/expsum.hpp"
#include "kloost/harness/rng.hpp"
#include "kloost/spectral.hpp"
#include "kloost/weight.hpp"

namespace kloost::harness {

struct BenchReport {
  u64 p = 0;
  u64 repetitions = 0;
  double median_seconds = 0.0;
  double min_seconds = 0.0;
  double max_seconds = 0.0;
  double sums_per_second = 0.0;
  double max_crosscheck_error = 0.0;
  double crosscheck_tolerance = 0.0;

  bool crosscheck_passed() const noexcept { return max_crosscheck_error <= crosscheck_tolerance; }
};

inline constexpr std::size_t kCrosscheckEntries = 8;

/// Times all_complete_sums(1, p) and cross-checks a few entries against the
/// direct O(p) evaluator.
inline BenchReport bench_allsums(u64 p, u64 repetitions, u64 seed = 0) {
  const Modulus mod = require_prime(p);
  if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  using clock = std::chrono::steady_clock;

  std::vector<double> samples;
  samples.reserve(repetitions);
  std::vector<complex> last;
  for (u64 i = 0; i < repetitions; ++i) {
    const auto t0 = clock::now();
    const SpectrumVector spec = all_complete_sums(1, mod);
    const auto t1 = clock::now();
    samples.push_back(std::chrono::duration<double>(t1 - t0).count());
    if (i + 1 == repetitions) last.assign(spec.values().begin(), spec.values().end());
  }
  std::sort(samples.begin(), samples.end());
  const std::size_t mid = samples.size() / 2;
  const double median = samples.size() % 2 == 1 ? samples[mid] : 0.5 * (samples[mid - 1] + samples[mid]);

  BenchReport rep;
  rep.p = p;
  rep.repetitions = repetitions;
  rep.median_seconds = median;
  rep.min_seconds = samples.front();
  rep.max_seconds = samples.back();
  rep.sums_per_second = median > 0.0 ? static_cast<double>(p) / median : 0.0;
  rep.crosscheck_tolerance = 1e-9 * static_cast<double>(p);
  StreamRng rng(seed);
  for (std::size_t i = 0; i < kCrosscheckEntries; ++i) {
    const u64 a = rng.uniform(p);
    const SumValue direct = complete_kloosterman(SumParams(static_cast<i64>(a), 1, mod));
    rep.max_crosscheck_error = std::max(rep.max_crosscheck_error, std::abs(direct.value() - last[a]));
  }
  return rep;
}

struct WindowCheck {
  double n = 0.0;
  double delta = 0.0;
  int order = 0;
  double phihat0 = 0.0;
  double mass = 0.0;
  double constant_short = 0.0;  // grid |lambda| N <= 1e2
  double constant_long = 0.0;   // grid |lambda| N <= 1e3

  double mass_error() const { return std::abs(phihat0 - mass); }
};

// Both grids step |lambda| N by 0.5.
inline WindowCheck window_check(double n, double delta, int order) {
  const SmoothWindow w(n, delta);
  WindowCheck out;
  out.n = n;
  out.delta = delta;
  out.order = order;
  out.phihat0 = window_fourier(w, 0.0).real();
  out.mass = w.mass();
  out.constant_short = decay_constant(w, order, decay_grid(w, 1e2, 201));
  out.constant_long = decay_constant(w, order, decay_grid(w, 1e3, 2001));
  return out;
}

}  // namespace kloost::harness
