#pragma once

// Closed-form bound curves for complete and incomplete Kloosterman sums.
// "log p" is the natural logarithm throughout. None of the implied constants
// is known, so the reports carry raw ratios rather than verdicts.

#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "kloost/arith.hpp"
#include "kloost/errors.hpp"
#include "kloost/types.hpp"

namespace kloost {

inline void require_r(int r) {
  if (r < 2) throw InvalidR("r must be >= 2, got " + std::to_string(r));
}

inline void require_odd_prime(u64 p) {
  if (p < 3 || !is_prime(p)) throw NotPrime("expected an odd prime, got " + std::to_string(p));
}

/// c^{1/2} (a,b,c)^{1/2} tau(c).
inline double weil_bound(i64 a, i64 b, u64 c) {
  if (c < 2) throw std::invalid_argument("weil_bound needs c >= 2");
  return std::sqrt(static_cast<double>(c)) * std::sqrt(static_cast<double>(gcd3(a, b, c))) *
         static_cast<double>(divisor_count(c));
}

/// Completion bound for an incomplete sum, 2 sqrt(p) (1 + log p) (a,b,p)^{1/2}.
inline double weil_completed_bound(i64 a, i64 b, u64 p) {
  const double pd = static_cast<double>(p);
  return 2.0 * std::sqrt(pd) * (1.0 + std::log(pd)) * std::sqrt(static_cast<double>(gcd3(a, b, p)));
}

// 1/2 - (3r-1)/(4r^2)
inline double thm1_p_exponent(int r) {
  const double rd = r;
  return 0.5 - (3.0 * rd - 1.0) / (4.0 * rd * rd);
}

/// L^{1/r} p^{1/2 - (3r-1)/(4r^2)} log p.
inline double thm1_bound(u64 L, u64 p, int r) {
  require_r(r);
  require_odd_prime(p);
  const double pd = static_cast<double>(p);
  return std::pow(static_cast<double>(L), 1.0 / r) * std::pow(pd, thm1_p_exponent(r)) * std::log(pd);
}

/// y^{1 - 1/r} p^{1/2 + (r+1)/(4r^2)} log p.
inline double prop1_bound(double y, u64 p, int r) {
  require_r(r);
  require_odd_prime(p);
  if (!(y > 0.0)) throw std::invalid_argument("prop1_bound needs y > 0");
  const double rd = r;
  const double pd = static_cast<double>(p);
  return std::pow(y, 1.0 - 1.0 / rd) * std::pow(pd, 0.5 + (rd + 1.0) / (4.0 * rd * rd)) * std::log(pd);
}

/// L^{1/2 + eps} (a,b,c)^{1/2}. Conjectural; a reference curve only.
inline double conjecture_bound(u64 L, u64 gcd_abc, double epsilon) {
  return std::pow(static_cast<double>(L), 0.5 + epsilon) * std::sqrt(static_cast<double>(gcd_abc));
}

/// True when c^{1/4} < L < c, the range of the incomplete Ramanujan-sum
/// conjecture.
inline bool conjecture_in_range(u64 L, u64 c) {
  const double ld = static_cast<double>(L);
  return ld > std::pow(static_cast<double>(c), 0.25) && L < c;
}

struct BestR {
  int r = 2;
  double bound = 0.0;
};

/// Minimizes thm1_bound over r in [2, r_max]; smallest r wins ties.
inline BestR best_r(u64 L, u64 p, int r_max) {
  require_r(r_max);
  BestR best{2, thm1_bound(L, p, 2)};
  for (int r = 3; r <= r_max; ++r) {
    const double v = thm1_bound(L, p, r);
    if (v < best.bound) best = {r, v};
  }
  return best;
}

/// Same scan for prop1_bound.
inline BestR best_prop1_r(double y, u64 p, int r_max) {
  require_r(r_max);
  BestR best{2, prop1_bound(y, p, 2)};
  for (int r = 3; r <= r_max; ++r) {
    const double v = prop1_bound(y, p, r);
    if (v < best.bound) best = {r, v};
  }
  return best;
}

/// theta(r) = (r/(r-1)) (1/2 - (3r-1)/(4r^2)): thm1_bound beats L once
/// L > p^{theta(r)}, log factor aside.
inline double nontrivial_threshold(int r) {
  require_r(r);
  const double rd = r;
  return rd / (rd - 1.0) * thm1_p_exponent(r);
}

struct BoundReport {
  BoundReport(const SumParams& sum, const IntervalSpec& range) : params(sum), interval(range) {}

  SumParams params;
  IntervalSpec interval;
  double abs_S = 0.0;
  double trivial = 0.0;
  double weil = 0.0;
  double weil_completed = 0.0;
  std::map<int, double> thm1;
  int best_r = 2;
  double best_thm1 = 0.0;
  double conj1 = 0.0;
  bool conj_in_range = false;
  double ratio_weil = 0.0;
  double ratio_weil_completed = 0.0;
  double ratio_thm1 = 0.0;
  double ratio_conj = 0.0;
  std::vector<std::string> warnings;
};

inline double bound_ratio(double value, double bound) {
  if (value == 0.0) return 0.0;
  if (bound > 0.0) return value / bound;
  return std::numeric_limits<double>::infinity();
}

inline BoundReport make_report(const SumParams& params, const IntervalSpec& interval, double abs_S,
                               int r_max, double epsilon) {
  if (!(abs_S >= 0.0)) throw std::invalid_argument("abs_S must be nonnegative");
  if (epsilon < 0.0) throw std::invalid_argument("epsilon must be nonnegative");
  require_r(r_max);
  const u64 p = params.c.value();
  require_odd_prime(p);

  BoundReport rep(params, interval);
  rep.abs_S = abs_S;
  rep.trivial = static_cast<double>(prime_unit_count(interval.M, interval.L, p));
  if (interval.L < 1 || interval.L > p) {
    rep.warnings.push_back("interval length " + std::to_string(interval.L) + " outside [1, " +
                           std::to_string(p) + "]");
  }
  rep.weil = weil_bound(params.a, params.b, p);
  rep.weil_completed = weil_completed_bound(params.a, params.b, p);
  const double pd = static_cast<double>(p);
  for (int r = 2; r <= r_max; ++r) {
    // Written out so L = 0 yields a zero bound instead of a precondition error.
    rep.thm1[r] = std::pow(static_cast<double>(interval.L), 1.0 / r) * std::pow(pd, thm1_p_exponent(r)) *
                  std::log(pd);
  }
  rep.best_r = 2;
  rep.best_thm1 = rep.thm1.at(2);
  for (const auto& [r, v] : rep.thm1) {
    if (v < rep.best_thm1) {
      rep.best_r = r;
      rep.best_thm1 = v;
    }
  }
  const u64 g = gcd3(params.a, params.b, p);
  rep.conj1 = conjecture_bound(interval.L, g, epsilon);
  rep.conj_in_range = conjecture_in_range(interval.L, p);
  rep.ratio_weil = bound_ratio(abs_S, rep.weil);
  rep.ratio_weil_completed = bound_ratio(abs_S, rep.weil_completed);
  rep.ratio_thm1 = bound_ratio(abs_S, rep.best_thm1);
  rep.ratio_conj = bound_ratio(abs_S, rep.conj1);
  return rep;
}

}  // namespace kloost
