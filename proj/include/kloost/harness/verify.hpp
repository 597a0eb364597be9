#pragma once

// Identity suites over every prime up to a limit. Each suite records its
// worst case as a ratio defect / allowed, so a suite passes iff that ratio
// stays <= 1.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "kloost/bounds.hpp"
#include "kloost/expsum.hpp"
#include "kloost/harness/rng.hpp"
#include "kloost/spectral.hpp"
#include "kloost/weight.hpp"

namespace kloost::harness {

struct SuiteResult {
  SuiteResult() = default;
  explicit SuiteResult(std::string suite_name) : name(std::move(suite_name)) {}

  std::string name;
  double max_defect = 0.0;   // absolute defect at the worst case
  double allowed = 0.0;      // tolerance at the worst case
  double worst_ratio = 0.0;  // max over cases of defect / tolerance
  u64 cases = 0;
  std::string worst_case;

  bool passed() const noexcept { return worst_ratio <= 1.0; }

  // `where` is only invoked when the case becomes the new worst case.
  template <typename Label>
  void record(double defect, double tolerance, Label&& where) {
    ++cases;
    double ratio = defect / tolerance;
    if (std::isnan(ratio)) ratio = std::numeric_limits<double>::infinity();
    if (cases == 1 || ratio > worst_ratio) {
      worst_ratio = ratio;
      max_defect = defect;
      allowed = tolerance;
      worst_case = where();
    }
  }
};

struct VerificationSummary {
  u64 p_limit = 0;
  u64 seed = 0;
  std::vector<SuiteResult> suites;

  bool passed() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed(); });
  }
};

inline constexpr u64 kExhaustiveLimit = 200;

inline std::vector<u64> odd_primes_up_to(u64 limit) {
  std::vector<u64> out;
  for (u64 n = 3; n <= limit; n += 2) {
    if (is_prime(n)) out.push_back(n);
  }
  return out;
}

inline std::string case_label(u64 p, const std::string& rest) {
  return "p=" + std::to_string(p) + (rest.empty() ? "" : ", " + rest);
}

inline VerificationSummary verify_identities(u64 p_limit, u64 seed) {
  if (p_limit < 5) throw std::invalid_argument("verify_identities needs p_limit >= 5");
  VerificationSummary summary{p_limit, seed, {}};
  SuiteResult lemma2("twisted_average");
  SuiteResult moment_complete("second_moment_complete");
  SuiteResult moment_incomplete("second_moment_incomplete");
  SuiteResult spectral("spectral_vs_direct");
  SuiteResult weil("weil_bound");
  SuiteResult completion("poisson_completion");

  StreamRng rng(seed);
  const std::vector<u64> primes = odd_primes_up_to(p_limit);
  for (u64 p : primes) {
    const Modulus mod(p);
    const double pd = static_cast<double>(p);
    const bool exhaustive = p <= kExhaustiveLimit;

    // b values for which the full spectrum is built.
    std::vector<i64> bs;
    if (exhaustive) {
      for (u64 b = 1; b < p; ++b) bs.push_back(static_cast<i64>(b));
    } else {
      bs = {1, static_cast<i64>(p - 1)};
      for (int i = 0; i < 6; ++i) bs.push_back(static_cast<i64>(rng.uniform(1, p - 1)));
    }

    for (i64 b : bs) {
      const SpectrumVector spec = all_complete_sums(b, mod);
      const std::string bl = "b=" + std::to_string(b);

      // Twisted average: every m for small p, m = 0 and a sample otherwise.
      std::vector<i64> ms{0};
      if (exhaustive) {
        for (u64 m = 1; m < p; ++m) ms.push_back(static_cast<i64>(m));
      } else {
        for (int i = 0; i < 8; ++i) ms.push_back(static_cast<i64>(rng.uniform(1, p - 1)));
      }
      for (i64 m : ms) {
        const Lemma2Result r = lemma2_transform(b, m, spec);
        lemma2.record(r.max_abs_diff, 1e-9 * pd, [&] { return case_label(p, bl + ", m=" + std::to_string(m)); });
      }

      const double moment = second_moment_complete(spec);
      moment_complete.record(std::abs(moment - pd * (pd - 1.0)), 1e-6 * pd * (pd - 1.0), [&] { return case_label(p, bl); });

      for (u64 a = 0; a < p; ++a) {
        const double bound = 2.0 * std::sqrt(pd) * std::sqrt(static_cast<double>(gcd3(static_cast<i64>(a), b, p)));
        weil.record(std::abs(spec[a]), bound + 1e-6, [&] { return case_label(p, "a=" + std::to_string(a) + ", " + bl); });
      }
    }

    // Spectrum against the direct evaluator.
    {
      const i64 b = static_cast<i64>(rng.uniform(1, p - 1));
      const SpectrumVector spec = all_complete_sums(b, mod);
      const u64 count = exhaustive ? p : 8;
      for (u64 i = 0; i < count; ++i) {
        const u64 a = exhaustive ? i : rng.uniform(p);
        const SumValue direct = complete_kloosterman(SumParams(static_cast<i64>(a), b, mod));
        spectral.record(std::abs(direct.value() - spec[a]), 1e-8 * pd, [&] {
          return case_label(p, "a=" + std::to_string(a) + ", b=" + std::to_string(b));
        });
      }
    }

    // Incomplete second moment, random (b, M, L) with L <= p.
    for (int i = 0; i < 5; ++i) {
      const i64 b = static_cast<i64>(rng.uniform(1, p - 1));
      const i64 M = static_cast<i64>(rng.uniform(p));
      const u64 L = rng.uniform(p + 1);
      const SecondMoment sm = second_moment_incomplete(b, mod, IntervalSpec{M, L});
      moment_incomplete.record(std::abs(sm.value - static_cast<double>(sm.unit_count)), 1e-6, [&] {
        return case_label(p, "b=" + std::to_string(b) + ", M=" + std::to_string(M) + ", L=" + std::to_string(L));
      });
    }
  }

  // Smoothed Poisson completion at a few primes; each window needs its own
  // decay constant, which dominates the cost.
  std::vector<u64> completion_primes;
  for (u64 q : {u64{5}, u64{7}, primes.back()}) {
    if (q <= p_limit && std::find(completion_primes.begin(), completion_primes.end(), q) == completion_primes.end()) {
      completion_primes.push_back(q);
    }
  }
  for (u64 p : completion_primes) {
    const Modulus mod(p);
    const double n = std::ceil(std::sqrt(static_cast<double>(p)));
    const SmoothWindow w(n, n / 8.0);
    const double c2 = decay_constant(w, 2, decay_grid(w, kDecayGridMaxLambdaN, kDecayGridPoints));
    const u64 H = static_cast<u64>(std::ceil(20.0 * static_cast<double>(p) / n));
    for (int i = 0; i < 3; ++i) {
      const i64 a = static_cast<i64>(rng.uniform(p));
      const i64 b = static_cast<i64>(rng.uniform(1, p - 1));
      const i64 M = static_cast<i64>(rng.uniform(p));
      const CompletionResult r = poisson_completion(a, b, mod, M, w, H, all_complete_sums(b, mod), c2);
      completion.record(r.defect(), r.tail_estimate + 1e-6 * n, [&] {
        return case_label(p, "a=" + std::to_string(a) + ", b=" + std::to_string(b) + ", M=" + std::to_string(M));
      });
    }
  }

  summary.suites = {lemma2, moment_complete, moment_incomplete, spectral, weil, completion};
  return summary;
}

}  // namespace kloost::harness
