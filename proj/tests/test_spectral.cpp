#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "kloost/expsum.hpp"
#include "kloost/fft.hpp"
#include "kloost/spectral.hpp"
#include "oracles.hpp"

using namespace kloost;

namespace {

std::vector<complex> random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<complex> v(n);
  for (auto& z : v) z = {u(gen), u(gen)};
  return v;
}

double max_diff(std::span<const complex> x, std::span<const complex> y) {
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(x[i] - y[i]));
  return worst;
}

}  // namespace

TEST(Dft, Examples) {
  const std::vector<complex> delta{1.0, 0.0, 0.0, 0.0, 0.0};
  for (const complex& z : dft(delta, Direction::forward)) {
    EXPECT_NEAR(z.real(), 1.0, 1e-15);
    EXPECT_NEAR(z.imag(), 0.0, 1e-15);
  }
  // Forward transform uses e(+jk/n): a shifted impulse picks up e(k/n).
  const std::vector<complex> shifted{0.0, 1.0, 0.0};
  const auto out = dft(shifted, Direction::forward);
  EXPECT_NEAR(out[1].real(), std::cos(2 * M_PI / 3), 1e-15);
  EXPECT_NEAR(out[1].imag(), std::sin(2 * M_PI / 3), 1e-15);

  const std::vector<complex> single{complex{3.0, -2.0}};
  EXPECT_EQ(dft(single, Direction::inverse)[0], (complex{3.0, -2.0}));

  EXPECT_THROW(dft(std::vector<complex>{}, Direction::forward), std::invalid_argument);
}

TEST(Dft, MatchesQuadraticDefinition) {
  for (std::size_t n : {std::size_t{2}, std::size_t{8}, std::size_t{97}, std::size_t{100}, std::size_t{256}}) {
    const auto v = random_vector(n, n);
    const auto fwd = dft(v, Direction::forward);
    const auto inv = dft(v, Direction::inverse);
    const auto ref_fwd = oracle::naive_dft(v, +1);
    const auto ref_inv = oracle::naive_dft(v, -1);
    EXPECT_LT(max_diff(fwd, ref_fwd), 1e-12 * n) << n;
    EXPECT_LT(max_diff(inv, ref_inv), 1e-12 * n) << n;
  }
}

TEST(Dft, RoundTripIsScaledIdentity) {
  for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{5}, std::size_t{97}, std::size_t{1009},
                        std::size_t{4096}, std::size_t{100003}}) {
    const auto v = random_vector(n, 17 + n);
    auto back = dft(dft(v, Direction::forward), Direction::inverse);
    for (auto& z : back) z /= static_cast<double>(n);
    EXPECT_LT(max_diff(back, v), 1e-12 * std::log2(static_cast<double>(n) + 1.0) + 1e-15) << n;
  }
}

TEST(Dft, ParsevalHolds) {
  const auto v = random_vector(1009, 4);
  const auto f = dft(v, Direction::forward);
  double lhs = 0.0, rhs = 0.0;
  for (const auto& z : v) lhs += std::norm(z);
  for (const auto& z : f) rhs += std::norm(z);
  EXPECT_NEAR(rhs, 1009.0 * lhs, 1e-10 * rhs);
}

TEST(AllCompleteSums, MatchesDirectEvaluatorForSmallPrimes) {
  for (u64 p : {u64{2}, u64{3}, u64{5}, u64{7}, u64{101}, u64{1009}}) {
    const Modulus m(p);
    for (i64 b : {i64{0}, i64{1}, static_cast<i64>(p) - 1, i64{-7}}) {
      const SpectrumVector spec = all_complete_sums(b, m);
      ASSERT_EQ(spec.values().size(), p);
      EXPECT_TRUE(spec.is_complete());
      for (u64 a = 0; a < p; ++a) {
        const SumValue direct = complete_kloosterman(SumParams(static_cast<i64>(a), b, m));
        ASSERT_LT(std::abs(spec[a] - direct.value()), 1e-8 * static_cast<double>(p)) << a << "," << b << "," << p;
      }
    }
  }
}

TEST(AllCompleteSums, SpotChecksAgainstOracleAtLargerPrime) {
  const u64 p = 10007;
  const SpectrumVector spec = all_complete_sums(3, Modulus(p));
  std::mt19937_64 gen(8);
  for (int i = 0; i < 5; ++i) {
    const i64 a = static_cast<i64>(gen() % p);
    const oracle::cplx ref = oracle::kloosterman(a, 3, static_cast<i64>(p));
    EXPECT_NEAR(spec[static_cast<u64>(a)].real(), static_cast<double>(ref.real()), 1e-8 * p);
    EXPECT_NEAR(spec[static_cast<u64>(a)].imag(), static_cast<double>(ref.imag()), 1e-8 * p);
  }
  EXPECT_EQ(spec.at_frequency(-1), spec[p - 1]);
}

TEST(AllCompleteSums, RejectsComposite) {
  EXPECT_THROW(all_complete_sums(1, Modulus(15)), NotPrime);
}

TEST(AllIncompleteSums, MatchesDirectEvaluator) {
  std::mt19937_64 gen(21);
  for (u64 p : {u64{5}, u64{101}, u64{1009}}) {
    const Modulus m(p);
    for (int trial = 0; trial < 4; ++trial) {
      const i64 b = 1 + static_cast<i64>(gen() % (p - 1));
      const IntervalSpec iv{static_cast<i64>(gen() % (2 * p)) - static_cast<i64>(p), gen() % (p + 1)};
      const SpectrumVector spec = all_incomplete_sums(b, m, iv);
      EXPECT_FALSE(spec.is_complete());
      ASSERT_TRUE(spec.interval().has_value());
      EXPECT_EQ(*spec.interval(), iv);
      for (u64 a = 0; a < p; ++a) {
        const SumValue direct = incomplete_kloosterman(SumParams(static_cast<i64>(a), b, m), iv);
        ASSERT_LT(std::abs(spec[a] - direct.value()), 1e-8 * static_cast<double>(p));
      }
    }
  }
}

TEST(AllIncompleteSums, EdgeCases) {
  const Modulus m(11);
  const SpectrumVector empty = all_incomplete_sums(2, m, {5, 0});
  for (const auto& z : empty.values()) EXPECT_EQ(z, complex(0.0, 0.0));
  EXPECT_THROW(all_incomplete_sums(2, m, {0, 12}), IntervalTooLong);

  const SpectrumVector full = all_incomplete_sums(2, m, {-4, 11});
  const SpectrumVector complete = all_complete_sums(2, m);
  EXPECT_LT(max_diff(full.values(), complete.values()), 1e-12);
}

TEST(FullPeriodTwistedSum, ClosedForm) {
  const Modulus p(7);
  EXPECT_EQ(full_period_twisted_sum(3, 0, p), complex(0.0, 0.0));
  EXPECT_EQ(full_period_twisted_sum(3, 14, p), complex(0.0, 0.0));
  // m = 2 has inverse 4; -b m^{-1} = -12 = 2 mod 7.
  const complex z = full_period_twisted_sum(3, 2, p);
  EXPECT_NEAR(z.real(), 7.0 * std::cos(2 * M_PI * 2 / 7), 1e-12);
  EXPECT_NEAR(z.imag(), 7.0 * std::sin(2 * M_PI * 2 / 7), 1e-12);
}

TEST(WindowedMeanValue, FrozenExample) {
  const Modulus p(101);
  const SpectrumVector spec = all_complete_sums(1, p);
  const SumValue s = windowed_mean_value(1, p, 3, 10.0, 20.0, spec);
  EXPECT_NEAR(s.re, 2.33746312323092, 1e-10);
  EXPECT_NEAR(s.im, -26.32728186496107, 1e-10);
  EXPECT_EQ(s.term_count, 20U);
}

TEST(WindowedMeanValue, MatchesOracleAndWholePeriods) {
  const i64 p = 31;
  const Modulus m(static_cast<u64>(p));
  const SpectrumVector spec = all_complete_sums(5, m);
  for (double x : {-40.5, -3.0, 0.0, 7.25}) {
    for (double y : {0.5, 1.0, 13.0, 31.0, 62.0, 100.7}) {
      for (i64 mm : {0, 1, 9}) {
        oracle::cplx ref{0, 0};
        for (i64 a = static_cast<i64>(std::floor(x)) + 1; a <= static_cast<i64>(std::floor(x + y)); ++a) {
          ref += oracle::kloosterman(a, 5, p) * oracle::e(static_cast<long double>(oracle::mod(mm * a, p)) / p);
        }
        const SumValue s = windowed_mean_value(5, m, mm, x, y, spec);
        ASSERT_NEAR(s.re, static_cast<double>(ref.real()), 1e-9 * p) << x << " " << y << " " << mm;
        ASSERT_NEAR(s.im, static_cast<double>(ref.imag()), 1e-9 * p) << x << " " << y << " " << mm;
      }
    }
  }
}

TEST(WindowedMeanValue, IsAdditiveAcrossSplits) {
  const Modulus p(211);
  const SpectrumVector spec = all_complete_sums(17, p);
  const SumValue whole = windowed_mean_value(17, p, 40, -100.0, 900.0, spec);
  const SumValue left = windowed_mean_value(17, p, 40, -100.0, 333.0, spec);
  const SumValue right = windowed_mean_value(17, p, 40, 233.0, 567.0, spec);
  EXPECT_NEAR(left.re + right.re, whole.re, 1e-8 * 900);
  EXPECT_NEAR(left.im + right.im, whole.im, 1e-8 * 900);
  EXPECT_EQ(left.term_count + right.term_count, whole.term_count);
}

TEST(WindowedMeanValue, ValidatesInputs) {
  const Modulus p(13);
  const SpectrumVector spec = all_complete_sums(2, p);
  EXPECT_THROW(windowed_mean_value(2, p, 1, 0.0, 0.0, spec), std::invalid_argument);
  EXPECT_THROW(windowed_mean_value(3, p, 1, 0.0, 5.0, spec), std::invalid_argument);
  EXPECT_THROW(windowed_mean_value(2, Modulus(17), 1, 0.0, 5.0, spec), std::invalid_argument);
  const SpectrumVector partial = all_incomplete_sums(2, p, {0, 5});
  EXPECT_THROW(windowed_mean_value(2, p, 1, 0.0, 5.0, partial), std::invalid_argument);
  EXPECT_NO_THROW(windowed_mean_value(15, p, 1, 0.0, 5.0, spec));  // 15 = 2 mod 13
}
