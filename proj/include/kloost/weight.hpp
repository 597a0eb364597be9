#pragma once

// Smooth cutoff on [N, 2N] and the smoothed-level Poisson completion
//
//   sum_n phi(n) e((a(n+M) + b (n+M)^{-1})/p)
//     = (1/p) sum_n phihat(n/p) e(-Mn/p) S(n+a, b; p).
//
// phi is the indicator of [N+D, 2N-D] convolved with a unit-mass C-infinity
// bump of radius D, so it rises on [N, N+2D], equals 1 on [N+2D, 2N-2D] and
// falls on [2N-2D, 2N].

#include <algorithm>
#include <bit>
#include <cmath>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <boost/math/special_functions/trigamma.hpp>

#include "kloost/arith.hpp"
#include "kloost/compensated.hpp"
#include "kloost/errors.hpp"
#include "kloost/expsum.hpp"
#include "kloost/spectral.hpp"

namespace kloost {

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on P_n.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendre(int order) : nodes(order), weights(order) {
    if (order < 1) throw std::invalid_argument("quadrature order must be positive");
    for (int i = 0; i < order; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= order; ++k) {
          const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = pk;
        }
        dp = order * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      nodes[i] = x;
      weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }
};

/// Normalized cumulative integral of exp(-1/(t(1-t))) on [0, 1], tabulated
/// with exact slopes and evaluated by monotone cubic Hermite interpolation.
class EdgeProfile {
 public:
  static constexpr std::size_t kIntervals = 8192;

  EdgeProfile() : value_(kIntervals + 1), slope_(kIntervals + 1) {
    const double h = 1.0 / kIntervals;
    const GaussLegendre gl(8);
    auto bump = [](double t) { return (t <= 0.0 || t >= 1.0) ? 0.0 : std::exp(-1.0 / (t * (1.0 - t))); };

    // Left half by cumulative quadrature; the right half follows from the
    // symmetry of the bump, which pins the midpoint at exactly 1/2.
    const std::size_t half = kIntervals / 2;
    std::vector<double> cumulative(half + 1, 0.0);
    CompensatedSum acc;
    for (std::size_t k = 0; k < half; ++k) {
      const double lo = k * h;
      double cell = 0.0;
      for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
        cell += gl.weights[q] * bump(lo + 0.5 * h * (gl.nodes[q] + 1.0));
      }
      acc.add(0.5 * h * cell);
      cumulative[k + 1] = acc.value();
    }
    const double mass = 2.0 * cumulative[half];
    for (std::size_t k = 0; k <= half; ++k) {
      value_[k] = cumulative[k] / mass;
      value_[kIntervals - k] = 1.0 - value_[k];
      slope_[k] = bump(k * h) / mass;
      slope_[kIntervals - k] = slope_[k];
    }
    value_[half] = 0.5;

    // Fritsch-Carlson limiter: guarantees monotone interpolants.
    for (std::size_t k = 0; k < kIntervals; ++k) {
      const double secant = (value_[k + 1] - value_[k]) / h;
      if (secant <= 0.0) {
        slope_[k] = slope_[k + 1] = 0.0;
        continue;
      }
      const double alpha = slope_[k] / secant;
      const double beta = slope_[k + 1] / secant;
      const double r2 = alpha * alpha + beta * beta;
      if (r2 > 9.0) {
        const double tau = 3.0 / std::sqrt(r2);
        slope_[k] = tau * alpha * secant;
        slope_[k + 1] = tau * beta * secant;
      }
    }
  }

  static const EdgeProfile& shared() {
    static const EdgeProfile profile;
    return profile;
  }

  // s in [0, 1]; clamps outside. The right half is read as 1 - F(1 - s) so
  // both halves share one interpolant and stay monotone to the last ulp.
  double operator()(double s) const noexcept {
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    if (s > 0.5) return 1.0 - left_half(1.0 - s);
    return left_half(s);
  }

  std::span<const double> table() const noexcept { return value_; }

 private:
  double left_half(double s) const noexcept {
    const double scaled = s * kIntervals;
    const std::size_t k = std::min(static_cast<std::size_t>(scaled), kIntervals - 1);
    const double t = scaled - static_cast<double>(k);
    if (t == 0.0) return value_[k];
    const double h = 1.0 / kIntervals;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    const double y = h00 * value_[k] + h10 * h * slope_[k] + h01 * value_[k + 1] + h11 * h * slope_[k + 1];
    return std::clamp(y, 0.0, 1.0);
  }

  std::vector<double> value_;
  std::vector<double> slope_;
};

/// Smooth cutoff with support [N, 2N], plateau [N+2D, 2N-2D] and
/// mollified edges of width 2D. Immutable.
class SmoothWindow {
 public:
  SmoothWindow(double n, double delta, int quadrature_order = 8)
      : n_(n), delta_(delta), quadrature_(quadrature_order), profile_(&EdgeProfile::shared()) {
    if (!(n > 0.0) || !(delta > 0.0) || !(4.0 * delta < n)) {
      throw DegenerateWindow("window needs N > 0, delta > 0 and 4 delta < N (N = " +
                             std::to_string(n) + ", delta = " + std::to_string(delta) + ")");
    }
  }

  double n() const noexcept { return n_; }
  double delta() const noexcept { return delta_; }
  double support_lo() const noexcept { return n_; }
  double support_hi() const noexcept { return 2.0 * n_; }
  double plateau_lo() const noexcept { return n_ + 2.0 * delta_; }
  double plateau_hi() const noexcept { return 2.0 * n_ - 2.0 * delta_; }
  // Exact integral of phi.
  double mass() const noexcept { return n_ - 2.0 * delta_; }
  int quadrature_order() const noexcept { return static_cast<int>(quadrature_.nodes.size()); }
  const GaussLegendre& quadrature() const noexcept { return quadrature_; }
  const EdgeProfile& profile() const noexcept { return *profile_; }

  double operator()(double t) const noexcept {
    if (t <= n_ || t >= 2.0 * n_) return 0.0;
    if (t < plateau_lo()) return (*profile_)((t - n_) / (2.0 * delta_));
    if (t > plateau_hi()) return (*profile_)((2.0 * n_ - t) / (2.0 * delta_));
    return 1.0;
  }

 private:
  double n_;
  double delta_;
  GaussLegendre quadrature_;
  const EdgeProfile* profile_;
};

inline SmoothWindow build_window(double n, double delta) { return SmoothWindow(n, delta); }

inline double window_eval(const SmoothWindow& w, double t) { return w(t); }

inline constexpr double kFourierTolerance = 1e-10;
inline constexpr std::size_t kMaxFourierPanels = std::size_t{1} << 20;

namespace detail {

// integral over [0,1] of F(s) e(-kappa s) ds with `panels` Gauss panels.
inline complex edge_integral(const SmoothWindow& w, double kappa, std::size_t panels) {
  const GaussLegendre& gl = w.quadrature();
  const EdgeProfile& profile = w.profile();
  const double h = 1.0 / static_cast<double>(panels);
  CompensatedComplexSum acc;
  for (std::size_t j = 0; j < panels; ++j) {
    const double mid = (static_cast<double>(j) + 0.5) * h;
    complex panel{0.0, 0.0};
    for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
      const double s = mid + 0.5 * h * gl.nodes[q];
      panel += gl.weights[q] * profile(s) * unit_phase(-kappa * s);
    }
    acc.add(0.5 * h * panel);
  }
  return acc.value();
}

}  // namespace detail

/// phihat(lambda) = integral of phi(x) e(-lambda x) dx. The plateau is done
/// in closed form; the rising edge is quadratured with panel doubling until
/// consecutive estimates agree to 1e-10 N, and the falling edge follows from
/// phi(x) = phi(3N - x).
inline complex window_fourier(const SmoothWindow& w, double lambda) {
  const double n = w.n();
  const double d = w.delta();
  const double width = n - 4.0 * d;
  const double x = std::numbers::pi * lambda * width;
  const double plateau = width * (x == 0.0 ? 1.0 : std::sin(x) / x);

  const double kappa = 2.0 * lambda * d;
  std::size_t panels = std::max<std::size_t>(4, std::bit_ceil(static_cast<std::size_t>(std::ceil(4.0 * std::abs(kappa))) + 1));
  complex prev = detail::edge_integral(w, kappa, panels);
  for (;;) {
    if (2 * panels > kMaxFourierPanels) {
      throw QuadratureNonConvergence("phihat quadrature did not converge at lambda = " +
                                     std::to_string(lambda));
    }
    panels *= 2;
    const complex next = detail::edge_integral(w, kappa, panels);
    const bool done = 4.0 * d * std::abs(next - prev) <= kFourierTolerance * n;
    prev = next;
    if (done) break;
  }
  // Rising edge shifted to the window centre: 2D e(lambda N/2) J.
  const complex edge = 2.0 * d * unit_phase(0.5 * lambda * n) * prev;
  return unit_phase(-1.5 * lambda * n) * (plateau + 2.0 * edge.real());
}

/// max over the grid of |phihat(lambda)| (1 + |lambda| N)^A / N.
inline double decay_constant(const SmoothWindow& w, int order, std::span<const double> lambda_grid) {
  if (lambda_grid.empty()) throw std::invalid_argument("decay_constant needs a nonempty grid");
  if (order < 0) throw std::invalid_argument("decay order must be nonnegative");
  double best = 0.0;
  for (double lambda : lambda_grid) {
    const double scaled = std::abs(window_fourier(w, lambda)) *
                          std::pow(1.0 + std::abs(lambda) * w.n(), order) / w.n();
    best = std::max(best, scaled);
  }
  return best;
}

/// Uniform grid of lambda >= 0 with lambda N running over [0, max_lambda_n].
inline std::vector<double> decay_grid(const SmoothWindow& w, double max_lambda_n, std::size_t points) {
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double frac = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
    grid[i] = frac * max_lambda_n / w.n();
  }
  return grid;
}

/// sum over integers n in [N, 2N] with (n+M, p) = 1 of
/// phi(n) e((a(n+M) + b (n+M)^{-1})/p).
inline complex smoothed_incomplete_sum(i64 a, i64 b, const Modulus& p, i64 M, const SmoothWindow& w) {
  require_prime(p);
  const i64 lo = static_cast<i64>(std::ceil(w.support_lo()));
  const i64 hi = static_cast<i64>(std::floor(w.support_hi()));
  if (hi < lo) return {0.0, 0.0};
  const u64 c = p.value();
  const u64 ar = p.reduce(a);
  const u64 br = p.reduce(b);
  const IntervalSpec range{M + lo - 1, static_cast<u64>(hi - lo + 1)};
  CompensatedComplexSum acc;
  detail::for_each_unit(range, c, true, [&](u64 offset, u64 x, u64 x_inv) {
    const double weight = w(static_cast<double>(lo + static_cast<i64>(offset)));
    if (weight == 0.0) return;
    const u64 phase = (mul_mod(ar, x, c) + mul_mod(br, x_inv, c)) % c;
    acc.add(weight * unit_root(phase, c));
  });
  return acc.value();
}

struct CompletionResult {
  complex smoothed_sum;
  complex completed_sum;
  u64 H = 0;
  double tail_estimate = 0.0;
  // A = 2 decay constant the tail estimate was built from.
  double decay_c2 = 0.0;

  double defect() const { return std::abs(smoothed_sum - completed_sum); }
};

inline constexpr double kDecayGridMaxLambdaN = 1e3;
inline constexpr std::size_t kDecayGridPoints = 1001;

/// 2 * sum_{n > H} (1 + nN/p)^{-2} = 2 (p/N)^2 trigamma(H + 1 + p/N).
inline double completion_tail_sum(u64 H, double n, u64 p) {
  const double ratio = static_cast<double>(p) / n;
  return 2.0 * ratio * ratio * boost::math::trigamma(static_cast<double>(H) + 1.0 + ratio);
}

/// Both sides of the smoothed Poisson completion, the right side truncated
/// to |n| <= H, with a tail bound C2 sqrt(p) sum_{|n|>H} (1 + |n|N/p)^{-2}.
inline CompletionResult poisson_completion(i64 a, i64 b, const Modulus& p, i64 M, const SmoothWindow& w,
                                           u64 H, const SpectrumVector& spectrum, double decay_c2) {
  require_prime(p);
  if (H < 1) throw std::invalid_argument("truncation height H must be >= 1");
  if (!spectrum.is_complete() || spectrum.p() != p || p.reduce(spectrum.b()) != p.reduce(b)) {
    throw std::invalid_argument("poisson_completion needs the complete spectrum for (b, p)");
  }
  const u64 c = p.value();
  const u64 mr = p.reduce(M);
  const double inv_p = 1.0 / static_cast<double>(c);
  CompensatedComplexSum acc;
  acc.add(window_fourier(w, 0.0) * spectrum.at_frequency(a));
  for (u64 k = 1; k <= H; ++k) {
    const complex fhat = window_fourier(w, static_cast<double>(k) * inv_p);
    const u64 shift = mul_mod(mr, k % c, c);
    // e(-Mk/p) for +k and e(+Mk/p) for -k.
    const complex twist = std::conj(unit_root(shift, c));
    acc.add(fhat * twist * spectrum.at_frequency(a + static_cast<i64>(k % c)));
    acc.add(std::conj(fhat) * std::conj(twist) * spectrum.at_frequency(a - static_cast<i64>(k % c)));
  }
  CompletionResult result;
  result.smoothed_sum = smoothed_incomplete_sum(a, b, p, M, w);
  result.completed_sum = acc.value() * inv_p;
  result.H = H;
  result.decay_c2 = decay_c2;
  result.tail_estimate = decay_c2 * std::sqrt(static_cast<double>(c)) * completion_tail_sum(H, w.n(), c);
  return result;
}

inline CompletionResult poisson_completion(i64 a, i64 b, const Modulus& p, i64 M, const SmoothWindow& w,
                                           u64 H, const SpectrumVector& spectrum) {
  const std::vector<double> grid = decay_grid(w, kDecayGridMaxLambdaN, kDecayGridPoints);
  return poisson_completion(a, b, p, M, w, H, spectrum, decay_constant(w, 2, grid));
}

}  // namespace kloost
