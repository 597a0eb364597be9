#pragma once

// Arbitrary-length discrete Fourier transform. Power-of-two lengths use an
// iterative radix-2 kernel; every other length goes through the Bluestein
// chirp factorization into a power-of-two cyclic convolution.

#include <bit>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "kloost/compensated.hpp"
#include "kloost/errors.hpp"

namespace kloost {

enum class Direction {
  forward,  // X[k] = sum_j v[j] e(jk/n)
  inverse,  // X[k] = sum_j v[j] e(-jk/n), unnormalized
};

inline constexpr std::size_t kMaxDftLength = std::size_t{1} << 28;
inline constexpr std::size_t kMaxConvolutionLength = std::size_t{1} << 29;

namespace detail {

// In-place radix-2 transform with kernel e(sign*jk/n). Twiddles are taken
// from exact residues, never from a multiplicative recurrence.
inline void fft_pow2(std::vector<complex>& a, int sign) {
  const std::size_t n = a.size();
  if (n <= 1) return;
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1U;
    for (; j & bit; bit >>= 1U) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  std::vector<complex> twiddle(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const complex w = unit_root(k, n);
    twiddle[k] = sign > 0 ? w : std::conj(w);
  }
  for (std::size_t len = 2; len <= n; len <<= 1U) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const complex u = a[start + j];
        const complex v = a[start + j + half] * twiddle[j * stride];
        a[start + j] = u + v;
        a[start + j + half] = u - v;
      }
    }
  }
}

inline std::vector<complex> bluestein(std::span<const complex> v, int sign) {
  const std::size_t n = v.size();
  const std::size_t m = std::bit_ceil(2 * n - 1);
  if (m > kMaxConvolutionLength) {
    throw SizeOverflow("Bluestein convolution length " + std::to_string(m) +
                       " exceeds capacity");
  }
  // chirp[j] = e(sign * j^2 / (2n)), j^2 reduced exactly before the trig call.
  const u64 two_n = 2 * static_cast<u64>(n);
  std::vector<complex> chirp(n);
  for (std::size_t j = 0; j < n; ++j) {
    const u64 sq = static_cast<u64>(static_cast<u128>(j) * j % two_n);
    const complex w = unit_root(sq, two_n);
    chirp[j] = sign > 0 ? w : std::conj(w);
  }
  std::vector<complex> a(m), b(m);
  for (std::size_t j = 0; j < n; ++j) a[j] = v[j] * chirp[j];
  b[0] = std::conj(chirp[0]);
  for (std::size_t j = 1; j < n; ++j) {
    b[j] = std::conj(chirp[j]);
    b[m - j] = b[j];
  }
  fft_pow2(a, +1);
  fft_pow2(b, +1);
  for (std::size_t i = 0; i < m; ++i) a[i] *= b[i];
  fft_pow2(a, -1);
  const double scale = 1.0 / static_cast<double>(m);
  std::vector<complex> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * scale * chirp[k];
  return out;
}

}  // namespace detail

/// DFT of any length 1 <= n <= 2^28. inverse(forward(v)) == n * v.
inline std::vector<complex> dft(std::span<const complex> v, Direction direction) {
  const std::size_t n = v.size();
  if (n == 0) throw std::invalid_argument("dft of an empty sequence");
  if (n > kMaxDftLength) {
    throw SizeOverflow("dft length " + std::to_string(n) + " exceeds 2^28");
  }
  const int sign = direction == Direction::forward ? +1 : -1;
  if (std::has_single_bit(n)) {
    std::vector<complex> a(v.begin(), v.end());
    detail::fft_pow2(a, sign);
    return a;
  }
  return detail::bluestein(v, sign);
}

}  // namespace kloost
