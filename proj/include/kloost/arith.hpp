#pragma once

// Exact 64-bit integer and modular arithmetic.

#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "kloost/errors.hpp"

namespace kloost {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline u64 mul_mod(u64 x, u64 y, u64 c) {
  return static_cast<u64>(static_cast<u128>(x) * y % c);
}

inline u64 pow_mod(u64 base, u64 exp, u64 c) {
  u64 result = 1 % c;
  base %= c;
  while (exp != 0) {
    if (exp & 1U) result = mul_mod(result, base, c);
    base = mul_mod(base, base, c);
    exp >>= 1U;
  }
  return result;
}

// Reduces any signed integer into [0, c-1].
inline u64 reduce(i64 x, u64 c) {
  if (x >= 0) return static_cast<u64>(x) % c;
  // -(x+1) avoids overflow at INT64_MIN.
  const u64 neg = (static_cast<u64>(-(x + 1)) + 1U) % c;
  return neg == 0 ? 0 : c - neg;
}

inline u64 abs_u64(i64 x) {
  return x >= 0 ? static_cast<u64>(x) : static_cast<u64>(-(x + 1)) + 1U;
}

/// Deterministic Miller-Rabin; the first twelve primes are a complete
/// witness set below 3.3e24, which covers every 64-bit input.
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  constexpr u64 kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 q : kWitnesses) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (u64 a : kWitnesses) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// A modulus c >= 2 with its primality cached.
class Modulus {
 public:
  explicit Modulus(u64 c) : c_(c) {
    if (c < 2) throw std::invalid_argument("modulus must be >= 2, got " + std::to_string(c));
    is_prime_ = kloost::is_prime(c);
  }

  u64 value() const noexcept { return c_; }
  bool is_prime() const noexcept { return is_prime_; }

  u64 reduce(i64 x) const { return kloost::reduce(x, c_); }

  friend bool operator==(const Modulus&, const Modulus&) = default;

 private:
  u64 c_;
  bool is_prime_ = false;
};

inline Modulus require_prime(u64 p) {
  Modulus m(p);
  if (!m.is_prime()) throw NotPrime(std::to_string(p) + " is not prime");
  return m;
}

inline void require_prime(const Modulus& p) {
  if (!p.is_prime()) throw NotPrime(std::to_string(p.value()) + " is not prime");
}

namespace detail {

// Inverse of a residue r in [0, c-1]; returns 0 when gcd(r, c) != 1.
inline u64 inverse_or_zero(u64 r, u64 c) {
  // Extended Euclid on signed 128-bit coefficients.
  __int128 old_r = static_cast<__int128>(r), cur_r = static_cast<__int128>(c);
  __int128 old_s = 1, cur_s = 0;
  while (cur_r != 0) {
    const __int128 q = old_r / cur_r;
    const __int128 tr = old_r - q * cur_r;
    old_r = cur_r;
    cur_r = tr;
    const __int128 ts = old_s - q * cur_s;
    old_s = cur_s;
    cur_s = ts;
  }
  if (old_r != 1) return 0;
  __int128 inv = old_s % static_cast<__int128>(c);
  if (inv < 0) inv += c;
  return static_cast<u64>(inv);
}

}  // namespace detail

/// x^{-1} mod c in [1, c-1]. Negative x is reduced first.
inline u64 mod_inverse(i64 x, const Modulus& c) {
  const u64 r = c.reduce(x);
  const u64 inv = detail::inverse_or_zero(r, c.value());
  if (inv == 0) {
    throw NonInvertible(0, std::to_string(x) + " is not invertible modulo " +
                               std::to_string(c.value()));
  }
  return inv;
}

/// Elementwise inverses via prefix products and a single extended-gcd call.
inline std::vector<u64> batch_inverse_residues(std::span<const u64> residues, u64 c) {
  const std::size_t n = residues.size();
  std::vector<u64> out(n);
  if (n == 0) return out;
  std::vector<u64> prefix(n);
  u64 acc = 1 % c;
  for (std::size_t i = 0; i < n; ++i) {
    acc = mul_mod(acc, residues[i], c);
    prefix[i] = acc;
  }
  u64 inv = detail::inverse_or_zero(acc, c);
  if (inv == 0) {
    for (std::size_t i = 0; i < n; ++i) {
      if (std::gcd(residues[i], c) != 1) {
        throw NonInvertible(i, "element " + std::to_string(i) + " (residue " +
                                   std::to_string(residues[i]) +
                                   ") is not invertible modulo " + std::to_string(c));
      }
    }
  }
  for (std::size_t i = n; i-- > 1;) {
    out[i] = mul_mod(inv, prefix[i - 1], c);
    inv = mul_mod(inv, residues[i], c);
  }
  out[0] = inv;
  return out;
}

inline std::vector<u64> batch_inverse(std::span<const i64> xs, const Modulus& c) {
  std::vector<u64> residues(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) residues[i] = c.reduce(xs[i]);
  return batch_inverse_residues(residues, c.value());
}

/// gcd(|a|, |b|, c) with gcd(0, n) = n.
inline u64 gcd3(i64 a, i64 b, u64 c) {
  return std::gcd(std::gcd(abs_u64(a), abs_u64(b)), c);
}

inline constexpr u64 kDivisorCountLimit = 1'000'000'000'000ULL;

/// Number of positive divisors of c, by trial division (c <= 1e12).
inline u64 divisor_count(u64 c) {
  if (c < 1 || c > kDivisorCountLimit) {
    throw std::invalid_argument("divisor_count requires 1 <= c <= 1e12");
  }
  u64 count = 1;
  u64 rest = c;
  for (u64 d = 2; d * d <= rest; ++d) {
    u64 e = 0;
    while (rest % d == 0) {
      rest /= d;
      ++e;
    }
    count *= e + 1;
  }
  if (rest > 1) count *= 2;
  return count;
}

/// Units in (M, M+L] for a prime modulus: L minus the multiples of p.
inline u64 prime_unit_count(i64 M, u64 L, u64 p) {
  auto floor_div = [p](i64 x) -> i64 {
    const i64 q = x / static_cast<i64>(p);
    return (x % static_cast<i64>(p) < 0) ? q - 1 : q;
  };
  const i64 hi = M + static_cast<i64>(L);
  return L - static_cast<u64>(floor_div(hi) - floor_div(M));
}

inline u64 next_prime(u64 n) {
  if (n <= 2) return 2;
  if ((n & 1U) == 0) ++n;
  while (!is_prime(n)) n += 2;
  return n;
}

}  // namespace kloost
