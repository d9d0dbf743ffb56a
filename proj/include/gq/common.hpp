#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace gq {

using i64 = std::int64_t;

// Thrown when a caller violates a documented precondition.
struct input_error : std::runtime_error {
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an operation would exceed a configured size bound.
struct resource_error : std::runtime_error {
  explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown on internal invariant violations (bugs, not user errors).
struct internal_error : std::runtime_error {
  explicit internal_error(const std::string& what) : std::runtime_error(what) {}
};

// Reduce into [0, n).
inline i64 mod_reduce(i64 x, i64 n) {
  x %= n;
  return x < 0 ? x + n : x;
}

// Extended gcd: returns (g, x, y) with a*x + b*y = g = gcd(a, b), g >= 0.
inline std::tuple<i64, i64, i64> extended_gcd(i64 a, i64 b) {
  i64 old_r = a, r = b;
  i64 old_s = 1, s = 0;
  i64 old_t = 0, t = 1;
  while (r != 0) {
    i64 q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * s;
    std::swap(old_s, s);
    old_t -= q * t;
    std::swap(old_t, t);
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

inline i64 gcd64(i64 a, i64 b) { return std::gcd(a, b); }
inline i64 lcm64(i64 a, i64 b) { return std::lcm(a, b); }

// Inverse of a mod n; requires gcd(a, n) = 1.
inline i64 mod_inverse(i64 a, i64 n) {
  auto [g, x, y] = extended_gcd(mod_reduce(a, n), n);
  if (g != 1) throw input_error("mod_inverse: element not invertible");
  return mod_reduce(x, n);
}

// Largest square-free divisor of n > 0.
inline i64 squarefree_part(i64 n) {
  if (n <= 0) throw input_error("squarefree_part: need n > 0");
  i64 out = 1;
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      if (e % 2 == 1) out *= p;
    }
  }
  return out * n;  // leftover n is prime (or 1) with exponent 1
}

// Mixed-radix index helpers: first digit is most significant.
inline i64 tuple_to_index(const std::vector<i64>& digits, const std::vector<i64>& radix) {
  i64 idx = 0;
  for (std::size_t i = 0; i < radix.size(); ++i) idx = idx * radix[i] + digits[i];
  return idx;
}

inline std::vector<i64> index_to_tuple(i64 idx, const std::vector<i64>& radix) {
  std::vector<i64> digits(radix.size());
  for (std::size_t i = radix.size(); i-- > 0;) {
    digits[i] = idx % radix[i];
    idx /= radix[i];
  }
  return digits;
}

inline i64 checked_pow(i64 base, int exp, i64 limit) {
  i64 out = 1;
  for (int i = 0; i < exp; ++i) {
    if (out > limit / base) throw resource_error("size bound exceeded");
    out *= base;
  }
  return out;
}

}  // namespace gq
