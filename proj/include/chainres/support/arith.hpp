#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>

namespace chainres {

class ArithmeticOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

using i64 = std::int64_t;

inline i64 checked_add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("integer overflow in addition");
  return r;
}

inline i64 checked_sub(i64 a, i64 b) {
  i64 r;
  if (__builtin_sub_overflow(a, b, &r)) throw ArithmeticOverflow("integer overflow in subtraction");
  return r;
}

inline i64 checked_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("integer overflow in multiplication");
  return r;
}

/// Least nonnegative residue; m == 0 means no reduction (the integers).
inline i64 reduce(i64 a, i64 m) {
  if (m == 0) return a;
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

inline i64 gcd(i64 a, i64 b) { return std::gcd(a, b); }

/// Extended gcd: returns g = gcd(a,b) >= 0 with a*x + b*y = g.
inline i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
  i64 x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    i64 q = a / b;
    i64 t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
    t = y0 - q * y1;
    y0 = y1;
    y1 = t;
  }
  if (a < 0) {
    a = -a;
    x0 = -x0;
    y0 = -y0;
  }
  x = x0;
  y = y0;
  return a;
}

inline bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Multiplicative inverse of a modulo m, if it exists.
inline bool mod_inverse(i64 a, i64 m, i64& inv) {
  i64 x, y;
  i64 g = ext_gcd(reduce(a, m), m, x, y);
  if (g != 1) return false;
  inv = reduce(x, m);
  return true;
}

/// a^e saturating at `cap` (returns cap + 1 on overflow of the cap).
inline i64 saturating_pow(i64 a, i64 e, i64 cap) {
  i64 r = 1;
  for (i64 i = 0; i < e; ++i) {
    if (a != 0 && r > cap / a) return cap + 1;
    r *= a;
  }
  return r;
}

}  // namespace chainres
