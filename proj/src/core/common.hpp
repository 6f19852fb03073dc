#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include <gmpxx.h>

namespace atlas {

using Int = std::int64_t;
using Rat = mpq_class;
using Zi = mpz_class;

// Error codes shared between the C++ core (as AtlasError::code) and the
// extern-C facade (as plain ints).  Keep in sync with gl2atlas.h.
enum class ErrorCode : int {
  Ok = 0,
  InvalidArgument = 1,
  NonInvertibleGenerator = 2,
  ModulusMismatch = 3,
  NotADivisor = 4,
  BadGluing = 5,
  UnsupportedModulus = 6,
  BadPair = 7,
  InsufficientPrecision = 8,
  NoSolution = 9,
  DataError = 10,
  IoError = 11,
  Internal = 12,
  NonSurjectiveDeterminant = 13,
  NotBorel = 14,
  TooLarge = 15,
  MissingRankFact = 16,
  UnsupportedLevel = 17,
  SingularModel = 18,
  DegreeMismatch = 19,
};

class AtlasError : public std::runtime_error {
 public:
  AtlasError(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw AtlasError(code, message);
}

inline Int gcd_ll(Int a, Int b) { return std::gcd(a, b); }
inline Int lcm_ll(Int a, Int b) { return std::lcm(a, b); }

inline Int mod_ll(Int a, Int n) {
  Int r = a % n;
  return r < 0 ? r + n : r;
}

// Modular inverse; fails when gcd(a, n) != 1.
inline Int inv_mod(Int a, Int n) {
  Int t = 0, new_t = 1, r = n, new_r = mod_ll(a, n);
  while (new_r != 0) {
    Int q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) fail(ErrorCode::InvalidArgument, "element not invertible mod n");
  return mod_ll(t, n);
}

inline bool is_unit_mod(Int a, Int n) { return std::gcd(mod_ll(a, n), n) == 1; }

// Extended gcd: returns g = gcd(a, b) >= 0 and x, y with a*x + b*y = g.
inline Int ext_gcd(Int a, Int b, Int& x, Int& y) {
  Int r0 = a, r1 = b, x0 = 1, x1 = 0, y0 = 0, y1 = 1;
  while (r1 != 0) {
    Int q = r0 / r1;
    r0 -= q * r1;
    std::swap(r0, r1);
    x0 -= q * x1;
    std::swap(x0, x1);
    y0 -= q * y1;
    std::swap(y0, y1);
  }
  if (r0 < 0) {
    r0 = -r0;
    x0 = -x0;
    y0 = -y0;
  }
  x = x0;
  y = y0;
  return r0;
}

inline Int pow_mod(Int base, Int exp, Int n) {
  Int result = 1 % n;
  base = mod_ll(base, n);
  while (exp > 0) {
    if (exp & 1) result = result * base % n;
    base = base * base % n;
    exp >>= 1;
  }
  return result;
}

// Euler phi for the small moduli used here.
inline Int euler_phi(Int n) {
  Int result = n;
  for (Int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

// CRT for coprime moduli: value congruent to a mod m and b mod k.
inline Int crt_pair(Int a, Int m, Int b, Int k) {
  Int u = inv_mod(m % k, k);
  Int t = mod_ll((b - a) % k * u, k);
  return a + m * t;
}

// mpq_class(num, den) does not canonicalize; this does.
inline Rat make_rat(Int num, Int den) {
  Rat r{long(num), long(den)};
  r.canonicalize();
  return r;
}

inline std::uint64_t hash_mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

}  // namespace atlas
