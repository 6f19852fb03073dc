#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "core/common.hpp"

namespace atlas {

// 2x2 matrix with entries reduced into [0, n).  The modulus is carried by
// the surrounding context (group, operation argument), not the matrix.
struct Mat2 {
  Int a = 1, b = 0, c = 0, d = 1;

  bool operator==(const Mat2&) const = default;
};

inline Mat2 mat_identity() { return {1, 0, 0, 1}; }
inline Mat2 mat_minus_identity(Int n) { return {mod_ll(-1, n), 0, 0, mod_ll(-1, n)}; }

inline Mat2 mat_reduce(const Mat2& m, Int n) {
  return {mod_ll(m.a, n), mod_ll(m.b, n), mod_ll(m.c, n), mod_ll(m.d, n)};
}

inline Mat2 mat_mul(const Mat2& x, const Mat2& y, Int n) {
  return {mod_ll(x.a * y.a + x.b * y.c, n), mod_ll(x.a * y.b + x.b * y.d, n),
          mod_ll(x.c * y.a + x.d * y.c, n), mod_ll(x.c * y.b + x.d * y.d, n)};
}

inline Int mat_det(const Mat2& m, Int n) { return mod_ll(m.a * m.d - m.b * m.c, n); }
inline Int mat_trace(const Mat2& m, Int n) { return mod_ll(m.a + m.d, n); }

inline bool mat_is_invertible(const Mat2& m, Int n) {
  return is_unit_mod(mat_det(m, n), n);
}

inline Mat2 mat_inverse(const Mat2& m, Int n) {
  Int det = mat_det(m, n);
  Int di = inv_mod(det, n);
  return {mod_ll(m.d * di, n), mod_ll(-m.b * di, n), mod_ll(-m.c * di, n),
          mod_ll(m.a * di, n)};
}

inline Mat2 mat_pow(Mat2 base, Int exp, Int n) {
  Mat2 result = mat_identity();
  while (exp > 0) {
    if (exp & 1) result = mat_mul(result, base, n);
    base = mat_mul(base, base, n);
    exp >>= 1;
  }
  return result;
}

// Multiplicative order; matrices here always lie in a finite group.
inline Int mat_order(const Mat2& m, Int n) {
  Mat2 x = m;
  Int ord = 1;
  const Mat2 id = mat_identity();
  while (!(x == id)) {
    x = mat_mul(x, m, n);
    ++ord;
    if (ord > n * n * n * n)
      fail(ErrorCode::Internal, "matrix order runaway (element not invertible?)");
  }
  return ord;
}

// Injective packing used for hashing and canonical sorting.
inline std::uint64_t mat_key(const Mat2& m, Int n) {
  return ((std::uint64_t(m.a) * n + m.b) * n + m.c) * n + m.d;
}

inline Mat2 mat_from_key(std::uint64_t key, Int n) {
  Mat2 m;
  m.d = Int(key % n);
  key /= n;
  m.c = Int(key % n);
  key /= n;
  m.b = Int(key % n);
  key /= n;
  m.a = Int(key);
  return m;
}

inline Mat2 mat_conj(const Mat2& g, const Mat2& m, Int n) {
  return mat_mul(mat_mul(g, m, n), mat_inverse(g, n), n);
}

// Entrywise CRT glueing of x mod m and y mod k (m, k coprime).
inline Mat2 mat_crt(const Mat2& x, Int m, const Mat2& y, Int k) {
  return {crt_pair(x.a, m, y.a, k), crt_pair(x.b, m, y.b, k),
          crt_pair(x.c, m, y.c, k), crt_pair(x.d, m, y.d, k)};
}

// Serialization used across CLI and catalog: [[a,b],[c,d]].
std::string mat_to_string(const Mat2& m);

// Parses "a,b,c,d" (one matrix) used in generator specs.
Mat2 mat_parse_csv(const std::string& text);

// Parses "a,b,c,d;a,b,c,d;..." into a generator list.
std::vector<Mat2> parse_generator_spec(const std::string& text);

}  // namespace atlas
