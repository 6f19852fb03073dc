#pragma once

#include <string>
#include <vector>

#include "core/common.hpp"

namespace atlas {

// Element of the cyclotomic field Q(zeta_N), stored on the power basis
// 1, z, ..., z^(phi(N)-1) modulo the N-th cyclotomic polynomial.  Rationals
// are level 1; mixed-level arithmetic lifts both sides to the lcm level.
class CyclotomicNumber {
 public:
  CyclotomicNumber() : CyclotomicNumber(Rat(0)) {}
  CyclotomicNumber(Int v) : CyclotomicNumber(Rat(long(v))) {}
  CyclotomicNumber(const Rat& v) : level_(1), c_{v} {}

  static CyclotomicNumber zeta_power(Int level, Int k);
  // Coefficients on the power basis (size at most phi(level); padded).
  static CyclotomicNumber from_coeffs(Int level, std::vector<Rat> coeffs);

  Int level() const { return level_; }
  const std::vector<Rat>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  Rat rational_value() const;  // fails unless is_rational()

  CyclotomicNumber lifted_to(Int level) const;  // current level must divide
  // Galois action zeta -> zeta^t for gcd(t, level) = 1; t = -1 conjugates.
  CyclotomicNumber galois(Int t) const;
  CyclotomicNumber conj() const { return galois(-1); }
  CyclotomicNumber inverse() const;  // fails on zero

  CyclotomicNumber operator-() const;
  friend CyclotomicNumber operator+(const CyclotomicNumber& a, const CyclotomicNumber& b);
  friend CyclotomicNumber operator-(const CyclotomicNumber& a, const CyclotomicNumber& b);
  friend CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b);
  friend CyclotomicNumber operator/(const CyclotomicNumber& a, const CyclotomicNumber& b);
  friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b);
  friend bool operator!=(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    return !(a == b);
  }

  std::string str() const;  // e.g. "1/2*z^3 - 2" with z = zeta_level

 private:
  Int level_ = 1;
  std::vector<Rat> c_;  // size phi(level_)
  CyclotomicNumber(Int level, std::vector<Rat> c) : level_(level), c_(std::move(c)) {}
  static std::pair<CyclotomicNumber, CyclotomicNumber> promoted(
      const CyclotomicNumber& a, const CyclotomicNumber& b);
};

// Monic N-th cyclotomic polynomial as low-to-high rational coefficients.
std::vector<Rat> cyclotomic_polynomial(Int n);

}  // namespace atlas
