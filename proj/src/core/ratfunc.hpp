#pragma once

#include <string>

#include "core/polynomial.hpp"

namespace atlas {

// Rational function over Q in canonical form: numerator and denominator
// coprime, denominator monic and nonzero.
class RationalFunction {
 public:
  RationalFunction() : den_(Poly<Rat>::constant(Rat(1))) {}
  explicit RationalFunction(Poly<Rat> num)
      : num_(std::move(num)), den_(Poly<Rat>::constant(Rat(1))) {}
  RationalFunction(Poly<Rat> num, Poly<Rat> den) {
    if (den.is_zero())
      fail(ErrorCode::InvalidArgument, "rational function with zero denominator");
    Poly<Rat> g = poly_gcd(num, den);
    if (g.degree() > 0) {
      num = num / g;
      den = den / g;
    }
    Rat lead = den.leading();
    num_ = num.scaled(Rat(1) / lead);
    den_ = den.scaled(Rat(1) / lead);
  }

  static RationalFunction constant(const Rat& v) {
    return RationalFunction(Poly<Rat>::constant(v));
  }
  static RationalFunction t() { return RationalFunction(Poly<Rat>::x()); }

  const Poly<Rat>& num() const { return num_; }
  const Poly<Rat>& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  Rat constant_value() const {
    if (!is_constant())
      fail(ErrorCode::InvalidArgument, "not a constant rational function");
    return num_.coeff(0);
  }
  // Degree as a map P^1 -> P^1.
  int map_degree() const { return std::max(num_.degree(), den_.degree()); }

  bool operator==(const RationalFunction& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const RationalFunction& o) const { return !(*this == o); }

  RationalFunction operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend RationalFunction operator+(const RationalFunction& a,
                                    const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator-(const RationalFunction& a,
                                    const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator*(const RationalFunction& a,
                                    const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFunction operator/(const RationalFunction& a,
                                    const RationalFunction& b) {
    if (b.is_zero())
      fail(ErrorCode::InvalidArgument, "division by zero rational function");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
  }
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

  RationalFunction pow(Int e) const {
    if (e < 0) return RationalFunction(den_, num_).pow(-e);
    RationalFunction r = constant(Rat(1)), base = *this;
    while (e > 0) {
      if (e & 1) r *= base;
      base *= base;
      e >>= 1;
    }
    return r;
  }

  bool has_pole_at(const Rat& v) const { return den_.eval(v) == Rat(0); }
  Rat eval(const Rat& v) const {
    Rat d = den_.eval(v);
    if (d == Rat(0))
      fail(ErrorCode::InvalidArgument, "evaluating a rational function at a pole");
    return num_.eval(v) / d;
  }

 private:
  Poly<Rat> num_;
  Poly<Rat> den_;
};

// Exact composition f(g(t)) in canonical form; g must be nonconstant.
RationalFunction compose(const RationalFunction& f, const RationalFunction& g);

// Class of a nonzero element of Q(t) modulo squares, tracked as a signed
// squarefree integer times a monic squarefree polynomial.
struct SquareClass {
  Rat constant = Rat(1);  // +/- squarefree positive integer
  Poly<Rat> poly = Poly<Rat>::constant(Rat(1));  // monic squarefree

  bool operator==(const SquareClass& o) const {
    return constant == o.constant && poly == o.poly;
  }
  bool operator!=(const SquareClass& o) const { return !(*this == o); }
  bool is_trivial() const { return constant == Rat(1) && poly.degree() <= 0; }
  std::string str() const;
};

// Squarefree part of a nonzero integer (positive input).
Zi squarefree_part(Zi n);

// Square class of a nonzero rational function; throws InvalidArgument on 0.
SquareClass square_class(const RationalFunction& f);
SquareClass square_class(const Poly<Rat>& f);

// Product in the square-class group (re-reduced).
SquareClass square_class_mul(const SquareClass& a, const SquareClass& b);

}  // namespace atlas
