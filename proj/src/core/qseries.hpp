#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "core/common.hpp"

namespace atlas {

// Truncated Puiseux-style q-expansion: coefficients for exponents
// lo/den, (lo+1)/den, ..., (cut-1)/den; exponents >= cut/den are unknown
// (truncated), exponents < lo are exactly zero.  K is an exact field.
template <class K>
class QSeries {
 public:
  QSeries() : den_(1), lo_(0), cut_(0) {}
  QSeries(Int den, Int lo, Int cut, std::vector<K> coeffs)
      : den_(den), lo_(lo), cut_(cut), c_(std::move(coeffs)) {
    if (den_ < 1 || cut_ < lo_)
      fail(ErrorCode::InvalidArgument, "bad q-series window");
    c_.resize(std::size_t(cut_ - lo_));
  }

  static QSeries zero(Int den, Int cut) { return QSeries(den, cut, cut, {}); }
  static QSeries one(Int den, Int cut) { return monomial(K(1), 0, den, cut); }
  // c * q^(num/den), known below cut/den.
  static QSeries monomial(K c, Int num, Int den, Int cut) {
    if (num >= cut) return zero(den, cut);
    std::vector<K> v(std::size_t(cut - num));
    v[0] = std::move(c);
    return QSeries(den, num, cut, std::move(v));
  }

  Int den() const { return den_; }
  Int lo() const { return lo_; }
  Int cut() const { return cut_; }
  Rat cut_exponent() const { return make_rat(cut_, den_); }
  const std::vector<K>& raw() const { return c_; }

  bool known_zero() const {
    for (const K& v : c_)
      if (!(v == K())) return false;
    return true;
  }

  // Coefficient of q^(num/d); the exponent must be representable and below
  // the truncation point.
  K coeff(Int num, Int d) const {
    if ((num * den_) % d != 0)
      fail(ErrorCode::InvalidArgument, "exponent not on the series grid");
    Int idx = num * den_ / d;
    if (idx >= cut_)
      fail(ErrorCode::InsufficientPrecision, "coefficient beyond truncation");
    if (idx < lo_) return K();
    return c_[std::size_t(idx - lo_)];
  }

  std::optional<Rat> leading_exponent() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!(c_[i] == K())) return make_rat(lo_ + Int(i), den_);
    return std::nullopt;
  }
  K leading_coeff() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!(c_[i] == K())) return c_[i];
    fail(ErrorCode::InvalidArgument, "series has no visible leading term");
  }

  QSeries rescaled(Int newden) const {
    if (newden == den_) return *this;
    if (newden % den_ != 0)
      fail(ErrorCode::InvalidArgument, "series denominators are incompatible");
    Int s = newden / den_;
    QSeries r(newden, lo_ * s, cut_ * s, {});
    for (std::size_t i = 0; i < c_.size(); ++i)
      r.c_[i * std::size_t(s)] = c_[i];
    return r;
  }

  QSeries truncated(Int newcut) const {
    if (newcut >= cut_) return *this;
    Int nl = std::min(lo_, newcut);
    std::vector<K> v(c_.begin(), c_.begin() + (newcut - nl));
    return QSeries(den_, nl, newcut, std::move(v));
  }

  QSeries shifted(Int num) const {  // multiply by q^(num/den)
    QSeries r = *this;
    r.lo_ += num;
    r.cut_ += num;
    return r;
  }

  QSeries scaled(const K& v) const {
    QSeries r = *this;
    for (K& x : r.c_) x = x * v;
    return r;
  }

  QSeries operator-() const {
    QSeries r = *this;
    for (K& x : r.c_) x = K() - x;
    return r;
  }

  friend QSeries operator+(const QSeries& a0, const QSeries& b0) {
    Int d = lcm_ll(a0.den_, b0.den_);
    QSeries a = a0.rescaled(d), b = b0.rescaled(d);
    Int lo = std::min(a.lo_, b.lo_), cut = std::min(a.cut_, b.cut_);
    if (cut < lo) lo = cut;
    QSeries r(d, lo, cut, {});
    for (Int e = lo; e < cut; ++e) {
      K v = K();
      if (e >= a.lo_ && e < a.cut_) v = v + a.c_[std::size_t(e - a.lo_)];
      if (e >= b.lo_ && e < b.cut_) v = v + b.c_[std::size_t(e - b.lo_)];
      r.c_[std::size_t(e - lo)] = v;
    }
    return r;
  }
  friend QSeries operator-(const QSeries& a, const QSeries& b) {
    return a + (-b);
  }

  friend QSeries operator*(const QSeries& a0, const QSeries& b0) {
    Int d = lcm_ll(a0.den_, b0.den_);
    QSeries a = a0.rescaled(d), b = b0.rescaled(d);
    Int lo = a.lo_ + b.lo_;
    Int cut = std::min(a.cut_ + b.lo_, b.cut_ + a.lo_);
    QSeries r(d, lo, cut, {});
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == K()) continue;
      Int base = a.lo_ + Int(i) + b.lo_;
      if (base >= cut) break;
      std::size_t jmax = std::size_t(std::min<Int>(Int(b.c_.size()), cut - base));
      for (std::size_t j = 0; j < jmax; ++j) {
        if (b.c_[j] == K()) continue;
        r.c_[std::size_t(base + Int(j) - lo)] =
            r.c_[std::size_t(base + Int(j) - lo)] + a.c_[i] * b.c_[j];
      }
    }
    return r;
  }

  // Multiplicative inverse; the leading visible coefficient must be nonzero
  // and is trusted as the true leading term.
  QSeries inverse() const {
    std::optional<Rat> le = leading_exponent();
    if (!le) fail(ErrorCode::InvalidArgument, "cannot invert a zero series");
    Int ord = lo_;
    while (c_[std::size_t(ord - lo_)] == K()) ++ord;
    Int len = cut_ - ord;  // relative precision carries over
    const K* u = c_.data() + (ord - lo_);
    std::vector<K> inv(static_cast<std::size_t>(len));
    K lead_inv = K(1) / u[0];
    inv[0] = lead_inv;
    for (Int k = 1; k < len; ++k) {
      K acc = K();
      for (Int i = 1; i <= k; ++i) acc = acc + u[i] * inv[std::size_t(k - i)];
      inv[std::size_t(k)] = (K() - acc) * lead_inv;
    }
    return QSeries(den_, -ord, -ord + len, std::move(inv));
  }

  QSeries pow(Int e) const {
    if (e < 0) return inverse().pow(-e);
    // binary powering; precision bookkeeping is handled by operator*
    QSeries base = *this;
    std::optional<QSeries> acc;
    while (e > 0) {
      if (e & 1) acc = acc ? (*acc) * base : base;
      if ((e >>= 1) > 0) base = base * base;
    }
    if (!acc) return one(den_, std::max<Int>(cut_, 1));
    return *acc;
  }

 private:
  Int den_, lo_, cut_;
  std::vector<K> c_;
};

}  // namespace atlas
