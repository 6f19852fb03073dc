#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "core/common.hpp"

namespace atlas {

// Dense univariate polynomial over a field K.  K needs value-semantic
// arithmetic (+ - * /), equality, and a default constructor giving zero.
// Coefficients are stored low degree first with no trailing zeros.
template <class K>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<K> coeffs) : c_(coeffs) { trim(); }

  static Poly constant(K v) { return Poly(std::vector<K>{std::move(v)}); }
  static Poly monomial(K v, std::size_t e) {
    std::vector<K> c(e + 1);
    c[e] = std::move(v);
    return Poly(std::move(c));
  }
  static Poly x() { return monomial(K(1), 1); }

  int degree() const { return int(c_.size()) - 1; }  // -1 for the zero poly
  bool is_zero() const { return c_.empty(); }
  const std::vector<K>& coeffs() const { return c_; }

  K coeff(std::size_t i) const { return i < c_.size() ? c_[i] : K(); }
  const K& leading() const {
    if (c_.empty()) fail(ErrorCode::InvalidArgument, "zero polynomial has no leading coefficient");
    return c_.back();
  }

  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(c_ == o.c_); }

  Poly operator-() const {
    Poly r = *this;
    for (K& v : r.c_) v = K() - v;
    return r;
  }

  Poly& operator+=(const Poly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<K> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
    return Poly(std::move(c));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly scaled(const K& v) const {
    Poly r = *this;
    for (K& x : r.c_) x = x * v;
    r.trim();
    return r;
  }

  // Quotient and remainder; the divisor must be nonzero.
  friend std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
    if (b.is_zero()) fail(ErrorCode::InvalidArgument, "polynomial division by zero");
    Poly q;
    if (a.degree() >= b.degree())
      q.c_.assign(std::size_t(a.degree() - b.degree()) + 1, K());
    while (!a.is_zero() && a.degree() >= b.degree()) {
      std::size_t shift = std::size_t(a.degree() - b.degree());
      K factor = a.leading() / b.leading();
      q.c_[shift] = q.c_[shift] + factor;
      for (std::size_t i = 0; i < b.c_.size(); ++i)
        a.c_[shift + i] = a.c_[shift + i] - factor * b.c_[i];
      a.trim();
    }
    q.trim();
    return {std::move(q), std::move(a)};
  }
  friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
  friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

  Poly pow(Int e) const {
    if (e < 0) fail(ErrorCode::InvalidArgument, "negative polynomial power");
    Poly r = constant(K(1)), base = *this;
    while (e > 0) {
      if (e & 1) r *= base;
      base *= base;
      e >>= 1;
    }
    return r;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<K> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * K(Int(i));
    return Poly(std::move(d));
  }

  K eval(const K& v) const {
    K acc = K();
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * v + c_[i];
    return acc;
  }

  Poly compose(const Poly& inner) const {
    Poly acc;
    for (std::size_t i = c_.size(); i-- > 0;)
      acc = acc * inner + constant(c_[i]);
    return acc;
  }

  Poly monic() const {
    if (is_zero()) return *this;
    K inv = K(1) / leading();
    return scaled(inv);
  }

 private:
  std::vector<K> c_;
  void trim() {
    while (!c_.empty() && c_.back() == K()) c_.pop_back();
  }
};

// Monic gcd by the Euclidean algorithm with per-step normalization (keeps
// coefficient growth in check for exact field types).
template <class K>
Poly<K> poly_gcd(Poly<K> a, Poly<K> b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  a = a.monic();
  b = b.monic();
  while (!b.is_zero()) {
    Poly<K> r = (a % b);
    a = std::move(b);
    b = r.is_zero() ? r : r.monic();
  }
  return a;
}

// Extended Euclid: monic g = gcd(a, b) with a*x + b*y = g.
template <class K>
Poly<K> poly_ext_gcd(const Poly<K>& a, const Poly<K>& b, Poly<K>& x,
                     Poly<K>& y) {
  Poly<K> r0 = a, r1 = b;
  Poly<K> x0 = Poly<K>::constant(K(1)), x1;
  Poly<K> y0, y1 = Poly<K>::constant(K(1));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly<K> nx = x0 - q * x1;
    x0 = std::move(x1);
    x1 = std::move(nx);
    Poly<K> ny = y0 - q * y1;
    y0 = std::move(y1);
    y1 = std::move(ny);
  }
  if (!r0.is_zero()) {
    K inv = K(1) / r0.leading();
    r0 = r0.scaled(inv);
    x0 = x0.scaled(inv);
    y0 = y0.scaled(inv);
  }
  x = std::move(x0);
  y = std::move(y0);
  return r0;
}

// Yun's algorithm: f (nonzero) = prod part^mult with squarefree, pairwise
// coprime parts, multiplicities strictly increasing.  Leading coefficient is
// returned separately; the parts are monic.
template <class K>
struct SquarefreePart {
  Poly<K> part;
  Int multiplicity;
};

template <class K>
std::vector<SquarefreePart<K>> squarefree_decomposition(const Poly<K>& f0,
                                                        K* leading = nullptr) {
  if (f0.is_zero())
    fail(ErrorCode::InvalidArgument, "squarefree decomposition of zero");
  if (leading) *leading = f0.leading();
  Poly<K> f = f0.monic();
  std::vector<SquarefreePart<K>> out;
  if (f.degree() == 0) return out;
  Poly<K> fp = f.derivative();
  Poly<K> a = poly_gcd(f, fp);
  Poly<K> b = f / a;
  Poly<K> c = fp / a;
  Int i = 1;
  while (b.degree() > 0) {
    Poly<K> d = c - b.derivative();
    Poly<K> p = poly_gcd(b, d);
    if (p.degree() > 0) out.push_back({p, i});
    b = b / p;
    c = d / p;
    ++i;
  }
  return out;
}

}  // namespace atlas
