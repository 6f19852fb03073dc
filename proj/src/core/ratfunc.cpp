#include "core/ratfunc.hpp"

#include <sstream>

namespace atlas {

RationalFunction compose(const RationalFunction& f, const RationalFunction& g) {
  if (g.is_constant())
    fail(ErrorCode::InvalidArgument, "composition with a constant inner map");
  // f = P/Q, n = max degree: f(g) = sum p_i u^i v^(n-i) / sum q_i u^i v^(n-i)
  // with g = u/v.
  const Poly<Rat>&u = g.num(), &v = g.den();
  int n = std::max(f.num().degree(), f.den().degree());
  std::vector<Poly<Rat>> upow(std::size_t(n) + 1), vpow(std::size_t(n) + 1);
  upow[0] = Poly<Rat>::constant(Rat(1));
  vpow[0] = Poly<Rat>::constant(Rat(1));
  for (int i = 1; i <= n; ++i) {
    upow[std::size_t(i)] = upow[std::size_t(i - 1)] * u;
    vpow[std::size_t(i)] = vpow[std::size_t(i - 1)] * v;
  }
  Poly<Rat> num, den;
  for (int i = 0; i <= n; ++i) {
    Poly<Rat> basis = upow[std::size_t(i)] * vpow[std::size_t(n - i)];
    Rat p = f.num().coeff(std::size_t(i)), q = f.den().coeff(std::size_t(i));
    if (p != Rat(0)) num += basis.scaled(p);
    if (q != Rat(0)) den += basis.scaled(q);
  }
  return RationalFunction(std::move(num), std::move(den));
}

Zi squarefree_part(Zi n) {
  if (n <= 0) fail(ErrorCode::InvalidArgument, "squarefree part of a non-positive integer");
  Zi result = 1;
  for (Zi p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e % 2 == 1) result *= p;
  }
  return result * n;  // the leftover factor is prime (or 1)
}

namespace {

// Signed squarefree representative of a nonzero rational modulo squares.
Rat rational_square_class(const Rat& v) {
  Zi num = v.get_num(), den = v.get_den();
  int sign = (num < 0) ? -1 : 1;
  if (num < 0) num = -num;
  Zi core = squarefree_part(num * den);
  return Rat(sign * core);
}

}  // namespace

std::string SquareClass::str() const {
  std::ostringstream os;
  os << constant.get_str();
  if (poly.degree() > 0) {
    os << " * [";
    for (std::size_t i = 0; i < poly.coeffs().size(); ++i) {
      if (i) os << ",";
      os << poly.coeffs()[i].get_str();
    }
    os << "]";
  }
  return os.str();
}

SquareClass square_class(const Poly<Rat>& f) {
  if (f.is_zero()) fail(ErrorCode::InvalidArgument, "square class of zero");
  SquareClass out;
  Rat lead;
  std::vector<SquarefreePart<Rat>> parts = squarefree_decomposition(f, &lead);
  out.constant = rational_square_class(lead);
  Poly<Rat> p = Poly<Rat>::constant(Rat(1));
  for (const SquarefreePart<Rat>& sp : parts)
    if (sp.multiplicity % 2 == 1) p *= sp.part;
  out.poly = std::move(p);
  return out;
}

SquareClass square_class(const RationalFunction& f) {
  if (f.is_zero()) fail(ErrorCode::InvalidArgument, "square class of zero");
  return square_class(f.num() * f.den());
}

SquareClass square_class_mul(const SquareClass& a, const SquareClass& b) {
  SquareClass out = square_class(a.poly * b.poly);
  Rat c = rational_square_class(a.constant * b.constant * out.constant);
  out.constant = c;
  return out;
}

}  // namespace atlas
