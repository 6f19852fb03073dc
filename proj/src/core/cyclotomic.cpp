#include "core/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "core/polynomial.hpp"

namespace atlas {

namespace {

struct CycloTables {
  Int n = 1;
  Int phi = 1;
  Poly<Rat> minimal;                    // Phi_n, monic
  std::vector<std::vector<Rat>> power;  // x^k mod Phi_n for k in [0, span)
};

Poly<Rat> cyclotomic_poly_fresh(Int n) {
  // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d, built for all m | n.
  std::map<Int, Poly<Rat>> memo;
  for (Int m = 1; m <= n; ++m) {
    if (n % m != 0) continue;
    std::vector<Rat> xm(std::size_t(m) + 1, Rat(0));
    xm[0] = -1;
    xm[std::size_t(m)] = 1;
    Poly<Rat> f(std::move(xm));
    for (const auto& [d, phi_d] : memo)
      if (m % d == 0) f = f / phi_d;
    memo.emplace(m, std::move(f));
  }
  return memo.at(n);
}

std::mutex tables_mutex;
std::map<Int, CycloTables> tables_cache;

const CycloTables& tables(Int n) {
  std::scoped_lock lock(tables_mutex);
  auto it = tables_cache.find(n);
  if (it != tables_cache.end()) return it->second;
  if (n < 1) fail(ErrorCode::InvalidArgument, "cyclotomic level must be >= 1");
  CycloTables t;
  t.n = n;
  t.minimal = cyclotomic_poly_fresh(n);
  t.phi = t.minimal.degree();
  std::size_t span = std::size_t(std::max<Int>(n, 2 * t.phi - 1));
  t.power.reserve(span);
  std::vector<Rat> cur(std::size_t(t.phi), Rat(0));
  cur[0] = 1;
  for (std::size_t k = 0; k < span; ++k) {
    t.power.push_back(cur);
    // multiply by x, reduce by the monic minimal polynomial
    Rat top = cur.back();
    for (std::size_t i = cur.size(); i-- > 1;) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0)
      for (std::size_t i = 0; i < cur.size(); ++i)
        cur[i] -= top * t.minimal.coeff(i);
  }
  return tables_cache.emplace(n, std::move(t)).first->second;
}

}  // namespace

std::vector<Rat> cyclotomic_polynomial(Int n) {
  return cyclotomic_poly_fresh(n).coeffs();
}

CyclotomicNumber CyclotomicNumber::zeta_power(Int level, Int k) {
  const CycloTables& t = tables(level);
  return CyclotomicNumber(level, t.power[std::size_t(mod_ll(k, level))]);
}

CyclotomicNumber CyclotomicNumber::from_coeffs(Int level, std::vector<Rat> coeffs) {
  const CycloTables& t = tables(level);
  if (Int(coeffs.size()) > t.phi)
    fail(ErrorCode::InvalidArgument, "too many power-basis coefficients");
  coeffs.resize(std::size_t(t.phi), Rat(0));
  return CyclotomicNumber(level, std::move(coeffs));
}

bool CyclotomicNumber::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rat& v) { return v == 0; });
}

bool CyclotomicNumber::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Rat CyclotomicNumber::rational_value() const {
  if (!is_rational())
    fail(ErrorCode::InvalidArgument, "value is not rational: " + str());
  return c_[0];
}

CyclotomicNumber CyclotomicNumber::lifted_to(Int level) const {
  if (level == level_) return *this;
  if (level % level_ != 0)
    fail(ErrorCode::ModulusMismatch, "cyclotomic lift needs a divisible level");
  const CycloTables& t = tables(level);
  Int step = level / level_;
  std::vector<Rat> out(std::size_t(t.phi), Rat(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    const std::vector<Rat>& pw = t.power[std::size_t(mod_ll(Int(i) * step, level))];
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += c_[i] * pw[j];
  }
  return CyclotomicNumber(level, std::move(out));
}

CyclotomicNumber CyclotomicNumber::galois(Int t) const {
  Int tt = mod_ll(t, level_);
  if (gcd_ll(tt, level_) != 1)
    fail(ErrorCode::InvalidArgument, "Galois exponent must be a unit");
  const CycloTables& tab = tables(level_);
  std::vector<Rat> out(std::size_t(tab.phi), Rat(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    const std::vector<Rat>& pw = tab.power[std::size_t(mod_ll(Int(i) * tt, level_))];
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += c_[i] * pw[j];
  }
  return CyclotomicNumber(level_, std::move(out));
}

CyclotomicNumber CyclotomicNumber::inverse() const {
  if (is_zero()) fail(ErrorCode::InvalidArgument, "inverse of zero");
  const CycloTables& tab = tables(level_);
  Poly<Rat> a(c_), u, v;
  Poly<Rat> g = poly_ext_gcd(a, tab.minimal, u, v);
  if (g.degree() != 0)
    fail(ErrorCode::Internal, "nonzero cyclotomic element shares a factor with Phi_n");
  Poly<Rat> inv = u.scaled(Rat(1) / g.leading()) % tab.minimal;
  std::vector<Rat> out = inv.coeffs();
  out.resize(std::size_t(tab.phi), Rat(0));
  return CyclotomicNumber(level_, std::move(out));
}

CyclotomicNumber CyclotomicNumber::operator-() const {
  CyclotomicNumber r = *this;
  for (Rat& v : r.c_) v = -v;
  return r;
}

std::pair<CyclotomicNumber, CyclotomicNumber> CyclotomicNumber::promoted(
    const CyclotomicNumber& a, const CyclotomicNumber& b) {
  if (a.level_ == b.level_) return {a, b};
  Int l = lcm_ll(a.level_, b.level_);
  return {a.lifted_to(l), b.lifted_to(l)};
}

CyclotomicNumber operator+(const CyclotomicNumber& a, const CyclotomicNumber& b) {
  auto [x, y] = CyclotomicNumber::promoted(a, b);
  for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
  return x;
}

CyclotomicNumber operator-(const CyclotomicNumber& a, const CyclotomicNumber& b) {
  auto [x, y] = CyclotomicNumber::promoted(a, b);
  for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] -= y.c_[i];
  return x;
}

CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b) {
  auto [x, y] = CyclotomicNumber::promoted(a, b);
  const CycloTables& tab = tables(x.level_);
  std::size_t phi = x.c_.size();
  std::vector<Rat> prod(2 * phi - 1, Rat(0));
  for (std::size_t i = 0; i < phi; ++i) {
    if (x.c_[i] == 0) continue;
    for (std::size_t j = 0; j < phi; ++j) {
      if (y.c_[j] == 0) continue;
      prod[i + j] += x.c_[i] * y.c_[j];
    }
  }
  std::vector<Rat> out(phi, Rat(0));
  for (std::size_t k = 0; k < prod.size(); ++k) {
    if (prod[k] == 0) continue;
    if (k < phi) {
      out[k] += prod[k];
    } else {
      const std::vector<Rat>& pw = tab.power[k];
      for (std::size_t j = 0; j < phi; ++j) out[j] += prod[k] * pw[j];
    }
  }
  return CyclotomicNumber(x.level_, std::move(out));
}

CyclotomicNumber operator/(const CyclotomicNumber& a, const CyclotomicNumber& b) {
  return a * b.inverse();
}

bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) {
  auto [x, y] = CyclotomicNumber::promoted(a, b);
  return x.c_ == y.c_;
}

std::string CyclotomicNumber::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    Rat v = c_[i];
    if (!first) {
      os << (v < 0 ? " - " : " + ");
      if (v < 0) v = -v;
    }
    first = false;
    if (i == 0) {
      os << v.get_str();
    } else {
      if (v != 1) os << v.get_str() << "*";
      os << "z";
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace atlas
