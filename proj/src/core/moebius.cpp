#include "core/moebius.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>

namespace atlas {

namespace {

using U128 = unsigned __int128;

Int mul_mod_big(Int a, Int b, Int p) { return Int(U128(a) * U128(b) % U128(p)); }

Int pow_mod_big(Int base, Int exp, Int p) {
  Int result = 1 % p;
  base = mod_ll(base, p);
  while (exp > 0) {
    if (exp & 1) result = mul_mod_big(result, base, p);
    base = mul_mod_big(base, base, p);
    exp >>= 1;
  }
  return result;
}

bool is_prime_64(Int n) {
  if (n < 2) return false;
  for (Int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  Int d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (Int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    Int x = pow_mod_big(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod_big(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

// Dense polynomials over F_p, low-to-high, trimmed.
using FpPoly = std::vector<Int>;

void fp_trim(FpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, Int p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + U128(a[i]) * U128(b[j])) % p;
  }
  fp_trim(r);
  return r;
}

// Remainder of a modulo monic m.
FpPoly fp_rem(FpPoly a, const FpPoly& m, Int p) {
  fp_trim(a);
  while (a.size() >= m.size()) {
    Int c = a.back();
    std::size_t shift = a.size() - m.size();
    if (c != 0) {
      for (std::size_t i = 0; i < m.size(); ++i) {
        Int v = a[shift + i] - mul_mod_big(c, m[i], p);
        a[shift + i] = v < 0 ? v + p : v;
      }
    }
    a.pop_back();
    fp_trim(a);
  }
  return a;
}

FpPoly fp_monic(FpPoly f, Int p) {
  fp_trim(f);
  if (f.empty()) return f;
  Int inv = pow_mod_big(f.back(), p - 2, p);
  for (Int& c : f) c = mul_mod_big(c, inv, p);
  return f;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, Int p) {
  fp_trim(a);
  fp_trim(b);
  while (!b.empty()) {
    FpPoly r = fp_rem(a, fp_monic(b, p), p);
    a = std::move(b);
    b = std::move(r);
  }
  return fp_monic(a, p);
}

FpPoly fp_pow_mod(FpPoly base, Int exp, const FpPoly& m, Int p) {
  FpPoly result{1};
  base = fp_rem(std::move(base), m, p);
  while (exp > 0) {
    if (exp & 1) result = fp_rem(fp_mul(result, base, p), m, p);
    base = fp_rem(fp_mul(base, base, p), m, p);
    exp >>= 1;
  }
  return result;
}

FpPoly fp_derivative(const FpPoly& f, Int p) {
  FpPoly d;
  for (std::size_t i = 1; i < f.size(); ++i)
    d.push_back(mul_mod_big(Int(i) % p, f[i], p));
  fp_trim(d);
  return d;
}

// All roots in F_p of the product-of-distinct-linear-factors part of f.
void fp_split_linear(const FpPoly& f, Int p, Int& seed, std::vector<Int>& out) {
  if (f.size() <= 1) return;
  if (f.size() == 2) {
    out.push_back(mod_ll(p - f[0], p));
    return;
  }
  for (;;) {
    seed = mod_ll(seed * 6364136223846793005LL + 1442695040888963407LL, p);
    // gcd((x + seed)^((p-1)/2) - 1, f) splits the roots into halves.
    FpPoly shifted = fp_pow_mod(FpPoly{seed, 1}, (p - 1) / 2, f, p);
    if (shifted.empty())
      shifted = FpPoly{p - 1};
    else
      shifted[0] = mod_ll(shifted[0] - 1, p);
    fp_trim(shifted);
    FpPoly g = fp_gcd(shifted, f, p);
    if (g.size() > 1 && g.size() < f.size()) {
      FpPoly rest = f;
      // rest = f / g by synthetic long division (g monic).
      FpPoly quot(rest.size() - g.size() + 1, 0);
      for (int i = int(rest.size()) - int(g.size()); i >= 0; --i) {
        Int c = rest[i + g.size() - 1];
        quot[i] = c;
        if (c != 0)
          for (std::size_t j = 0; j < g.size(); ++j) {
            Int v = rest[i + j] - mul_mod_big(c, g[j], p);
            rest[i + j] = v < 0 ? v + p : v;
          }
      }
      fp_split_linear(g, p, seed, out);
      fp_split_linear(quot, p, seed, out);
      return;
    }
  }
}

std::vector<Int> fp_roots(const FpPoly& f0, Int p) {
  FpPoly f = fp_monic(f0, p);
  if (f.size() <= 1) return {};
  FpPoly d = fp_derivative(f, p);
  FpPoly g = fp_gcd(f, d, p);
  if (g.size() > 1) {
    FpPoly quot(f.size() - g.size() + 1, 0);
    FpPoly rest = f;
    for (int i = int(rest.size()) - int(g.size()); i >= 0; --i) {
      Int c = rest[i + g.size() - 1];
      quot[i] = c;
      if (c != 0)
        for (std::size_t j = 0; j < g.size(); ++j) {
          Int v = rest[i + j] - mul_mod_big(c, g[j], p);
          rest[i + j] = v < 0 ? v + p : v;
        }
    }
    f = fp_monic(quot, p);
  }
  if (f.size() <= 1) return {};
  // Keep only the linear factors: gcd(x^p - x, f).
  FpPoly xp = fp_pow_mod(FpPoly{0, 1}, p, f, p);
  if (xp.size() < 2) xp.resize(2, 0);
  xp[1] = mod_ll(xp[1] - 1, p);
  fp_trim(xp);
  FpPoly lin = fp_gcd(xp, f, p);
  std::vector<Int> roots;
  Int seed = 88172645463325252LL % p;
  if (lin.size() > 1) fp_split_linear(lin, p, seed, roots);
  std::sort(roots.begin(), roots.end());
  return roots;
}

// p/q = v mod p with |p|, |q| <= sqrt(prime/2); nullopt when none exists.
std::optional<Rat> rational_reconstruct(Int v, Int prime, Int bound) {
  Int r0 = prime, r1 = mod_ll(v, prime);
  Int t0 = 0, t1 = 1;
  while (r1 > bound) {
    Int q = r0 / r1;
    r0 = std::exchange(r1, r0 - q * r1);
    t0 = std::exchange(t1, t0 - q * t1);
  }
  if (t1 == 0) return std::nullopt;
  Int num = r1, den = t1;
  if (den < 0) {
    den = -den;
    num = -num;
  }
  if (den > bound || std::gcd(std::abs(num), den) != 1) return std::nullopt;
  return make_rat(num, den);
}

Int rat_mod_p(const Rat& v, Int p) {
  Int num = Int(mpz_fdiv_ui(v.get_num().get_mpz_t(), static_cast<unsigned long>(p)));
  Int den = Int(mpz_fdiv_ui(v.get_den().get_mpz_t(), static_cast<unsigned long>(p)));
  if (den == 0) fail(ErrorCode::Internal, "denominator divisible by working prime");
  return mul_mod_big(num, pow_mod_big(den, p - 2, p), p);
}

// Inverse of a square matrix mod p by Gauss-Jordan; nullopt when singular.
std::optional<std::vector<std::vector<Int>>> invert_mod(
    std::vector<std::vector<Int>> m, Int p) {
  std::size_t n = m.size();
  std::vector<std::vector<Int>> inv(n, std::vector<Int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    Int s = pow_mod_big(m[col][col], p - 2, p);
    for (std::size_t j = 0; j < n; ++j) {
      m[col][j] = mul_mod_big(m[col][j], s, p);
      inv[col][j] = mul_mod_big(inv[col][j], s, p);
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || m[row][col] == 0) continue;
      Int c = m[row][col];
      for (std::size_t j = 0; j < n; ++j) {
        m[row][j] = mod_ll(m[row][j] - mul_mod_big(c, m[col][j], p), p);
        inv[row][j] = mod_ll(inv[row][j] - mul_mod_big(c, inv[col][j], p), p);
      }
    }
  }
  return inv;
}

std::vector<Int> prime_factors_of(Int n) {
  std::vector<Int> out;
  for (Int q = 2; q * q <= n; ++q)
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  if (n > 1) out.push_back(n);
  return out;
}

CyclotomicNumber eval_poly(const Poly<Rat>& m, const CyclotomicNumber& x) {
  CyclotomicNumber acc(Rat(0));
  for (int i = m.degree(); i >= 0; --i)
    acc = acc * x + CyclotomicNumber(m.coeff(std::size_t(i)));
  return acc;
}

}  // namespace

std::vector<CyclotomicNumber> cyclotomic_roots(const Poly<Rat>& m0, Int level) {
  if (m0.is_zero())
    fail(ErrorCode::InvalidArgument, "zero polynomial has every value as a root");
  if (level < 1) fail(ErrorCode::InvalidArgument, "cyclotomic level must be >= 1");
  if (m0.degree() == 0) return {};
  Poly<Rat> m = m0 / Poly<Rat>::constant(m0.leading());
  m = m / poly_gcd(m, m.derivative());

  Int phi = euler_phi(level);
  std::vector<Int> units;
  for (Int j = 1; j <= level; ++j)
    if (std::gcd(j, level) == 1) units.push_back(j % level);
  if (units.empty()) units.push_back(0);  // level 1: the identity only

  std::vector<Int> level_primes = prime_factors_of(level);

  // Working prime p = 1 mod level, around 2^61, with m squarefree mod p and
  // an invertible embedding matrix.
  Int p = (Int(1) << 61);
  p -= mod_ll(p - 1, level);
  std::vector<std::vector<Int>> minv;
  Int zeta = 1;
  std::vector<Int> roots;
  for (;; p += level) {
    if (!is_prime_64(p)) continue;
    FpPoly fm(std::size_t(m.degree()) + 1);
    for (std::size_t i = 0; i < fm.size(); ++i) fm[i] = rat_mod_p(m.coeff(i), p);
    fp_trim(fm);
    if (int(fm.size()) != m.degree() + 1) continue;  // leading coeff vanished
    FpPoly sq = fp_gcd(fm, fp_derivative(fm, p), p);
    if (sq.size() > 1) continue;
    if (level > 1) {
      bool found = false;
      for (Int x = 2; x < 200 && !found; ++x) {
        Int z = pow_mod_big(x, (p - 1) / level, p);
        if (z == 1) continue;
        bool primitive = true;
        for (Int q : level_primes)
          if (pow_mod_big(z, level / q, p) == 1) {
            primitive = false;
            break;
          }
        if (primitive) {
          zeta = z;
          found = true;
        }
      }
      if (!found) continue;
    }
    std::vector<std::vector<Int>> mat(units.size(),
                                      std::vector<Int>(std::size_t(phi), 0));
    for (std::size_t r = 0; r < units.size(); ++r)
      for (Int i = 0; i < phi; ++i)
        mat[r][std::size_t(i)] = pow_mod_big(zeta, mod_ll(i * units[r], level), p);
    auto inv = invert_mod(mat, p);
    if (!inv) continue;
    minv = *inv;
    roots = fp_roots(fm, p);
    break;
  }
  if (roots.empty()) return {};

  // Each root of m in Q(zeta_level) together with its Galois conjugates maps
  // to a tuple of residues indexed by (Z/level)^*.  Enumerate tuples, solve
  // for the power-basis coordinates, reconstruct, and verify exactly.
  double tuple_count = 1;
  for (std::size_t i = 0; i < units.size(); ++i) tuple_count *= double(roots.size());
  if (tuple_count > 2e7)
    fail(ErrorCode::TooLarge, "cyclotomic root search space too large");

  Int bound = 1;
  while ((bound + 1) * (bound + 1) <= (p - 1) / 2) ++bound;

  std::vector<CyclotomicNumber> out;
  std::set<std::string> seen;
  std::vector<std::size_t> pick(units.size(), 0);
  for (;;) {
    std::vector<Rat> coords;
    coords.reserve(std::size_t(phi));
    bool ok = true;
    for (Int i = 0; i < phi && ok; ++i) {
      U128 acc = 0;
      for (std::size_t r = 0; r < units.size(); ++r) {
        acc += U128(minv[std::size_t(i)][r]) * U128(roots[pick[r]]);
        if ((r & 7) == 7) acc %= p;
      }
      auto c = rational_reconstruct(Int(acc % p), p, bound);
      if (!c)
        ok = false;
      else
        coords.push_back(*c);
    }
    if (ok) {
      while (Int(coords.size()) < phi) coords.emplace_back(0);
      CyclotomicNumber alpha = CyclotomicNumber::from_coeffs(level, coords);
      std::string key = alpha.str();
      if (!seen.count(key) && eval_poly(m, alpha).is_zero()) {
        seen.insert(key);
        out.push_back(alpha);
      }
    }
    std::size_t carry = 0;
    while (carry < pick.size() && ++pick[carry] == roots.size()) {
      pick[carry] = 0;
      ++carry;
    }
    if (carry == pick.size()) break;
  }
  std::sort(out.begin(), out.end(),
            [](const CyclotomicNumber& a, const CyclotomicNumber& b) {
              return a.str() < b.str();
            });
  return out;
}

namespace {

using FiberPoint = std::optional<CyclotomicNumber>;  // nullopt = infinity

struct Anchor {
  FiberPoint source;
  std::vector<FiberPoint> targets;
};

std::string point_key(const FiberPoint& pt) { return pt ? pt->str() : "oo"; }

// Fiber of f over c (nullopt = infinity) restricted to points visible over
// Q(zeta_level), as multiplicity -> points.
std::map<Int, std::vector<FiberPoint>> visible_fiber(const RationalFunction& f,
                                                     const std::optional<Rat>& c,
                                                     Int level) {
  Int n = f.map_degree();
  std::map<Int, std::vector<FiberPoint>> out;
  Poly<Rat> fiber_poly;
  Int inf_mult = 0;
  if (!c) {
    fiber_poly = f.den();
    inf_mult = std::max(0, f.num().degree() - f.den().degree());
  } else {
    fiber_poly = f.num() - f.den() * Poly<Rat>::constant(*c);
    inf_mult = n - fiber_poly.degree();
  }
  if (inf_mult > 0) out[inf_mult].push_back(std::nullopt);
  if (fiber_poly.degree() >= 1) {
    for (const auto& part : squarefree_decomposition(fiber_poly)) {
      if (part.part.degree() < 1) continue;
      for (const CyclotomicNumber& r : cyclotomic_roots(part.part, level))
        out[part.multiplicity].push_back(r);
    }
  }
  return out;
}

MoebiusMap compose_maps(const MoebiusMap& outer, const MoebiusMap& inner) {
  return MoebiusMap{outer.a * inner.a + outer.b * inner.c,
                    outer.a * inner.b + outer.b * inner.d,
                    outer.c * inner.a + outer.d * inner.c,
                    outer.c * inner.b + outer.d * inner.d};
}

Poly<CyclotomicNumber> promote_poly(const Poly<Rat>& f) {
  std::vector<CyclotomicNumber> c;
  c.reserve(f.coeffs().size());
  for (const Rat& v : f.coeffs()) c.emplace_back(v);
  return Poly<CyclotomicNumber>(std::move(c));
}

// Exact check of f == g(mu(t)) by cross multiplication over the field.
bool verify_conjugation(const RationalFunction& f, const RationalFunction& g,
                        const MoebiusMap& mu) {
  Poly<CyclotomicNumber> u{mu.b, mu.a};  // a t + b, low-to-high
  Poly<CyclotomicNumber> v{mu.d, mu.c};
  int n = std::max(g.num().degree(), g.den().degree());
  std::vector<Poly<CyclotomicNumber>> upow(std::size_t(n) + 1),
      vpow(std::size_t(n) + 1);
  upow[0] = Poly<CyclotomicNumber>::constant(CyclotomicNumber(Rat(1)));
  vpow[0] = upow[0];
  for (int i = 1; i <= n; ++i) {
    upow[std::size_t(i)] = upow[std::size_t(i - 1)] * u;
    vpow[std::size_t(i)] = vpow[std::size_t(i - 1)] * v;
  }
  auto substituted = [&](const Poly<Rat>& poly) {
    Poly<CyclotomicNumber> acc;
    for (int i = 0; i <= poly.degree(); ++i) {
      if (poly.coeff(std::size_t(i)) == 0) continue;
      acc += upow[std::size_t(i)] * vpow[std::size_t(n - i)] *
             Poly<CyclotomicNumber>::constant(
                 CyclotomicNumber(poly.coeff(std::size_t(i))));
    }
    return acc;
  };
  Poly<CyclotomicNumber> cn = substituted(g.num());
  Poly<CyclotomicNumber> dn = substituted(g.den());
  return promote_poly(f.num()) * dn == promote_poly(f.den()) * cn;
}

}  // namespace

std::optional<MoebiusMap> moebius_equivalent(const RationalFunction& f,
                                             const RationalFunction& g,
                                             Int level) {
  if (f.map_degree() != g.map_degree())
    fail(ErrorCode::DegreeMismatch, "maps of different degree are never conjugate");
  MoebiusMap identity{CyclotomicNumber(Rat(1)), CyclotomicNumber(Rat(0)),
                      CyclotomicNumber(Rat(0)), CyclotomicNumber(Rat(1))};
  if (f == g) return identity;
  if (f.map_degree() == 0) return std::nullopt;

  const std::optional<Rat> bases[] = {std::nullopt, Rat(0), Rat(1728), Rat(1)};
  std::vector<Anchor> anchors;
  for (const auto& c : bases) {
    auto ff = visible_fiber(f, c, level);
    auto gf = visible_fiber(g, c, level);
    for (const auto& [mult, points] : ff) {
      auto it = gf.find(mult);
      // A Moebius map over the field sends visible points to visible points
      // of the same base value and multiplicity, so an unmatchable visible
      // point rules the conjugation out entirely.
      if (it == gf.end() || it->second.size() < points.size()) return std::nullopt;
      for (const FiberPoint& s : points)
        anchors.push_back(Anchor{s, it->second});
    }
    if (anchors.size() >= 3) break;
  }
  if (anchors.size() < 3) return std::nullopt;
  std::sort(anchors.begin(), anchors.end(), [](const Anchor& x, const Anchor& y) {
    if (x.targets.size() != y.targets.size())
      return x.targets.size() < y.targets.size();
    return point_key(x.source) < point_key(y.source);
  });

  const Anchor& a0 = anchors[0];
  const Anchor& a1 = anchors[1];
  const Anchor& a2 = anchors[2];
  MoebiusMap source_to_std =
      moebius_from_points(a0.source, a1.source, a2.source);
  // One exact evaluation point rejects most wrong candidates much more
  // cheaply than the full polynomial identity.
  auto plausible = [&](const MoebiusMap& mu) {
    for (long t0 : {2L, 3L, 5L, 7L, -4L}) {
      Rat t{t0};
      if (f.has_pole_at(t)) continue;
      auto image = mu.eval(CyclotomicNumber(t));
      if (!image) continue;
      CyclotomicNumber den = eval_poly(g.den(), *image);
      if (den.is_zero()) continue;
      return eval_poly(g.num(), *image) / den == CyclotomicNumber(f.eval(t));
    }
    return true;  // no usable test point; the full check decides
  };
  for (const FiberPoint& d0 : a0.targets)
    for (const FiberPoint& d1 : a1.targets) {
      if (point_key(d0) == point_key(d1)) continue;
      for (const FiberPoint& d2 : a2.targets) {
        if (point_key(d2) == point_key(d0) || point_key(d2) == point_key(d1))
          continue;
        MoebiusMap mu = compose_maps(moebius_from_points(d0, d1, d2).inverse(),
                                     source_to_std);
        if (plausible(mu) && verify_conjugation(f, g, mu)) return mu;
      }
    }
  return std::nullopt;
}

}  // namespace atlas
