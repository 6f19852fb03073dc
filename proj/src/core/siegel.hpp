#pragma once

#include <optional>
#include <vector>

#include "core/congruence.hpp"
#include "core/cyclotomic.hpp"
#include "core/polynomial.hpp"
#include "core/qseries.hpp"

namespace atlas {

// Point a = (k/n, l/n) of the standard fundamental domain A_n for the
// nonzero classes of (1/n)Z^2 / Z^2 taken modulo a ~ -a:
//   0 < a1 < 1/2 and 0 <= a2 < 1,   or
//   a1 = 0       and 0 < a2 <= 1/2, or
//   a1 = 1/2     and 0 <= a2 <= 1/2.
struct APoint {
  Int k = 0, l = 0;  // numerators over the ambient level

  friend bool operator==(const APoint& x, const APoint& y) {
    return x.k == y.k && x.l == y.l;
  }
  friend bool operator<(const APoint& x, const APoint& y) {
    return x.k != y.k ? x.k < y.k : x.l < y.l;
  }
};

// All points of A_n in increasing order.
std::vector<APoint> standard_domain(Int n);

// Folds an arbitrary pair (k, l), not congruent to (0, 0) mod n, into A_n.
APoint fold_point(Int k, Int l, Int n);

struct OrbitSet {
  Int modulus = 1;
  std::vector<std::vector<APoint>> orbits;  // each sorted; ordered by front()

  int orbit_of(const APoint& a) const;  // InvalidArgument when a is not in A_n
  Int total_points() const;
};

// Orbits of +-(H cap SL2) acting on A_n by right multiplication of row
// vectors.  The orbits partition A_n.
OrbitSet siegel_orbits(const Group& h);

// Exponent of the leading q-power of g_a, i.e. B2(k/n) / 2 with
// B2(x) = x^2 - x + 1/6.
Rat siegel_leading_exponent(const APoint& a, Int n);

// Product of the Siegel functions over the points of one orbit, stored
// exactly as  zeta^(unit_exponent) * q^(q_offset) * tail  where zeta is a
// primitive (2 n^2)-th root of unity and tail is a series in q^(1/n) with
// coefficients in Q(zeta_n) and nonzero constant term.
struct SiegelProduct {
  Int modulus = 1;
  Rat q_offset;
  Int unit_exponent = 0;  // modulo 2 n^2
  QSeries<CyclotomicNumber> tail;

  // q^(q_offset) * tail / tail(0): leading coefficient exactly 1, the root
  // of unity is dropped.  The grid is widened when q_offset requires it.
  QSeries<CyclotomicNumber> normalized() const;
};

// `terms` is the number of kept grid coefficients of the tail (exponents
// 0 .. (terms-1)/n past the leading term).
SiegelProduct siegel_orbit_product(const OrbitSet& os, int orbit, Int terms);

// div(g_O^(12 n)) as integer multiplicities over mi.cusps; exact, checked
// to be integral of total degree zero.
std::vector<Int> orbit_divisor(const OrbitSet& os, int orbit,
                               const ModularInvariants& mi);

// Integer vector m with sum_j m_j divisors[j] = target, of smallest
// infinity norm (lexicographically least among ties).  NoSolution when no
// integral solution exists.
std::vector<Int> solve_exponents(const std::vector<std::vector<Int>>& divisors,
                                 const std::vector<Int>& target);

struct Hauptmodul {
  std::vector<Int> exponents;  // one per orbit
  int p1 = 0, p2 = 0;          // cusp indices: simple pole at p1, zero at p2
  QSeries<CyclotomicNumber> series;  // leading coefficient 1
};

// Assembles a hauptmodul for genus-zero X_H as a product of orbit functions
// whose 12n-th power has divisor -12n P1 + 12n P2.  P1 is the cusp at
// infinity, P2 the first other cusp for which the divisor equation has an
// integral solution.  InvalidArgument when the curve is not genus zero,
// NoSolution when no cusp pair works.
Hauptmodul find_hauptmodul(const OrbitSet& os, const ModularInvariants& mi,
                           Int terms);

// j = E4^3 / Delta = q^-1 + 744 + 196884 q + ...; coefficients for
// exponents -1 .. terms - 2.
QSeries<Rat> j_expansion(Int terms);

struct RationalRelation {
  Poly<CyclotomicNumber> num, den;  // f = num(h) / den(h), den monic
};

// Finds polynomials A, B with deg A <= num_degree, deg B <= den_degree and
// f * B(h) = A(h), verified on every known coefficient of the window with
// at least 25% more equations than unknowns.  NoSolution when no relation
// of these degrees exists, InsufficientPrecision when the series are too
// short to decide.
RationalRelation find_relation(const QSeries<CyclotomicNumber>& h,
                               const QSeries<CyclotomicNumber>& f,
                               Int num_degree, Int den_degree);

// z -> (a z + b) / (c z + d), a d - b c != 0.
struct MoebiusMap {
  CyclotomicNumber a, b, c, d;

  MoebiusMap inverse() const;
  // nullopt stands for the point at infinity.
  std::optional<CyclotomicNumber> eval(
      const std::optional<CyclotomicNumber>& z) const;
};

// The unique Moebius map with t1 -> 0, t2 -> 1, t3 -> oo (nullopt = oo).
// InvalidArgument when the three points are not pairwise distinct.
MoebiusMap moebius_from_points(const std::optional<CyclotomicNumber>& t1,
                               const std::optional<CyclotomicNumber>& t2,
                               const std::optional<CyclotomicNumber>& t3);

// mu composed with a series with a pole (or any series where c h + d is
// invertible).
QSeries<CyclotomicNumber> apply_moebius(const MoebiusMap& mu,
                                        const QSeries<CyclotomicNumber>& h);

// Rational fast paths: a cyclotomic series with all-rational coefficients
// can be demoted for much cheaper arithmetic.
std::optional<QSeries<Rat>> try_demote(const QSeries<CyclotomicNumber>& s);
QSeries<CyclotomicNumber> promote(const QSeries<Rat>& s);

}  // namespace atlas
