#pragma once

#include "core/ratfunc.hpp"

namespace atlas {

// Long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with
// coefficients in Q(t) (constants are degree-0 functions).
struct WeierstrassModel {
  RationalFunction a1, a2, a3, a4, a6;

  static WeierstrassModel short_model(RationalFunction A, RationalFunction B) {
    WeierstrassModel e;
    e.a4 = std::move(A);
    e.a6 = std::move(B);
    return e;
  }
  bool operator==(const WeierstrassModel& o) const {
    return a1 == o.a1 && a2 == o.a2 && a3 == o.a3 && a4 == o.a4 && a6 == o.a6;
  }
  bool is_constant() const {
    return a1.is_constant() && a2.is_constant() && a3.is_constant() &&
           a4.is_constant() && a6.is_constant();
  }
};

struct WeierstrassInvariants {
  RationalFunction b2, b4, b6, b8, c4, c6, disc, j;
};

// Standard quantities; throws SingularModel when the discriminant vanishes
// identically.
WeierstrassInvariants weierstrass_invariants(const WeierstrassModel& e);

// Complete the square and depress the quadratic term: y^2 = x^3 + Ax + B
// with A = -c4/48, B = -c6/864; same invariants.
WeierstrassModel short_form(const WeierstrassModel& e);

// Quadratic twist by d != 0 of the short form: a4 -> d^2 a4, a6 -> d^3 a6.
WeierstrassModel quadratic_twist(const WeierstrassModel& e,
                                 const RationalFunction& d);

// Weierstrass model of the genus-1 curve y^2 = q(x) (q squarefree of degree
// 3 or 4 over Q) carrying the supplied rational point.  Cubics reduce by the
// unimodular scaling; quartics return the curve's Jacobian, which the point
// makes an isomorphism.  Throws SingularModel for non-squarefree q and
// InvalidArgument when the point is not on the curve.
WeierstrassModel quartic_to_weierstrass(const Poly<Rat>& q, const Rat& x0,
                                        const Rat& y0);

// Isomorphism over Q of two nonsingular constant models: equal j plus the
// standard twist-class test on c4/c6.
bool q_isomorphic(const WeierstrassModel& e1, const WeierstrassModel& e2);

}  // namespace atlas
