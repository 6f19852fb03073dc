#include "core/weierstrass.hpp"

namespace atlas {

namespace {

RationalFunction rf(long v) { return RationalFunction::constant(Rat(v)); }

// v = u^k for some nonzero rational u, with k even forcing v > 0.
bool is_kth_power(const Rat& v, int k) {
  if (v == Rat(0)) return false;
  if (k % 2 == 0 && v < 0) return false;
  Zi num = v.get_num(), den = v.get_den();
  if (num < 0) num = -num;
  Zi root;
  if (!mpz_root(root.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(k)))
    return false;
  if (!mpz_root(root.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(k)))
    return false;
  return true;
}

}  // namespace

WeierstrassInvariants weierstrass_invariants(const WeierstrassModel& e) {
  WeierstrassInvariants v;
  v.b2 = e.a1 * e.a1 + rf(4) * e.a2;
  v.b4 = rf(2) * e.a4 + e.a1 * e.a3;
  v.b6 = e.a3 * e.a3 + rf(4) * e.a6;
  v.b8 = e.a1 * e.a1 * e.a6 + rf(4) * e.a2 * e.a6 - e.a1 * e.a3 * e.a4 +
         e.a2 * e.a3 * e.a3 - e.a4 * e.a4;
  v.c4 = v.b2 * v.b2 - rf(24) * v.b4;
  v.c6 = -(v.b2 * v.b2 * v.b2) + rf(36) * v.b2 * v.b4 - rf(216) * v.b6;
  v.disc = -(v.b2 * v.b2) * v.b8 - rf(8) * (v.b4 * v.b4 * v.b4) -
           rf(27) * (v.b6 * v.b6) + rf(9) * v.b2 * v.b4 * v.b6;
  if (v.disc.is_zero())
    fail(ErrorCode::SingularModel, "model has vanishing discriminant");
  v.j = v.c4 * v.c4 * v.c4 / v.disc;
  return v;
}

WeierstrassModel short_form(const WeierstrassModel& e) {
  WeierstrassInvariants v = weierstrass_invariants(e);
  return WeierstrassModel::short_model(v.c4 / rf(-48), v.c6 / rf(-864));
}

WeierstrassModel quadratic_twist(const WeierstrassModel& e,
                                 const RationalFunction& d) {
  if (d.is_zero()) fail(ErrorCode::InvalidArgument, "twist by zero");
  WeierstrassModel s = short_form(e);
  return WeierstrassModel::short_model(d * d * s.a4, d * d * d * s.a6);
}

WeierstrassModel quartic_to_weierstrass(const Poly<Rat>& q, const Rat& x0,
                                        const Rat& y0) {
  int deg = q.degree();
  if (deg != 3 && deg != 4)
    fail(ErrorCode::InvalidArgument, "expected a cubic or quartic");
  if (poly_gcd(q, q.derivative()).degree() > 0)
    fail(ErrorCode::SingularModel, "quartic has a repeated root");
  if (y0 * y0 != q.eval(x0))
    fail(ErrorCode::InvalidArgument, "the supplied point is not on the curve");
  if (deg == 3) {
    // y^2 = L x^3 + b x^2 + c x + d; (Lx, Ly) gives a monic cubic.
    Rat lc = q.leading();
    WeierstrassModel e;
    e.a2 = RationalFunction::constant(q.coeff(2));
    e.a4 = RationalFunction::constant(q.coeff(1) * lc);
    e.a6 = RationalFunction::constant(q.coeff(0) * lc * lc);
    return e;
  }
  // Jacobian of the binary quartic; the rational point upgrades the
  // 2-covering to an isomorphism.
  Rat a = q.coeff(4), b = q.coeff(3), c = q.coeff(2), d = q.coeff(1),
      e0 = q.coeff(0);
  Rat I = Rat(12) * a * e0 - Rat(3) * b * d + c * c;
  Rat J = Rat(72) * a * c * e0 - Rat(27) * a * d * d - Rat(27) * b * b * e0 +
          Rat(9) * b * c * d - Rat(2) * c * c * c;
  return WeierstrassModel::short_model(
      RationalFunction::constant(Rat(-27) * I),
      RationalFunction::constant(Rat(-27) * J));
}

bool q_isomorphic(const WeierstrassModel& e1, const WeierstrassModel& e2) {
  if (!e1.is_constant() || !e2.is_constant())
    fail(ErrorCode::InvalidArgument, "isomorphism test needs constant models");
  WeierstrassInvariants v1 = weierstrass_invariants(e1);
  WeierstrassInvariants v2 = weierstrass_invariants(e2);
  Rat j1 = v1.j.constant_value(), j2 = v2.j.constant_value();
  if (j1 != j2) return false;
  Rat c41 = v1.c4.constant_value(), c42 = v2.c4.constant_value();
  Rat c61 = v1.c6.constant_value(), c62 = v2.c6.constant_value();
  if (j1 == Rat(0)) return is_kth_power(c61 / c62, 6);
  if (j1 == Rat(1728)) return is_kth_power(c41 / c42, 4);
  return is_kth_power((c61 * c42) / (c62 * c41), 2);
}

}  // namespace atlas
