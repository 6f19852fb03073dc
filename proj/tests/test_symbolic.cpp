#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/moebius.hpp"
#include "core/ratfunc.hpp"
#include "core/weierstrass.hpp"

using namespace atlas;

namespace {

Poly<Rat> poly(std::initializer_list<long> lows) {
  std::vector<Rat> c;
  for (long v : lows) c.emplace_back(v);
  return Poly<Rat>(std::move(c));
}

RationalFunction rf(std::initializer_list<long> lows) {
  return RationalFunction(poly(lows));
}

// One-parameter family y^2 = x^3 + (-27t^4+324t^3-378t^2-324t-27) x
//                               + (54t^6-972t^5+4050t^4+4050t^2+972t+54).
WeierstrassModel twist_family() {
  return WeierstrassModel::short_model(
      rf({-27, -324, -378, 324, -27}), rf({54, 972, 4050, 0, 4050, -972, 54}));
}

// y^2 + xy = x^3 - 36/(t^3-1728) x - 1/(t^3-1728), the generic curve with
// j-invariant t^3.
WeierstrassModel cubic_j_family() {
  RationalFunction den(poly({-1728, 0, 0, 1}));
  WeierstrassModel e;
  e.a1 = rf({1});
  e.a4 = rf({-36}) / den;
  e.a6 = rf({-1}) / den;
  return e;
}

WeierstrassModel curve_196() {
  WeierstrassModel e;
  e.a2 = rf({-4});
  e.a4 = rf({3});
  e.a6 = rf({1});
  return e;
}

}  // namespace

TEST_CASE("rational function canonical form") {
  RationalFunction f(poly({-1, 0, 1}), poly({-1, 1}));  // (t^2-1)/(t-1)
  CHECK(f.num() == poly({1, 1}));
  CHECK(f.den() == poly({1}));
  RationalFunction g(poly({0, 2}), poly({0, 0, 4}));  // 2t/4t^2 = (1/2)/t
  CHECK(g.den() == poly({0, 1}));
  CHECK(g.num() == Poly<Rat>::constant(Rat(1, 2)));
  CHECK(g.map_degree() == 1);
  RationalFunction t = rf({0, 1});
  CHECK(t.pow(-2) * t.pow(2) == rf({1}));
  CHECK((t + rf({1})) * (t - rf({1})) == rf({-1, 0, 1}));
  CHECK(rf({0, 1}).eval(Rat(7)) == Rat(7));
  CHECK(RationalFunction(poly({1}), poly({-2, 1})).has_pole_at(Rat(2)));
}

TEST_CASE("weierstrass invariants") {
  WeierstrassModel e = curve_196();
  WeierstrassInvariants v = weierstrass_invariants(e);
  // Hand evaluation: b2 = -16, b4 = 6, b6 = 4.
  CHECK(v.c4 == rf({112}));
  CHECK(v.c6 == rf({-224}));
  CHECK(v.disc == rf({784}));
  CHECK(v.j == rf({1792}));

  WeierstrassModel ex = WeierstrassModel::short_model(rf({1}), rf({0}));
  CHECK(weierstrass_invariants(ex).j == rf({1728}));

  WeierstrassModel et = twist_family();
  WeierstrassInvariants vt = weierstrass_invariants(et);
  RationalFunction residual = RationalFunction::constant(Rat(1728)) * vt.disc -
                              (vt.c4.pow(3) - vt.c6 * vt.c6);
  CHECK(residual.is_zero());

  WeierstrassModel singular = WeierstrassModel::short_model(rf({0}), rf({0}));
  CHECK_THROWS_WITH_AS(weierstrass_invariants(singular),
                       "model has vanishing discriminant", AtlasError);
}

TEST_CASE("square classes") {
  WeierstrassModel et = twist_family();
  SquareClass sc = square_class(weierstrass_invariants(et).disc);
  CHECK(sc.poly == poly({0, -1, -11, 1}));  // t(t^2 - 11t - 1)
  CHECK(sc.constant == Rat(1));

  CHECK(square_class(rf({0, 0, 1})).is_trivial());  // t^2
  CHECK(square_class(RationalFunction::constant(Rat(-12))).constant == Rat(-3));

  // class(f g^2) = class(f)
  RationalFunction f(poly({1, 5, 0, 2}), poly({3, 1}));
  RationalFunction g(poly({-7, 2, 1}), poly({0, 4, 9}));
  CHECK(square_class(f * g * g) == square_class(f));
  // multiplicativity with reduction
  SquareClass prod = square_class_mul(square_class(rf({0, 1})),
                                      square_class(rf({0, 3})));
  CHECK(prod.poly == poly({1}));
  CHECK(prod.constant == Rat(3));

  CHECK_THROWS_AS(square_class(RationalFunction()), AtlasError);
}

TEST_CASE("quadratic twist reproduces the printed family") {
  WeierstrassModel et = twist_family();
  RationalFunction d = rf({0, -1, -11, 1});
  WeierstrassModel tw = quadratic_twist(et, d);
  Poly<Rat> a4 = poly({0, 0, -27}) * poly({-1, -11, 1}).pow(2) *
                 poly({1, 12, 14, -12, 1});
  Poly<Rat> a6 = poly({0, 0, 0, 54}) * poly({-1, -11, 1}).pow(3) *
                 poly({1, 0, 1}) * poly({1, 18, 74, -18, 1});
  CHECK(tw.a4 == RationalFunction(a4));
  CHECK(tw.a6 == RationalFunction(a6));
  CHECK(tw.a1.is_zero());
  CHECK(tw.a2.is_zero());
  CHECK(tw.a3.is_zero());

  WeierstrassInvariants v = weierstrass_invariants(et);
  WeierstrassInvariants vt = weierstrass_invariants(tw);
  CHECK(vt.j == v.j);
  // The two special parameter values share their j-invariant.
  CHECK(v.j.eval(Rat(10)) == v.j.eval(Rat(-1, 10)));

  CHECK(quadratic_twist(et, rf({1})) == short_form(et));
  WeierstrassModel twice = quadratic_twist(tw, d);
  CHECK(weierstrass_invariants(twice).j == v.j);
  CHECK(square_class(weierstrass_invariants(twice).disc) ==
        square_class(v.disc));
  CHECK_THROWS_AS(quadratic_twist(et, RationalFunction()), AtlasError);
}

TEST_CASE("generic cubic-j family") {
  WeierstrassModel e = cubic_j_family();
  WeierstrassInvariants v = weierstrass_invariants(e);
  CHECK(v.j == rf({0, 0, 0, 1}));
  SquareClass sc = square_class(v.disc);
  CHECK(sc.poly == poly({-12, 1}) * poly({144, 12, 1}));
  CHECK(sc.constant == Rat(1));
}

TEST_CASE("quartic reduction") {
  Poly<Rat> quart = -(poly({-3, 1}) * poly({7, 7, -7, 1}));
  WeierstrassModel reduced = quartic_to_weierstrass(quart, Rat(3), Rat(0));
  CHECK(q_isomorphic(reduced, curve_196()));

  // A monic cubic passes through unchanged.
  WeierstrassModel fixed = quartic_to_weierstrass(poly({1, 3, -4, 1}), Rat(0), Rat(1));
  CHECK(fixed.a1.is_zero());
  CHECK(fixed.a2 == rf({-4}));
  CHECK(fixed.a4 == rf({3}));
  CHECK(fixed.a6 == rf({1}));

  Poly<Rat> repeated = poly({-1, 1}).pow(2) * poly({1, 1}).pow(2);
  CHECK_THROWS_WITH_AS(quartic_to_weierstrass(repeated, Rat(0), Rat(1)),
                       "quartic has a repeated root", AtlasError);
  CHECK_THROWS_WITH_AS(quartic_to_weierstrass(quart, Rat(0), Rat(1)),
                       "the supplied point is not on the curve", AtlasError);
  CHECK_THROWS_AS(quartic_to_weierstrass(poly({1, 1}), Rat(0), Rat(1)),
                  AtlasError);
}

TEST_CASE("rational isomorphism test") {
  WeierstrassModel e = curve_196();
  CHECK(q_isomorphic(e, e));
  CHECK_FALSE(q_isomorphic(e, quadratic_twist(e, rf({5}))));
  WeierstrassModel s = short_form(e);
  WeierstrassModel scaled = WeierstrassModel::short_model(
      s.a4 * rf({256}), s.a6 * rf({4096}));  // u = 2
  CHECK(q_isomorphic(s, scaled));
  CHECK(q_isomorphic(scaled, s));

  // j = 0: sextic-twist classes.
  WeierstrassModel j0a = WeierstrassModel::short_model(rf({0}), rf({1}));
  WeierstrassModel j0b = WeierstrassModel::short_model(rf({0}), rf({64}));
  WeierstrassModel j0c = WeierstrassModel::short_model(rf({0}), rf({2}));
  CHECK(q_isomorphic(j0a, j0b));
  CHECK_FALSE(q_isomorphic(j0a, j0c));

  // j = 1728: quartic-twist classes.
  WeierstrassModel j1728a = WeierstrassModel::short_model(rf({1}), rf({0}));
  WeierstrassModel j1728b = WeierstrassModel::short_model(rf({16}), rf({0}));
  WeierstrassModel j1728c = WeierstrassModel::short_model(rf({2}), rf({0}));
  CHECK(q_isomorphic(j1728a, j1728b));
  CHECK_FALSE(q_isomorphic(j1728a, j1728c));

  CHECK_FALSE(q_isomorphic(j0a, j1728a));
  CHECK_THROWS_AS(q_isomorphic(e, twist_family()), AtlasError);
}

TEST_CASE("composition identity for the degree-30 map") {
  RationalFunction jmap(poly({0, 0, 0, 40, 5, 1}));
  RationalFunction cover(poly({3, -12, 80, -50, -20, 8, 8}),
                         poly({1, 1}).pow(2) * poly({1, -3, 1}).pow(2));
  RationalFunction composed = compose(jmap, cover);
  Poly<Rat> p1 = poly({3, -12, 80, -50, -20, 8, 8});
  Poly<Rat> num = poly({2, -1, 2}).pow(3) * p1.pow(3) *
                  poly({8, -52, 130, 25, -70, -12, 18});
  Poly<Rat> den = poly({1, 1}).pow(10) * poly({1, -3, 1}).pow(10);
  CHECK(composed == RationalFunction(num, den));
  CHECK(jmap.map_degree() == 5);
  CHECK(cover.map_degree() == 6);
  CHECK(composed.map_degree() == 30);  // no cancellation

  RationalFunction f(poly({1, 2, 3}), poly({-5, 0, 1}));
  CHECK(compose(f, rf({0, 1})) == f);
  CHECK_THROWS_AS(compose(f, rf({3})), AtlasError);
}

TEST_CASE("cyclotomic roots") {
  auto r6 = cyclotomic_roots(poly({3, 0, 1}), 6);  // t^2 + 3
  REQUIRE(r6.size() == 2);
  for (const auto& r : r6) CHECK(r * r == CyclotomicNumber(Rat(-3)));
  CHECK(r6[0] != r6[1]);
  CHECK(cyclotomic_roots(poly({3, 0, 1}), 1).empty());

  auto r4 = cyclotomic_roots(poly({1, 0, 1}), 4);  // t^2 + 1
  REQUIRE(r4.size() == 2);
  CHECK(r4[0] == -r4[1]);
  CHECK(r4[0] * r4[0] == CyclotomicNumber(Rat(-1)));

  auto rq = cyclotomic_roots(poly({-1, 0, 1}), 1);
  REQUIRE(rq.size() == 2);
  CHECK(rq[0].is_rational());
  CHECK(rq[0].rational_value() + rq[1].rational_value() == 0);

  std::vector<Rat> half{Rat(1, 4), Rat(-1), Rat(1)};  // (t - 1/2)^2
  auto rh = cyclotomic_roots(Poly<Rat>(half), 1);
  REQUIRE(rh.size() == 1);
  CHECK(rh[0].rational_value() == Rat(1, 2));

  // Totally real cyclic cubic of conductor 7, visible at level 14 only.
  Poly<Rat> cubic = poly({1, -1, -2, 1});
  auto r14 = cyclotomic_roots(cubic, 14);
  REQUIRE(r14.size() == 3);
  for (const auto& r : r14) {
    CyclotomicNumber v = ((r - CyclotomicNumber(Rat(2))) * r -
                          CyclotomicNumber(Rat(1))) * r + CyclotomicNumber(Rat(1));
    CHECK(v.is_zero());
  }
  CHECK(cyclotomic_roots(cubic, 2).empty());

  CHECK_THROWS_AS(cyclotomic_roots(Poly<Rat>(), 6), AtlasError);
}

TEST_CASE("moebius equivalence of genus-zero maps") {
  RationalFunction f(poly({12, 0, 1}).pow(3));  // (t^2 + 12)^3
  std::vector<Rat> gc{Rat(12), Rat(0), Rat(-1, 3)};
  RationalFunction g(Poly<Rat>(gc).pow(3));  // (12 - t^2/3)^3

  auto self = moebius_equivalent(f, f, 6);
  REQUIRE(self.has_value());
  CHECK(self->a == CyclotomicNumber(Rat(1)));
  CHECK(self->b.is_zero());
  CHECK(self->c.is_zero());
  CHECK(self->d == CyclotomicNumber(Rat(1)));

  auto mu = moebius_equivalent(f, g, 6);
  REQUIRE(mu.has_value());
  // mu = lambda t with lambda^2 = -3: a square root of -3 times t, up to units.
  CHECK(mu->b.is_zero());
  CHECK(mu->c.is_zero());
  CHECK((mu->a * mu->a) / (mu->d * mu->d) == CyclotomicNumber(Rat(-3)));
  CHECK_FALSE(moebius_equivalent(f, g, 1).has_value());
  CHECK(moebius_equivalent(g, f, 6).has_value());

  CHECK_THROWS_AS(moebius_equivalent(f, rf({0, 1}), 6), AtlasError);
}

TEST_CASE("moebius equivalence of the two degree-48 parameterizations") {
  Poly<Rat> p1 =
      poly({37, 24, 11, 532, 1752, 2886, 3091, 2334, 1254, 466, 113, 16, 1});
  RationalFunction j1(
      poly({3, 3, 1}).pow(3) * poly({31, 75, 76, 47, 22, 7, 1}) * p1.pow(3),
      poly({1, 1}).pow(14) * poly({2, 1}).pow(14) * poly({-1, 3, 4, 1}).pow(2));
  Poly<Rat> p2 = poly(
      {1, -4, 243, -956, 2880, -7206, 11263, -10050, 5046, -1474, 265, -8, 1});
  RationalFunction j2(
      poly({1, -1, 1}).pow(3) * poly({1, -1, 2, -9, 12, -5, 1}) * p2.pow(3),
      poly({-1, 1}).pow(2) * poly({0, 0, 1}) * poly({1, -1, -2, 1}).pow(14));
  CHECK(j1.map_degree() == 48);
  CHECK(j2.map_degree() == 48);

  auto mu = moebius_equivalent(j1, j2, 14);
  REQUIRE(mu.has_value());
  // Independent spot check that the returned map conjugates j2 into j1.
  CyclotomicNumber t0(Rat(2));
  auto image = mu->eval(t0);
  REQUIRE(image.has_value());
  auto eval_at = [](const Poly<Rat>& p, const CyclotomicNumber& x) {
    CyclotomicNumber acc;
    for (int i = p.degree(); i >= 0; --i)
      acc = acc * x + CyclotomicNumber(p.coeff(std::size_t(i)));
    return acc;
  };
  CyclotomicNumber lhs = CyclotomicNumber(j1.eval(Rat(2)));
  CyclotomicNumber rhs =
      eval_at(j2.num(), *image) / eval_at(j2.den(), *image);
  CHECK(lhs == rhs);

  // Over the rationals the two maps parameterize different curves.
  CHECK_FALSE(moebius_equivalent(j1, j2, 1).has_value());
}
