#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "core/entangle.hpp"
#include "core/gl2meta.hpp"
#include "core/goursat.hpp"
#include "core/group.hpp"

using namespace atlas;

namespace {

Group gen6_nab1() { return Group::generated(6, {{2, 5, 3, 2}, {1, 3, 3, 2}}); }
Group gen6_nab2() {
  return Group::generated(6, {{5, 5, 0, 5}, {2, 5, 3, 2}, {2, 1, 3, 1}});
}
Group gen6_max1() { return Group::generated(6, {{5, 1, 4, 3}, {4, 1, 1, 0}}); }
Group gen6_max2() { return Group::generated(6, {{4, 1, 5, 3}, {2, 3, 1, 4}}); }
Group gen6_max3() { return Group::generated(6, {{2, 5, 1, 3}, {4, 3, 5, 2}}); }
Group gen6_max4() { return Group::generated(6, {{2, 5, 1, 3}, {1, 1, 0, 5}}); }

}  // namespace

TEST_CASE("order-36 level-6 groups: report fields and printed joints") {
  for (int which = 0; which < 2; ++which) {
    Group g = which == 0 ? gen6_nab1() : gen6_nab2();
    CHECK(g.order() == 36);
    EntanglementReport r = entanglement_report(g, 2, 3);
    CHECK(r.c == 6);
    CHECK(r.d == 1);
    CHECK(r.represents);
    CHECK(r.type.str() == "Z/2");
    CHECK(r.sl2_type.str() == "Z/2");
    CHECK(r.primitive);
    CHECK_FALSE(r.explained);
    CHECK(r.unexplained);
    CHECK(r.det_index == 1);
    CHECK(r.group_index == 2);

    // The joint subgroup N_{2,3} matches the explicitly listed generators.
    Group printed =
        which == 0
            ? Group::generated(6, {{1, 2, 0, 1}, {1, 0, 0, 5}, {4, 3, 3, 1}})
            : Group::generated(6, {{1, 2, 0, 1}, {5, 0, 0, 1}, {1, 3, 3, 4}});
    CHECK(r.joint.same_group(printed));

    // Mod-3 projection of the joint matches the listed image and has full
    // determinant image, mod-2 projection of G is all of GL2(Z/2).
    Group p3 = r.joint.reduce_mod(3);
    Group printed_p3 = which == 0
                           ? Group::generated(3, {{1, 0, 0, 2}, {1, 1, 0, 1}})
                           : Group::generated(3, {{2, 0, 0, 1}, {1, 1, 0, 1}});
    CHECK(p3.same_group(printed_p3));
    CHECK(p3.det_surjective());
    CHECK(g.reduce_mod(2).order() == 6);
    CHECK(coarse_label(g.reduce_mod(3)) == "B");
  }
  CHECK_FALSE(conjugacy_witness(gen6_nab1(), gen6_nab2()).has_value());
}

TEST_CASE("full GL2(Z/6) has no entanglement") {
  Group g = gl2_group(6);
  EntanglementReport r = entanglement_report(g, 2, 3);
  CHECK_FALSE(r.represents);
  CHECK(r.joint.order() == r.n_d.order());
  EntanglementPoset ps = primitivity_check(g);
  CHECK(ps.entries.empty());
  CHECK_FALSE(ps.primitive);
  AdmissibleResult ad = admissible_check(g);
  CHECK_FALSE(ad.admissible);
  CHECK(ad.reason == "G is all of GL2(Z/n)");
}

TEST_CASE("index-2 fiber product of GL2(2) and GL2(3) is explained") {
  Group left = gl2_group(2);
  Group right = gl2_group(3);
  // Kernels of the sign/det characters: C3 inside GL2(2), SL2 inside GL2(3).
  Group lk = Group::generated(2, {{0, 1, 1, 1}});
  Group rk = right.intersect_sl2();
  QuotientTable lq = quotient_table(left, lk);
  QuotientTable rq = quotient_table(right, rk);
  REQUIRE(lq.reps.size() == 2);
  REQUIRE(rq.reps.size() == 2);
  GoursatTriple tr;
  tr.left = left;
  tr.left_kernel = lk;
  tr.right = right;
  tr.right_kernel = rk;
  tr.gluing = {0, 1};
  Group g = goursat_product(tr);
  CHECK(g.order() == 144);
  EntanglementReport r = entanglement_report(g, 2, 3);
  CHECK(r.represents);
  CHECK(r.type.str() == "Z/2");
  CHECK(r.explained);
  CHECK_FALSE(r.unexplained);
  // Explained means ker(det) lands inside the joint subgroup.
  CHECK(g.intersect_sl2().is_subgroup_of(r.joint));
}

TEST_CASE("four maximal level-6 classes with S3 type") {
  Group g1 = gen6_max1(), g2 = gen6_max2(), g3 = gen6_max3(), g4 = gen6_max4();
  CHECK(g1.order() == 48);
  CHECK(g2.order() == 12);
  CHECK(g3.order() == 6);
  CHECK(g4.order() == 6);
  for (const Group* g : {&g1, &g2, &g3, &g4}) {
    EntanglementReport r = entanglement_report(*g, 2, 3);
    CHECK(r.represents);
    CHECK(r.type.str() == "S3");
    CHECK(r.sl2_type.str() == "Z/3");
    CHECK(r.unexplained);
    CHECK(admissible_check(*g).admissible);
  }
  // Pairwise non-conjugate.
  std::vector<Group> gs = {g1, g2, g3, g4};
  for (std::size_t i = 0; i < gs.size(); ++i)
    for (std::size_t j = i + 1; j < gs.size(); ++j)
      CHECK_FALSE(conjugacy_witness(gs[i], gs[j]).has_value());
  // Only G1 survives maximal selection.
  auto keep = select_maximal_indices(gs);
  REQUIRE(keep.size() == 1);
  CHECK(keep[0] == 0);
  // Adjoining -I to G3 or G4 recovers G2 exactly.
  Mat2 minus_i{5, 0, 0, 5};
  CHECK(g3.adjoin(minus_i).same_group(g2));
  CHECK(g4.adjoin(minus_i).same_group(g2));
  // G2 equals G1 meet the Borel preimage at 3, up to conjugacy.
  Group b3 = borel_group(3);
  std::vector<Mat2> inter;
  for (const Mat2& x : g1.elements())
    if (b3.contains(mat_reduce(x, 3))) inter.push_back(x);
  Group cap = Group::from_elements(6, inter);
  CHECK(cap.order() == 12);
  CHECK(conjugacy_witness(cap, g2).has_value());
}

TEST_CASE("poset of a level-12 preimage points back to level 6") {
  Group base = gen6_nab1();
  std::vector<Mat2> lifted;
  for (const Mat2& x : gl2_elements(12))
    if (base.contains(mat_reduce(x, 6))) lifted.push_back(x);
  Group lift = Group::from_elements(12, lifted);
  EntanglementPoset ps = primitivity_check(lift);
  REQUIRE(ps.entries.size() == 2);
  REQUIRE(ps.unique_maximal.has_value());
  const PosetEntry& top = ps.entries[std::size_t(*ps.unique_maximal)];
  CHECK(top.a == 2);
  CHECK(top.b == 3);
  CHECK(lcm_ll(top.a, top.b) == 6);
  CHECK_FALSE(ps.primitive);
  // Relation stays reflexive and anti-symmetric.
  for (int i = 0; i < int(ps.entries.size()); ++i) {
    CHECK(ps.le(i, i));
    for (int j = 0; j < int(ps.entries.size()); ++j)
      if (i != j) {
        bool both = ps.le(i, j) && ps.le(j, i);
        CHECK_FALSE(both);
      }
  }
}

TEST_CASE("level-10 quadruple: duals and twists pair up") {
  Group g1 = Group::generated(10, {{6, 5, 7, 1}, {7, 0, 9, 9}, {4, 5, 5, 4}});
  Group g2 = Group::generated(10, {{1, 5, 1, 6}, {1, 0, 0, 7}, {4, 5, 5, 4}});
  Group g3 = Group::generated(10, {{1, 5, 1, 6}, {1, 0, 5, 3}, {4, 5, 5, 4}});
  Group g4 = Group::generated(10, {{6, 5, 7, 1}, {8, 5, 7, 6}, {9, 5, 0, 9}});
  std::vector<Group> gs = {g1, g2, g3, g4};
  for (const Group& g : gs) {
    CHECK(g.order() == 120);
    EntanglementReport r = entanglement_report(g, 2, 5);
    CHECK(r.type.str() == "Z/2");
    CHECK(r.sl2_type.str() == "Z/2");
    CHECK(r.unexplained);
    CHECK(admissible_check(g).admissible);
  }
  for (std::size_t i = 0; i < gs.size(); ++i)
    for (std::size_t j = i + 1; j < gs.size(); ++j)
      CHECK_FALSE(conjugacy_witness(gs[i], gs[j]).has_value());

  CHECK(isogeny_dual_compatible(g1, g2, 5));
  CHECK(isogeny_dual_compatible(g3, g4, 5));
  CHECK_FALSE(isogeny_dual_compatible(g1, g4, 5));
  CHECK_FALSE(isogeny_dual_compatible(g2, g3, 5));

  Mat2 minus_i{9, 0, 0, 9};
  Group t1 = g1.adjoin(minus_i), t2 = g2.adjoin(minus_i);
  Group t3 = g3.adjoin(minus_i), t4 = g4.adjoin(minus_i);
  CHECK(t1.same_group(t4));
  CHECK(t2.same_group(t3));
  CHECK_FALSE(t1.same_group(t2));
  // All four share the same SL2 part.
  Group s = g1.intersect_sl2();
  CHECK(s.same_group(g2.intersect_sl2()));
  CHECK(s.same_group(g3.intersect_sl2()));
  CHECK(s.same_group(g4.intersect_sl2()));
}

TEST_CASE("level-14 split and nonsplit groups") {
  Group gs = Group::generated(
      14, {{3, 2, 5, 11}, {2, 13, 1, 12}, {0, 9, 5, 0}, {13, 12, 9, 1}});
  Group gn =
      Group::generated(14, {{12, 11, 11, 3}, {0, 9, 9, 13}, {8, 9, 1, 6}});
  CHECK(gs.order() == 216);
  CHECK(gn.order() == 288);
  for (const Group* g : {&gs, &gn}) {
    EntanglementReport r = entanglement_report(*g, 2, 7);
    CHECK(r.represents);
    CHECK(r.type.str() == "Z/2");
    CHECK(r.sl2_type.str() == "Z/2");
    CHECK(r.unexplained);
    CHECK(admissible_check(*g).admissible);
  }
  CHECK(coarse_label(gs.reduce_mod(7)) == "Ns");
  CHECK(coarse_label(gn.reduce_mod(7)) == "Nn");
}

TEST_CASE("iso class identification: named references and invariants") {
  CHECK(identify_iso_class(quotient_table(gl2_group(2), Group::generated(2, {})))
            .str() == "S3");
  Group d4 = Group::generated(4, {{0, 3, 1, 0}, {1, 0, 0, 3}});
  CHECK(identify_iso_class(quotient_table(d4, Group::generated(4, {}))).str() ==
        "D4");
  Group q8 = Group::generated(3, {{0, 2, 1, 0}, {1, 1, 1, 2}});
  CHECK(identify_iso_class(quotient_table(q8, Group::generated(3, {}))).str() ==
        "Q8");
  Group sl23 = sl2_group(3);
  CHECK(identify_iso_class(quotient_table(sl23, Group::generated(3, {{2, 0, 0, 2}})))
            .str() == "A4");
  Group gl23 = gl2_group(3);
  CHECK(identify_iso_class(quotient_table(gl23, Group::generated(3, {{2, 0, 0, 2}})))
            .str() == "S4");
  // Abelian invariant factors.
  Group c6 = Group::generated(7, {{3, 0, 0, 1}});
  GroupIsoClass c = identify_iso_class(quotient_table(c6, Group::generated(7, {})));
  CHECK(c.abelian);
  CHECK(c.str() == "Z/6");
  Group v4 = Group::generated(8, {{7, 0, 0, 1}, {1, 0, 0, 7}});
  GroupIsoClass v = identify_iso_class(quotient_table(v4, Group::generated(8, {})));
  CHECK(v.str() == "Z/2 x Z/2");
  Int prod = 1;
  for (Int f : v.abelian_invariants) prod *= f;
  CHECK(prod == v.order);
  // Nonabelian order > 12 without a reference stays unidentified.
  Group d12 = Group::generated(13, {{2, 0, 0, 7}, {0, 1, 1, 0}});
  GroupIsoClass u =
      identify_iso_class(quotient_table(d12, Group::generated(13, {})));
  CHECK(u.str() == "unidentified[24]");
  CHECK(u.order_census.at(2) == 13);
  // Trivial group.
  GroupIsoClass t = identify_iso_class(
      quotient_table(Group::generated(2, {}), Group::generated(2, {})));
  CHECK(t.order == 1);
  CHECK(t.abelian);
  CHECK(t.abelian_invariants.empty());
  CHECK(t.str() == "1");
}

TEST_CASE("iso class size guard") {
  Group big = sl2_group(5);
  CHECK_THROWS_AS(
      identify_iso_class(quotient_table(big, Group::generated(5, {}))),
      AtlasError);
}

TEST_CASE("admissibility diagnostics") {
  // Determinant not surjective: scalar subgroup of squares.
  Group sq = Group::generated(5, {{1, 0, 0, 4}});
  AdmissibleResult r1 = admissible_check(sq);
  CHECK_FALSE(r1.admissible);
  CHECK(r1.reason == "determinant not surjective");
  // Nonsplit Cartan at 5: determinant (norm) surjective, yet no element has
  // trace 0 and determinant -1, since norm -1 there forces trace ±2.
  Group no_el = nonsplit_cartan_group(5);
  CHECK(no_el.det_surjective());
  AdmissibleResult r2 = admissible_check(no_el);
  CHECK_FALSE(r2.admissible);
  CHECK(r2.reason ==
        "no element of trace 0 and determinant -1 fixing a point of order n");
  // The level-6 quadruple is admissible (checked in the S3 case above), and
  // GL2 itself is rejected with its own reason (checked earlier).
}

TEST_CASE("entanglement_report argument checking") {
  Group g = gen6_max1();
  CHECK_THROWS_AS(entanglement_report(g, 3, 2), AtlasError);
  CHECK_THROWS_AS(entanglement_report(g, 1, 3), AtlasError);
  CHECK_THROWS_AS(entanglement_report(g, 2, 5), AtlasError);
  Group bad_det = Group::generated(5, {{1, 0, 0, 4}});
  CHECK_THROWS_AS(entanglement_report(bad_det, 1, 5), AtlasError);
}

TEST_CASE("select_maximal requires one modulus and is idempotent") {
  std::vector<Group> mixed = {gen6_max1(), Group::generated(10, {{1, 1, 0, 1}})};
  CHECK_THROWS_AS(select_maximal(mixed), AtlasError);
  std::vector<Group> gs = {gen6_max1(), gen6_max2(), gen6_max3(), gen6_max4()};
  std::vector<Group> once = select_maximal(gs);
  std::vector<Group> twice = select_maximal(once);
  REQUIRE(once.size() == twice.size());
  for (std::size_t i = 0; i < once.size(); ++i)
    CHECK(once[i].same_group(twice[i]));
}

TEST_CASE("isogeny dual compatibility needs a Borel image") {
  Group n5 = nonsplit_cartan_normalizer_group(5);
  CHECK_THROWS_AS(
      isogeny_dual_compatible(n5, n5, 5),
      AtlasError);
}
