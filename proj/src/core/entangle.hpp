#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/group.hpp"

namespace atlas {

// Abstract finite group as a multiplication table over 0..n-1 with
// identity 0.  The bridge between matrix-group quotients and isomorphism
// identification.
struct SmallGroup {
  std::vector<std::vector<int>> mul;

  int size() const { return int(mul.size()); }
  int inverse(int x) const;
  Int element_order(int x) const;
  bool is_abelian() const;
  std::map<Int, Int> order_census() const;

  static SmallGroup from_table(const QuotientTable& q);
};

// Subgroups are sorted index vectors containing 0.
std::vector<std::vector<int>> small_group_normal_subgroups(const SmallGroup& g);
SmallGroup small_group_quotient(const SmallGroup& g,
                                const std::vector<int>& normal);
bool small_groups_isomorphic(const SmallGroup& a, const SmallGroup& b);

// Isomorphism-class descriptor.  Exact for abelian groups (invariant
// factors) and for the named nonabelian groups; other nonabelian groups
// keep the tag "unidentified" but remain distinguishable through the order
// census in most small cases.
struct GroupIsoClass {
  Int order = 1;
  bool abelian = true;
  std::vector<Int> abelian_invariants;  // d1 | d2 | ... | dk, product = order
  std::string named_tag;                // nonabelian: S3, D4, Q8, A4, S4, unidentified
  std::map<Int, Int> order_census;

  bool operator==(const GroupIsoClass&) const = default;
  bool is_trivial() const { return order == 1; }

  // "1", "Z/2", "Z/2 x Z/4", "S3", "unidentified[16]"
  std::string str() const;
};

// Identification from a multiplication table; TooLarge beyond order 64.
GroupIsoClass identify_iso_class(const QuotientTable& q);
GroupIsoClass identify_small_group(const SmallGroup& g);

// Is q1 isomorphic to a quotient of q2?  (Both small.)
bool is_quotient_of(const SmallGroup& q1, const SmallGroup& q2);

// Everything attached to one pair (a, b) for one group.
struct EntanglementReport {
  Int level = 1;  // modulus of the input group
  Int a = 0, b = 0;
  Int c = 1, d = 1;  // lcm(a,b), gcd(a,b)
  Group g_c;         // pi_c(G)
  Group n_a, n_b, n_d;
  Group joint;  // N_{a,b}(G) = <N_a, N_b>
  SmallGroup quotient;  // N_d / joint
  GroupIsoClass type;
  GroupIsoClass sl2_type;  // same computation for pi_c(G cap SL2)
  Int det_index = 1;       // [(Z/c)^x : det(joint)]
  Int group_index = 1;     // [G_c : joint]
  bool represents = false;
  bool primitive = false;  // (a,b) is the unique maximal pair and c = level
  bool explained = false;
  bool unexplained = false;
};

// Requires 2 <= a < b, lcm(a,b) | modulus (else BadPair) and surjective
// determinant (else NonSurjectiveDeterminant).  The defining equalities
// pi_a^-1(pi_a(N_b)) = <N_a,N_b> = pi_b^-1(pi_b(N_a)) and the determinant
// criterion for "explained" are asserted on every call.
EntanglementReport entanglement_report(const Group& g, Int a, Int b);

struct PosetEntry {
  Int a = 0, b = 0;
  GroupIsoClass type;
  SmallGroup quotient;
};

// The set T_G of representing pairs with the two-clause relation.  The
// relation is reflexive and anti-symmetric but not transitive in general.
struct EntanglementPoset {
  Int modulus = 1;
  std::vector<PosetEntry> entries;
  std::vector<std::pair<int, int>> relation;  // (i, j): entries[i] <= entries[j]
  std::optional<int> unique_maximal;
  bool primitive = false;  // unique maximal exists with lcm = modulus

  bool le(int i, int j) const;
  std::vector<int> maximal_indices() const;
};

// T_G over all pairs 2 <= a < b with lcm(a,b) | modulus.  Requires
// surjective determinant.
EntanglementPoset primitivity_check(const Group& g);

struct AdmissibleResult {
  bool admissible = false;
  std::string reason;  // empty when admissible; first failing clause else
};

// G != GL2(Z/n), surjective determinant, and an element of trace 0 and
// determinant -1 fixing a point of exact additive order n.
AdmissibleResult admissible_check(const Group& g);

// Groups not contained, up to conjugation, in another input group.  Among
// mutually conjugate inputs the earliest is kept.  ModulusMismatch when the
// inputs disagree.
std::vector<Group> select_maximal(const std::vector<Group>& groups);
std::vector<std::size_t> select_maximal_indices(
    const std::vector<Group>& groups);

// Mod-m images conjugated (all ways) into upper-triangular form; true when
// some pair of conjugations makes the diagonal-pair sets mutual swaps:
// (a,d) in one iff (d,a) in the other.  NotBorel when a group has no
// conjugate inside the Borel mod m.
bool isogeny_dual_compatible(const Group& g1, const Group& g2, Int m);

}  // namespace atlas
