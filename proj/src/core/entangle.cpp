#include "core/entangle.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "core/gl2meta.hpp"

namespace atlas {

// --- SmallGroup basics ------------------------------------------------------

int SmallGroup::inverse(int x) const {
  for (int y = 0; y < size(); ++y)
    if (mul[std::size_t(x)][std::size_t(y)] == 0) return y;
  fail(ErrorCode::Internal, "element without inverse in multiplication table");
}

Int SmallGroup::element_order(int x) const {
  Int ord = 1;
  int acc = x;
  while (acc != 0) {
    acc = mul[std::size_t(acc)][std::size_t(x)];
    ++ord;
  }
  return ord;
}

bool SmallGroup::is_abelian() const {
  for (int x = 0; x < size(); ++x)
    for (int y = x + 1; y < size(); ++y)
      if (mul[std::size_t(x)][std::size_t(y)] !=
          mul[std::size_t(y)][std::size_t(x)])
        return false;
  return true;
}

std::map<Int, Int> SmallGroup::order_census() const {
  std::map<Int, Int> census;
  for (int x = 0; x < size(); ++x) ++census[element_order(x)];
  return census;
}

SmallGroup SmallGroup::from_table(const QuotientTable& q) {
  if (q.table.empty() || q.table.size() != q.reps.size())
    fail(ErrorCode::InvalidArgument, "malformed quotient table");
  return SmallGroup{q.table};
}

namespace {

// Subgroup generated by `seeds` (indices), as a sorted index list.  In a
// finite group the multiplicative closure of a set containing the identity
// is already a subgroup (inverses arise as powers).
std::vector<int> sg_closure(const SmallGroup& g, const std::vector<int>& seeds) {
  std::vector<char> in(std::size_t(g.size()), 0);
  in[0] = 1;
  for (int s : seeds) in[std::size_t(s)] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<int> cur;
    for (int x = 0; x < g.size(); ++x)
      if (in[std::size_t(x)]) cur.push_back(x);
    for (int x : cur)
      for (int y : cur) {
        int z = g.mul[std::size_t(x)][std::size_t(y)];
        if (!in[std::size_t(z)]) {
          in[std::size_t(z)] = 1;
          changed = true;
        }
      }
  }
  std::vector<int> out;
  for (int x = 0; x < g.size(); ++x)
    if (in[std::size_t(x)]) out.push_back(x);
  return out;
}

std::vector<std::vector<int>> sg_conjugacy_classes(const SmallGroup& g) {
  std::vector<char> seen(std::size_t(g.size()), 0);
  std::vector<std::vector<int>> classes;
  for (int x = 0; x < g.size(); ++x) {
    if (seen[std::size_t(x)]) continue;
    std::set<int> cls;
    for (int h = 0; h < g.size(); ++h) {
      int hx = g.mul[std::size_t(h)][std::size_t(x)];
      cls.insert(g.mul[std::size_t(hx)][std::size_t(g.inverse(h))]);
    }
    classes.emplace_back(cls.begin(), cls.end());
    for (int y : classes.back()) seen[std::size_t(y)] = 1;
  }
  return classes;
}

}  // namespace

std::vector<std::vector<int>> small_group_normal_subgroups(const SmallGroup& g) {
  // Atoms: subgroups generated by single conjugacy classes; every normal
  // subgroup is a join of atoms.
  std::vector<std::vector<int>> atoms;
  for (const std::vector<int>& cls : sg_conjugacy_classes(g)) {
    if (cls.size() == 1 && cls[0] == 0) continue;
    atoms.push_back(sg_closure(g, cls));
  }
  std::set<std::vector<int>> found;
  found.insert(std::vector<int>{0});
  std::deque<std::vector<int>> work(found.begin(), found.end());
  while (!work.empty()) {
    std::vector<int> cur = work.front();
    work.pop_front();
    for (const std::vector<int>& a : atoms) {
      std::vector<int> seeds = cur;
      seeds.insert(seeds.end(), a.begin(), a.end());
      std::vector<int> j = sg_closure(g, seeds);
      if (found.insert(j).second) work.push_back(j);
    }
  }
  return {found.begin(), found.end()};
}

SmallGroup small_group_quotient(const SmallGroup& g,
                                const std::vector<int>& normal) {
  std::vector<char> in(std::size_t(g.size()), 0);
  for (int x : normal) in[std::size_t(x)] = 1;
  // coset key: least element of x * N
  std::vector<int> coset_key(std::size_t(g.size()), -1);
  for (int x = 0; x < g.size(); ++x) {
    int best = g.size();
    for (int n : normal) best = std::min(best, g.mul[std::size_t(x)][std::size_t(n)]);
    coset_key[std::size_t(x)] = best;
  }
  std::vector<int> reps;  // sorted keys; key 0 (identity coset) first
  for (int x = 0; x < g.size(); ++x)
    if (coset_key[std::size_t(x)] == x) reps.push_back(x);
  std::vector<int> id_of(std::size_t(g.size()), -1);
  for (std::size_t i = 0; i < reps.size(); ++i) id_of[std::size_t(reps[i])] = int(i);
  SmallGroup q;
  q.mul.assign(reps.size(), std::vector<int>(reps.size(), 0));
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = 0; j < reps.size(); ++j) {
      int prod = g.mul[std::size_t(reps[i])][std::size_t(reps[j])];
      q.mul[i][j] = id_of[std::size_t(coset_key[std::size_t(prod)])];
    }
  return q;
}

namespace {

// Greedy small generating sequence: repeatedly adjoin the least element
// outside the running closure.
std::vector<int> sg_generators(const SmallGroup& g) {
  std::vector<int> gens;
  std::vector<int> cl = sg_closure(g, {});
  while (int(cl.size()) < g.size()) {
    int pick = -1;
    std::vector<char> in(std::size_t(g.size()), 0);
    for (int x : cl) in[std::size_t(x)] = 1;
    for (int x = 0; x < g.size() && pick < 0; ++x)
      if (!in[std::size_t(x)]) pick = x;
    gens.push_back(pick);
    std::vector<int> seeds = gens;
    cl = sg_closure(g, seeds);
  }
  return gens;
}

// Does mapping gens -> images extend to an isomorphism?  Words in the
// generators define the candidate map; a full table check settles it.
bool extends_to_isomorphism(const SmallGroup& a, const SmallGroup& b,
                            const std::vector<int>& gens,
                            const std::vector<int>& images) {
  std::vector<int> phi(std::size_t(a.size()), -1);
  phi[0] = 0;
  std::deque<int> work{0};
  std::vector<char> hit(std::size_t(b.size()), 0);
  hit[0] = 1;
  while (!work.empty()) {
    int x = work.front();
    work.pop_front();
    for (std::size_t k = 0; k < gens.size(); ++k) {
      int xa = a.mul[std::size_t(x)][std::size_t(gens[k])];
      int xb = b.mul[std::size_t(phi[std::size_t(x)])][std::size_t(images[k])];
      if (phi[std::size_t(xa)] < 0) {
        if (hit[std::size_t(xb)]) return false;  // not injective
        phi[std::size_t(xa)] = xb;
        hit[std::size_t(xb)] = 1;
        work.push_back(xa);
      } else if (phi[std::size_t(xa)] != xb) {
        return false;
      }
    }
  }
  for (int x = 0; x < a.size(); ++x)
    if (phi[std::size_t(x)] < 0) return false;  // gens do not generate
  for (int x = 0; x < a.size(); ++x)
    for (int y = 0; y < a.size(); ++y) {
      int lhs = phi[std::size_t(a.mul[std::size_t(x)][std::size_t(y)])];
      int rhs = b.mul[std::size_t(phi[std::size_t(x)])][std::size_t(phi[std::size_t(y)])];
      if (lhs != rhs) return false;
    }
  return true;
}

bool iso_backtrack(const SmallGroup& a, const SmallGroup& b,
                   const std::vector<int>& gens, std::vector<int>& images,
                   std::size_t k) {
  if (k == gens.size()) return extends_to_isomorphism(a, b, gens, images);
  Int want = a.element_order(gens[k]);
  for (int y = 1; y < b.size(); ++y) {
    if (b.element_order(y) != want) continue;
    images[k] = y;
    if (iso_backtrack(a, b, gens, images, k + 1)) return true;
  }
  return false;
}

}  // namespace

bool small_groups_isomorphic(const SmallGroup& a, const SmallGroup& b) {
  if (a.size() != b.size()) return false;
  if (a.size() <= 1) return true;
  if (a.is_abelian() != b.is_abelian()) return false;
  if (a.order_census() != b.order_census()) return false;
  std::vector<int> gens = sg_generators(a);
  std::vector<int> images(gens.size(), 0);
  return iso_backtrack(a, b, gens, images, 0);
}

namespace {

std::vector<Int> sg_abelian_invariants(const SmallGroup& g0) {
  // Largest-order element generates a direct factor of a finite abelian
  // group; extract and recurse on the quotient.  Orders come out in
  // decreasing divisibility order d_k, d_{k-1}, ...
  std::vector<Int> factors;
  SmallGroup g = g0;
  while (g.size() > 1) {
    int best = 1;
    Int best_ord = g.element_order(1);
    for (int x = 2; x < g.size(); ++x) {
      Int o = g.element_order(x);
      if (o > best_ord) {
        best_ord = o;
        best = x;
      }
    }
    factors.push_back(best_ord);
    g = small_group_quotient(g, sg_closure(g, {best}));
  }
  std::reverse(factors.begin(), factors.end());
  return factors;  // ascending divisibility d1 | d2 | ... | dk
}

Group trivial_group(Int n) { return Group::generated(n, {}); }

struct NamedRef {
  const char* tag;
  SmallGroup table;
};

const std::vector<NamedRef>& named_refs() {
  static const std::vector<NamedRef> refs = [] {
    std::vector<NamedRef> v;
    auto table_of = [](const Group& g, const Group& m) {
      return SmallGroup::from_table(quotient_table(g, m));
    };
    v.push_back({"S3", table_of(gl2_group(2), trivial_group(2))});
    v.push_back({"D4", table_of(Group::generated(4, {{0, 3, 1, 0}, {1, 0, 0, 3}}),
                                trivial_group(4))});
    v.push_back({"Q8", table_of(Group::generated(3, {{0, 2, 1, 0}, {1, 1, 1, 2}}),
                                trivial_group(3))});
    v.push_back({"A4", table_of(sl2_group(3),
                                Group::generated(3, {{2, 0, 0, 2}}))});
    v.push_back({"S4", table_of(gl2_group(3),
                                Group::generated(3, {{2, 0, 0, 2}}))});
    return v;
  }();
  return refs;
}

}  // namespace

GroupIsoClass identify_small_group(const SmallGroup& g) {
  if (g.size() > 64)
    fail(ErrorCode::TooLarge, "iso-class identification limited to order 64");
  if (g.size() < 1) fail(ErrorCode::InvalidArgument, "empty multiplication table");
  GroupIsoClass cls;
  cls.order = g.size();
  cls.order_census = g.order_census();
  cls.abelian = g.is_abelian();
  if (cls.abelian) {
    cls.abelian_invariants = sg_abelian_invariants(g);
  } else {
    cls.named_tag = "unidentified";
    for (const NamedRef& ref : named_refs())
      if (ref.table.size() == g.size() && small_groups_isomorphic(g, ref.table)) {
        cls.named_tag = ref.tag;
        break;
      }
  }
  return cls;
}

GroupIsoClass identify_iso_class(const QuotientTable& q) {
  return identify_small_group(SmallGroup::from_table(q));
}

std::string GroupIsoClass::str() const {
  if (order == 1) return "1";
  if (abelian) {
    std::string s;
    for (std::size_t i = 0; i < abelian_invariants.size(); ++i) {
      if (i) s += " x ";
      s += "Z/" + std::to_string(abelian_invariants[i]);
    }
    return s;
  }
  if (named_tag != "unidentified") return named_tag;
  return "unidentified[" + std::to_string(order) + "]";
}

bool is_quotient_of(const SmallGroup& q1, const SmallGroup& q2) {
  if (q2.size() % q1.size() != 0) return false;
  if (q1.size() == 1) return true;
  if (q1.size() == q2.size()) return small_groups_isomorphic(q1, q2);
  for (const std::vector<int>& n : small_group_normal_subgroups(q2)) {
    if (int(n.size()) * q1.size() != q2.size()) continue;
    if (small_groups_isomorphic(q1, small_group_quotient(q2, n))) return true;
  }
  return false;
}

// --- entanglement reports ---------------------------------------------------

namespace {

void check_pair(const Group& g, Int a, Int b) {
  if (a < 2 || b <= a)
    fail(ErrorCode::BadPair, "entanglement pair needs 2 <= a < b");
  if (g.modulus() % lcm_ll(a, b) != 0)
    fail(ErrorCode::BadPair, "lcm(a,b) must divide the modulus");
}

// Everything except the primitivity-dependent flags and the SL2 side.
// Valid for groups with or without surjective determinant.
EntanglementReport report_core(const Group& g, Int a, Int b) {
  EntanglementReport r;
  r.level = g.modulus();
  r.a = a;
  r.b = b;
  r.c = lcm_ll(a, b);
  r.d = gcd_ll(a, b);
  r.g_c = g.reduce_mod(r.c);
  r.n_a = r.g_c.kernel_of_reduction(a);
  r.n_b = r.g_c.kernel_of_reduction(b);
  r.n_d = r.d == 1 ? r.g_c : r.g_c.kernel_of_reduction(r.d);
  r.joint = join(r.n_a, r.n_b);

  // <N_a, N_b> = pi_a^-1(pi_a(N_b)) = pi_b^-1(pi_b(N_a)) inside G_c.
  auto preimage = [&](const Group& kern, Int m) {
    std::unordered_set<std::uint64_t> keys;
    for (const Mat2& x : kern.elements()) keys.insert(mat_key(mat_reduce(x, m), m));
    std::vector<Mat2> elems;
    for (const Mat2& x : r.g_c.elements())
      if (keys.count(mat_key(mat_reduce(x, m), m))) elems.push_back(x);
    return Group::from_elements(r.c, std::move(elems));
  };
  if (!preimage(r.n_b, a).same_group(r.joint) ||
      !preimage(r.n_a, b).same_group(r.joint))
    fail(ErrorCode::Internal, "joint kernel does not match its preimage form");

  r.quotient = SmallGroup::from_table(quotient_table(r.n_d, r.joint));
  r.type = identify_small_group(r.quotient);
  r.represents = r.joint.order() < r.n_d.order();
  r.det_index = euler_phi(r.c) / Int(r.joint.det_image().size());
  r.group_index = r.g_c.order() / r.joint.order();
  if (r.type.order != r.n_d.order() / r.joint.order())
    fail(ErrorCode::Internal, "entanglement type order mismatch");
  return r;
}

EntanglementPoset poset_impl(const Group& g) {
  EntanglementPoset ps;
  Int n = g.modulus();
  ps.modulus = n;
  std::vector<Int> divisors;
  for (Int a = 2; a <= n; ++a)
    if (n % a == 0) divisors.push_back(a);
  for (std::size_t i = 0; i < divisors.size(); ++i)
    for (std::size_t j = i + 1; j < divisors.size(); ++j) {
      EntanglementReport rc = report_core(g, divisors[i], divisors[j]);
      if (rc.represents)
        ps.entries.push_back({rc.a, rc.b, rc.type, rc.quotient});
    }

  auto le = [&](int i, int j) {
    const PosetEntry& x = ps.entries[std::size_t(i)];
    const PosetEntry& y = ps.entries[std::size_t(j)];
    bool iso = small_groups_isomorphic(x.quotient, y.quotient);
    if (iso && ((x.a % y.a == 0 && x.b % y.b == 0) ||
                (x.a % y.b == 0 && x.b % y.a == 0)))
      return true;
    // Proper quotient only: the isomorphic case is condition (1), and
    // admitting it here would break anti-symmetry.
    if (x.quotient.size() < y.quotient.size() &&
        is_quotient_of(x.quotient, y.quotient) &&
        ((y.a % x.a == 0 && y.b % x.b == 0) ||
         (y.a % x.b == 0 && y.b % x.a == 0)))
      return true;
    return false;
  };
  for (int i = 0; i < int(ps.entries.size()); ++i)
    for (int j = 0; j < int(ps.entries.size()); ++j)
      if (le(i, j)) ps.relation.emplace_back(i, j);

  std::vector<int> maxima = ps.maximal_indices();
  if (maxima.size() == 1) {
    ps.unique_maximal = maxima[0];
    const PosetEntry& top = ps.entries[std::size_t(maxima[0])];
    ps.primitive = lcm_ll(top.a, top.b) == n;
  }
  return ps;
}

}  // namespace

bool EntanglementPoset::le(int i, int j) const {
  return std::find(relation.begin(), relation.end(), std::make_pair(i, j)) !=
         relation.end();
}

std::vector<int> EntanglementPoset::maximal_indices() const {
  std::vector<int> out;
  for (int i = 0; i < int(entries.size()); ++i) {
    bool dominated = false;
    for (const auto& [x, y] : relation)
      if (x == i && y != i) dominated = true;
    if (!dominated) out.push_back(i);
  }
  return out;
}

EntanglementPoset primitivity_check(const Group& g) {
  if (!g.det_surjective())
    fail(ErrorCode::NonSurjectiveDeterminant,
         "primitivity check requires surjective determinant");
  return poset_impl(g);
}

EntanglementReport entanglement_report(const Group& g, Int a, Int b) {
  check_pair(g, a, b);
  if (!g.det_surjective())
    fail(ErrorCode::NonSurjectiveDeterminant,
         "entanglement report requires surjective determinant");
  EntanglementReport r = report_core(g, a, b);

  // Equivalence of the two "explained" criteria, asserted on every report.
  bool ker_in_joint = r.g_c.intersect_sl2().is_subgroup_of(r.joint);
  if (ker_in_joint != (r.det_index == r.group_index))
    fail(ErrorCode::Internal, "explained-criterion equivalence violated");
  r.explained = r.det_index == r.group_index;

  EntanglementPoset ps = poset_impl(g);
  if (ps.primitive) {
    const PosetEntry& top = ps.entries[std::size_t(*ps.unique_maximal)];
    r.primitive = top.a == a && top.b == b;
  }
  r.unexplained = r.represents && r.primitive && !r.explained;

  r.sl2_type = report_core(g.intersect_sl2(), a, b).type;
  return r;
}

// --- admissibility ----------------------------------------------------------

AdmissibleResult admissible_check(const Group& g) {
  Int n = g.modulus();
  if (g.order() == gl2_order(n)) return {false, "G is all of GL2(Z/n)"};
  if (!g.det_surjective()) return {false, "determinant not surjective"};
  Int minus_one = mod_ll(-1, n);
  for (const Mat2& m : g.elements()) {
    if (mat_trace(m, n) != 0 || mat_det(m, n) != minus_one) continue;
    for (Int x = 0; x < n; ++x)
      for (Int y = 0; y < n; ++y) {
        if (gcd_ll(gcd_ll(x, y), n) != 1) continue;  // exact order n
        if (mod_ll(m.a * x + m.b * y, n) == x &&
            mod_ll(m.c * x + m.d * y, n) == y)
          return {true, ""};
      }
  }
  return {false,
          "no element of trace 0 and determinant -1 fixing a point of order n"};
}

// --- maximal selection ------------------------------------------------------

std::vector<std::size_t> select_maximal_indices(
    const std::vector<Group>& groups) {
  if (groups.empty()) return {};
  Int n = groups.front().modulus();
  for (const Group& g : groups)
    if (g.modulus() != n)
      fail(ErrorCode::ModulusMismatch, "select_maximal: mixed moduli");
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    bool dropped = false;
    for (std::size_t j = 0; j < groups.size() && !dropped; ++j) {
      if (j == i) continue;
      if (groups[j].order() < groups[i].order()) continue;
      if (groups[j].order() == groups[i].order() && j > i) continue;
      if (groups[j].order() % groups[i].order() != 0) continue;
      if (conjugate_into_witness(groups[i], groups[j])) dropped = true;
    }
    if (!dropped) keep.push_back(i);
  }
  return keep;
}

std::vector<Group> select_maximal(const std::vector<Group>& groups) {
  std::vector<Group> out;
  for (std::size_t i : select_maximal_indices(groups)) out.push_back(groups[i]);
  return out;
}

// --- isogeny duality --------------------------------------------------------

bool isogeny_dual_compatible(const Group& g1, const Group& g2, Int m) {
  if (m < 2) fail(ErrorCode::InvalidArgument, "isogeny degree must be >= 2");
  Group im1 = g1.reduce_mod(m);
  Group im2 = g2.reduce_mod(m);

  // All distinct diagonal-pair sets over conjugations into the Borel.
  auto diagonal_sets = [m](const Group& im) {
    std::set<std::vector<std::pair<Int, Int>>> sets;
    for (const Mat2& h : gl2_elements(m)) {
      Mat2 hi = mat_inverse(h, m);
      std::set<std::pair<Int, Int>> diag;
      bool ok = true;
      for (const Mat2& x : im.elements()) {
        Mat2 y = mat_mul(mat_mul(h, x, m), hi, m);
        if (y.c != 0) {
          ok = false;
          break;
        }
        diag.emplace(y.a, y.d);
      }
      if (ok) sets.emplace(diag.begin(), diag.end());
    }
    return sets;
  };
  auto d1 = diagonal_sets(im1);
  auto d2 = diagonal_sets(im2);
  if (d1.empty() || d2.empty())
    fail(ErrorCode::NotBorel, "group has no conjugate inside the Borel mod m");

  for (const auto& s1 : d1) {
    std::vector<std::pair<Int, Int>> swapped;
    swapped.reserve(s1.size());
    for (const auto& [a, d] : s1) swapped.emplace_back(d, a);
    std::sort(swapped.begin(), swapped.end());
    if (d2.count(swapped)) return true;
  }
  return false;
}

}  // namespace atlas
