#include "core/group.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "core/gl2meta.hpp"

namespace atlas {

namespace {

void sort_by_key(std::vector<Mat2>& elems, Int n) {
  std::sort(elems.begin(), elems.end(), [n](const Mat2& x, const Mat2& y) {
    return mat_key(x, n) < mat_key(y, n);
  });
}

// Breadth-first multiplicative closure of seeds ∪ {I}.  In a finite group
// the closure under right multiplication by the seeds is the generated
// subgroup (inverses arise as powers).
std::vector<Mat2> closure(Int n, const std::vector<Mat2>& seeds,
                          std::unordered_set<std::uint64_t>& keys) {
  std::vector<Mat2> elems;
  std::deque<Mat2> work;
  auto push = [&](const Mat2& m) {
    if (keys.insert(mat_key(m, n)).second) {
      elems.push_back(m);
      work.push_back(m);
    }
  };
  push(mat_identity());
  for (const Mat2& s : seeds) push(mat_reduce(s, n));
  while (!work.empty()) {
    Mat2 x = work.front();
    work.pop_front();
    for (const Mat2& s : seeds) push(mat_mul(x, mat_reduce(s, n), n));
  }
  return elems;
}

}  // namespace

std::shared_ptr<const Group::Data> Group::empty_data() {
  static std::shared_ptr<const Data> d = [] {
    auto p = std::make_shared<Data>();
    p->n = 1;
    p->elems = {mat_identity()};
    p->keys.insert(mat_key(mat_identity(), 1));
    return p;
  }();
  return d;
}

Group Group::wrap(std::shared_ptr<Data> d) {
  sort_by_key(d->elems, d->n);
  Group g;
  g.data_ = std::move(d);
  return g;
}

Group Group::generated(Int modulus, std::vector<Mat2> gens) {
  if (modulus < 1) fail(ErrorCode::InvalidArgument, "modulus must be >= 1");
  auto d = std::make_shared<Data>();
  d->n = modulus;
  for (Mat2& g : gens) {
    g = mat_reduce(g, modulus);
    if (!mat_is_invertible(g, modulus))
      fail(ErrorCode::NonInvertibleGenerator,
           "generator " + mat_to_string(g) + " is not invertible mod " +
               std::to_string(modulus));
  }
  d->gens = gens;
  d->elems = closure(modulus, gens, d->keys);
  return wrap(std::move(d));
}

Group Group::from_elements(Int modulus, std::vector<Mat2> elems,
                           std::vector<Mat2> gens, bool trusted) {
  if (modulus < 1) fail(ErrorCode::InvalidArgument, "modulus must be >= 1");
  auto d = std::make_shared<Data>();
  d->n = modulus;
  for (Mat2& m : elems) m = mat_reduce(m, modulus);
  for (const Mat2& m : elems) d->keys.insert(mat_key(m, modulus));
  // drop duplicates, keep canonical order
  std::vector<Mat2> unique;
  unique.reserve(d->keys.size());
  {
    std::unordered_set<std::uint64_t> seen;
    for (const Mat2& m : elems)
      if (seen.insert(mat_key(m, modulus)).second) unique.push_back(m);
  }
  d->elems = std::move(unique);
  if (d->elems.empty() || !d->keys.count(mat_key(mat_identity(), modulus)))
    fail(ErrorCode::InvalidArgument, "element set lacks the identity");
  if (!trusted) {
    for (const Mat2& x : d->elems) {
      if (!mat_is_invertible(x, modulus))
        fail(ErrorCode::InvalidArgument, "element set contains a non-unit");
      for (const Mat2& y : d->elems)
        if (!d->keys.count(mat_key(mat_mul(x, y, modulus), modulus)))
          fail(ErrorCode::InvalidArgument, "element set is not closed");
    }
  }
  d->gens = gens.empty() ? d->elems : std::move(gens);
  return wrap(std::move(d));
}

bool Group::contains(const Mat2& m) const {
  return data_->keys.count(mat_key(mat_reduce(m, data_->n), data_->n)) != 0;
}

bool Group::contains_key(std::uint64_t key) const {
  return data_->keys.count(key) != 0;
}

bool Group::contains_minus_identity() const {
  return contains(mat_minus_identity(data_->n));
}

bool Group::same_group(const Group& other) const {
  if (data_->n != other.data_->n) return false;
  if (order() != other.order()) return false;
  for (const Mat2& m : data_->elems)
    if (!other.contains_key(mat_key(m, data_->n))) return false;
  return true;
}

bool Group::is_subgroup_of(const Group& other) const {
  if (data_->n != other.data_->n)
    fail(ErrorCode::ModulusMismatch, "subgroup test across different moduli");
  if (order() > other.order()) return false;
  for (const Mat2& m : data_->elems)
    if (!other.contains_key(mat_key(m, data_->n))) return false;
  return true;
}

Group Group::reduce_mod(Int m) const {
  Int n = data_->n;
  if (m < 1 || n % m != 0)
    fail(ErrorCode::NotADivisor,
         std::to_string(m) + " does not divide modulus " + std::to_string(n));
  auto d = std::make_shared<Data>();
  d->n = m;
  for (const Mat2& x : data_->elems) {
    Mat2 r = mat_reduce(x, m);
    if (d->keys.insert(mat_key(r, m)).second) d->elems.push_back(r);
  }
  for (const Mat2& g : data_->gens) d->gens.push_back(mat_reduce(g, m));
  if (d->gens.empty()) d->gens = d->elems;
  return wrap(std::move(d));
}

Group Group::kernel_of_reduction(Int m) const {
  Int n = data_->n;
  if (m < 1 || n % m != 0)
    fail(ErrorCode::NotADivisor,
         std::to_string(m) + " does not divide modulus " + std::to_string(n));
  const Mat2 id = mat_identity();
  std::vector<Mat2> kel;
  for (const Mat2& x : data_->elems)
    if (mat_reduce(x, m) == id) kel.push_back(x);
  return from_elements(n, std::move(kel));
}

Group Group::intersect_sl2() const {
  std::vector<Mat2> kel;
  for (const Mat2& x : data_->elems)
    if (mat_det(x, data_->n) == 1 % data_->n) kel.push_back(x);
  return from_elements(data_->n, std::move(kel));
}

Group Group::intersect(const Group& other) const {
  if (data_->n != other.data_->n)
    fail(ErrorCode::ModulusMismatch, "intersection across different moduli");
  std::vector<Mat2> common;
  for (const Mat2& x : data_->elems)
    if (other.contains_key(mat_key(x, data_->n))) common.push_back(x);
  return from_elements(data_->n, std::move(common));
}

Group Group::adjoin(const Mat2& extra) const {
  std::vector<Mat2> gens = data_->gens;
  gens.push_back(mat_reduce(extra, data_->n));
  return generated(data_->n, std::move(gens));
}

Group Group::conjugate_by(const Mat2& g) const {
  Int n = data_->n;
  if (!mat_is_invertible(g, n))
    fail(ErrorCode::InvalidArgument, "conjugator must be invertible");
  auto d = std::make_shared<Data>();
  d->n = n;
  for (const Mat2& x : data_->elems) {
    Mat2 y = mat_conj(g, x, n);
    d->keys.insert(mat_key(y, n));
    d->elems.push_back(y);
  }
  for (const Mat2& x : data_->gens) d->gens.push_back(mat_conj(g, x, n));
  return wrap(std::move(d));
}

std::vector<Int> Group::det_image() const {
  std::unordered_set<Int> seen;
  std::vector<Int> dets;
  for (const Mat2& x : data_->elems)
    if (seen.insert(mat_det(x, data_->n)).second)
      dets.push_back(mat_det(x, data_->n));
  std::sort(dets.begin(), dets.end());
  return dets;
}

bool Group::det_surjective() const {
  return Int(det_image().size()) == euler_phi(data_->n);
}

Group Group::det_kernel() const { return intersect_sl2(); }

const std::map<Int, Int>& Group::order_census() const {
  std::call_once(data_->census_once, [&] {
    std::map<Int, Int> census;
    for (const Mat2& x : data_->elems) ++census[mat_order_cached(x, data_->n)];
    data_->census = std::move(census);
  });
  return data_->census;
}

std::uint64_t Group::fingerprint() const {
  std::call_once(data_->fp_once, [&] {
    Int n = data_->n;
    // Multiset of conjugation invariants per element.
    std::vector<std::uint64_t> sig;
    sig.reserve(data_->elems.size());
    for (const Mat2& x : data_->elems) {
      std::uint64_t v = std::uint64_t(mat_order_cached(x, n));
      v = hash_mix(v, std::uint64_t(mat_det(x, n)));
      v = hash_mix(v, std::uint64_t(mat_trace(x, n)));
      sig.push_back(v);
    }
    std::sort(sig.begin(), sig.end());
    std::uint64_t h = hash_mix(std::uint64_t(n), std::uint64_t(order()));
    for (std::uint64_t v : sig) h = hash_mix(h, v);
    data_->fp = h;
  });
  return data_->fp;
}

std::uint64_t Group::element_set_hash() const {
  std::uint64_t h = hash_mix(std::uint64_t(data_->n), std::uint64_t(order()));
  for (const Mat2& m : data_->elems) h = hash_mix(h, mat_key(m, data_->n));
  return h;
}

std::vector<Mat2> Group::minimal_generators() const {
  Int n = data_->n;
  if (order() == 1) return {mat_identity()};
  // Greedy: repeatedly adjoin the highest-order element not yet generated.
  std::vector<Mat2> by_order = data_->elems;
  std::stable_sort(by_order.begin(), by_order.end(),
                   [n](const Mat2& x, const Mat2& y) {
                     return mat_order(x, n) > mat_order(y, n);
                   });
  std::vector<Mat2> gens;
  Group h = Group::generated(n, {});
  for (const Mat2& x : by_order) {
    if (h.contains(x)) continue;
    gens.push_back(x);
    h = Group::generated(n, gens);
    if (h.order() == order()) break;
  }
  return gens;
}

bool Group::canonical_less(const Group& x, const Group& y) {
  if (x.modulus() != y.modulus()) return x.modulus() < y.modulus();
  if (x.order() != y.order()) return x.order() < y.order();
  Int n = x.modulus();
  for (std::size_t i = 0; i < x.elements().size(); ++i) {
    std::uint64_t kx = mat_key(x.elements()[i], n);
    std::uint64_t ky = mat_key(y.elements()[i], n);
    if (kx != ky) return kx < ky;
  }
  return false;
}

// --- free operations ------------------------------------------------------

namespace {

// Shared scan: find g in GL2(Z/n) mapping gens(G) into K (and, when
// require_equal, additionally |G| = |K| so image = K).
std::optional<Mat2> conjugator_scan(const Group& g, const Group& k,
                                    bool require_equal) {
  Int n = g.modulus();
  if (n != k.modulus())
    fail(ErrorCode::ModulusMismatch, "conjugacy test across different moduli");
  if (require_equal && g.order() != k.order()) return std::nullopt;
  if (!require_equal && g.order() > k.order()) return std::nullopt;
  if (require_equal && g.fingerprint() != k.fingerprint()) return std::nullopt;
  std::vector<Mat2> gens = g.generators();
  if (gens.empty()) gens = g.elements();
  for (const Mat2& cand : gl2_elements(n)) {
    Mat2 inv = mat_inverse(cand, n);
    bool ok = true;
    for (const Mat2& x : gens) {
      Mat2 y = mat_mul(mat_mul(cand, x, n), inv, n);
      if (!k.contains_key(mat_key(y, n))) {
        ok = false;
        break;
      }
    }
    if (ok) return cand;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Mat2> conjugacy_witness(const Group& g, const Group& k) {
  return conjugator_scan(g, k, /*require_equal=*/true);
}

std::optional<Mat2> conjugate_into_witness(const Group& g, const Group& k) {
  return conjugator_scan(g, k, /*require_equal=*/false);
}

std::vector<std::vector<Mat2>> element_conjugacy_classes(const Group& g) {
  Int n = g.modulus();
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::vector<Mat2>> classes;
  std::vector<Mat2> gens = g.generators();
  for (const Mat2& x : g.elements()) {
    if (seen.count(mat_key(x, n))) continue;
    // Orbit of x under conjugation by the generators.
    std::vector<Mat2> cls;
    std::deque<Mat2> work{x};
    seen.insert(mat_key(x, n));
    cls.push_back(x);
    while (!work.empty()) {
      Mat2 y = work.front();
      work.pop_front();
      for (const Mat2& s : gens) {
        Mat2 z = mat_conj(s, y, n);
        if (seen.insert(mat_key(z, n)).second) {
          cls.push_back(z);
          work.push_back(z);
        }
      }
    }
    classes.push_back(std::move(cls));
  }
  return classes;
}

Group normal_closure(const Group& g, const std::vector<Mat2>& subset) {
  Int n = g.modulus();
  // Closure of the conjugates of the subset under the group generators.
  std::vector<Mat2> seeds;
  std::unordered_set<std::uint64_t> seen;
  std::deque<Mat2> work;
  for (const Mat2& x : subset) {
    Mat2 r = mat_reduce(x, n);
    if (seen.insert(mat_key(r, n)).second) {
      seeds.push_back(r);
      work.push_back(r);
    }
  }
  while (!work.empty()) {
    Mat2 y = work.front();
    work.pop_front();
    for (const Mat2& s : g.generators()) {
      Mat2 z = mat_conj(s, y, n);
      if (seen.insert(mat_key(z, n)).second) {
        seeds.push_back(z);
        work.push_back(z);
      }
    }
  }
  return Group::generated(n, seeds);
}

std::vector<Group> normal_subgroups(const Group& g) {
  Int n = g.modulus();
  // Atoms: normal closures of single conjugacy classes. Every normal
  // subgroup is a join of the atoms it contains.
  std::vector<Group> atoms;
  {
    std::unordered_set<std::uint64_t> seen_sets;
    for (const auto& cls : element_conjugacy_classes(g)) {
      Group a = normal_closure(g, {cls.front()});
      if (seen_sets.insert(a.element_set_hash()).second) atoms.push_back(a);
    }
  }
  std::vector<Group> all;
  std::unordered_set<std::uint64_t> seen;
  std::deque<std::size_t> work;
  auto add = [&](Group h) {
    if (seen.insert(h.element_set_hash()).second) {
      all.push_back(std::move(h));
      work.push_back(all.size() - 1);
    }
  };
  add(Group::generated(n, {}));
  for (const Group& a : atoms) add(a);
  while (!work.empty()) {
    std::size_t idx = work.front();
    work.pop_front();
    for (const Group& a : atoms) {
      Group current = all[idx];
      if (a.is_subgroup_of(current)) continue;
      add(join(current, a));
    }
  }
  std::sort(all.begin(), all.end(), Group::canonical_less);
  return all;
}

QuotientTable quotient_table(const Group& n_grp, const Group& m_grp) {
  Int n = n_grp.modulus();
  if (n != m_grp.modulus())
    fail(ErrorCode::ModulusMismatch, "quotient across different moduli");
  if (!m_grp.is_subgroup_of(n_grp))
    fail(ErrorCode::InvalidArgument, "quotient by a non-subgroup");
  // Normality check: conjugates of M by generators of N stay in M.
  for (const Mat2& s : n_grp.generators())
    for (const Mat2& x : m_grp.elements())
      if (!m_grp.contains(mat_conj(s, x, n)))
        fail(ErrorCode::InvalidArgument, "quotient by a non-normal subgroup");

  std::unordered_map<std::uint64_t, int> coset_of;
  std::vector<Mat2> reps;
  for (const Mat2& x : n_grp.elements()) {
    std::uint64_t key = mat_key(x, n);
    if (coset_of.count(key)) continue;
    int id = int(reps.size());
    // Canonical rep: minimal key within the coset M*x.
    Mat2 rep = x;
    std::uint64_t best = key;
    for (const Mat2& m : m_grp.elements()) {
      Mat2 y = mat_mul(m, x, n);
      std::uint64_t yk = mat_key(y, n);
      coset_of[yk] = id;
      if (yk < best) {
        best = yk;
        rep = y;
      }
    }
    reps.push_back(rep);
  }
  // Ensure identity coset is index 0 (swap if needed).
  int id0 = coset_of.at(mat_key(mat_identity(), n));
  if (id0 != 0) {
    std::swap(reps[0], reps[id0]);
    for (auto& [k, v] : coset_of) {
      if (v == 0)
        v = id0;
      else if (v == id0)
        v = 0;
    }
  }
  QuotientTable qt;
  qt.modulus = n;
  qt.reps = reps;
  qt.table.assign(reps.size(), std::vector<int>(reps.size(), 0));
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = 0; j < reps.size(); ++j)
      qt.table[i][j] = coset_of.at(mat_key(mat_mul(reps[i], reps[j], n), n));
  qt.coset_of = std::move(coset_of);
  return qt;
}

int QuotientTable::coset_index(const Mat2& m) const {
  auto it = coset_of.find(mat_key(mat_reduce(m, modulus), modulus));
  if (it == coset_of.end())
    fail(ErrorCode::InvalidArgument, "element lies outside the quotient's group");
  return it->second;
}

Group join(const Group& x, const Group& y) {
  if (x.modulus() != y.modulus())
    fail(ErrorCode::ModulusMismatch, "join across different moduli");
  std::vector<Mat2> gens = x.generators();
  for (const Mat2& g : y.generators()) gens.push_back(g);
  return Group::generated(x.modulus(), std::move(gens));
}

}  // namespace atlas
