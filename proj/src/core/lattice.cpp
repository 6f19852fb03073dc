#include "core/lattice.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "core/gl2meta.hpp"

namespace atlas {

namespace {

bool is_prime_ll(Int v) {
  if (v < 2) return false;
  for (Int d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

// Multiplicative closure with an element-count cap; nullopt once exceeded.
std::optional<std::vector<Mat2>> closure_capped(Int n,
                                                const std::vector<Mat2>& seeds,
                                                std::size_t cap) {
  std::vector<Mat2> elems;
  std::unordered_set<std::uint64_t> keys;
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
    if (elems.size() > cap) return std::nullopt;
    Mat2 x = work.front();
    work.pop_front();
    for (const Mat2& s : seeds) push(mat_mul(x, mat_reduce(s, n), n));
  }
  if (elems.size() > cap) return std::nullopt;
  return elems;
}

// Deduplicating accumulator for conjugacy classes of subgroups.
class ClassSet {
 public:
  // Returns true when the group was new (a fresh class representative).
  bool add(const Group& s) {
    std::uint64_t literal = s.element_set_hash();
    auto [it, fresh] = literal_seen_.emplace(literal, -1);
    if (!fresh) {
      // Either the exact same set (common: regenerated subgroup) or a hash
      // collision; compare before skipping.
      int idx = it->second;
      if (idx >= 0 && classes_[std::size_t(idx)].same_group(s)) return false;
      if (idx < 0) return false;  // same set as a non-representative duplicate
    }
    for (int idx : by_fingerprint_[s.fingerprint()]) {
      if (classes_[std::size_t(idx)].order() != s.order()) continue;
      if (conjugacy_witness(classes_[std::size_t(idx)], s)) {
        literal_seen_[literal] = -1;
        return false;
      }
    }
    int idx = int(classes_.size());
    classes_.push_back(s);
    by_fingerprint_[s.fingerprint()].push_back(idx);
    literal_seen_[literal] = idx;
    return true;
  }

  std::vector<Group> take() && { return std::move(classes_); }
  const std::vector<Group>& classes() const { return classes_; }

 private:
  std::vector<Group> classes_;
  std::unordered_map<std::uint64_t, std::vector<int>> by_fingerprint_;
  // element_set_hash -> class index, or -1 for known duplicates
  std::unordered_map<std::uint64_t, int> literal_seen_;
};

// Perfect subgroups of GL2(Z/p) up to conjugacy: the trivial group, SL2 and
// (for p = 11, where p = +-1 mod 5) the icosahedral groups of order 120.
// Any perfect subgroup has trivial determinant image, so it lies in SL2, and
// for prime p the classification of subgroups of SL2(F_p) leaves exactly
// these possibilities.
std::vector<Group> perfect_seeds(Int p) {
  std::vector<Group> seeds;
  seeds.push_back(Group::generated(p, {}));
  // S and T generate SL2(Z/p).
  seeds.push_back(Group::generated(p, {{0, p - 1, 1, 0}, {1, 1, 0, 1}}));
  if (p % 5 == 1 || p % 5 == 4) {
    // Order-120 subgroups of SL2(F_p): only the icosahedral type, which
    // contains elements of orders 10 and 4.  Bounded pair search.
    std::vector<Mat2> ord10, ord4;
    for (const Mat2& m : sl2_elements(p)) {
      Int o = mat_order_cached(m, p);
      if (o == 10) ord10.push_back(m);
      if (o == 4) ord4.push_back(m);
    }
    ClassSet found;
    for (const Mat2& x : ord10) {
      for (const Mat2& y : ord4) {
        auto cl = closure_capped(p, {x, y}, 120);
        if (!cl || cl->size() != 120) continue;
        found.add(Group::from_elements(p, *cl, {x, y}));
      }
    }
    for (const Group& g : found.classes()) seeds.push_back(g);
  }
  return seeds;
}

std::vector<Group> build_lattice(Int p) {
  std::vector<Group> order_sorted;
  ClassSet classes;
  std::deque<std::size_t> work;
  auto add = [&](const Group& s) {
    if (classes.add(s)) work.push_back(classes.classes().size() - 1);
  };
  for (const Group& s : perfect_seeds(p)) add(s);

  // Cyclic extension: every subgroup S has a normal series down to its
  // perfect core with steps of prime index, and each step arises as
  // <K, g> = K u Kg u ... u Kg^(r-1) for g in the ambient normalizer of K
  // with g^r in K, r prime.
  while (!work.empty()) {
    Group k = classes.classes()[work.front()];
    work.pop_front();
    Group norm = gl2_normalizer(k);
    for (const Mat2& g : norm.elements()) {
      if (k.contains(g)) continue;
      Mat2 h = g;
      Int r = 1;
      while (!k.contains(h)) {
        h = mat_mul(h, g, p);
        ++r;
        if (r > norm.order()) fail(ErrorCode::Internal, "runaway coset order");
      }
      if (!is_prime_ll(r)) continue;
      std::vector<Mat2> elems;
      elems.reserve(std::size_t(k.order() * r));
      Mat2 power = mat_identity();
      for (Int i = 0; i < r; ++i) {
        for (const Mat2& x : k.elements()) elems.push_back(mat_mul(x, power, p));
        power = mat_mul(power, g, p);
      }
      std::vector<Mat2> gens = k.generators();
      if (k.order() == 1) gens.clear();
      gens.push_back(g);
      add(Group::from_elements(p, std::move(elems), std::move(gens)));
    }
  }
  std::vector<Group> out = std::move(classes).take();
  std::sort(out.begin(), out.end(), Group::canonical_less);
  return out;
}

std::mutex lattice_mutex;
std::map<Int, std::vector<Group>> lattice_cache;

}  // namespace

Group gl2_normalizer(const Group& h) {
  Int n = h.modulus();
  const std::vector<Mat2>& probe =
      h.generators().empty() ? h.elements() : h.generators();
  std::vector<Mat2> elems;
  for (const Mat2& g : gl2_elements(n)) {
    bool ok = true;
    Mat2 inv = mat_inverse(g, n);
    for (const Mat2& x : probe) {
      if (!h.contains(mat_mul(mat_mul(g, x, n), inv, n))) {
        ok = false;
        break;
      }
    }
    if (ok) elems.push_back(g);
  }
  return Group::from_elements(n, std::move(elems));
}

std::vector<Group> subgroup_lattice(Int p) {
  if (!is_prime_ll(p) || p > 13)
    fail(ErrorCode::UnsupportedModulus,
         "subgroup lattice supported for primes p <= 13, got " +
             std::to_string(p));
  std::scoped_lock lock(lattice_mutex);
  auto it = lattice_cache.find(p);
  if (it == lattice_cache.end()) it = lattice_cache.emplace(p, build_lattice(p)).first;
  return it->second;
}

std::vector<Group> brute_force_subgroups(Int n) {
  if (gl2_order(n) > 1200)
    fail(ErrorCode::UnsupportedModulus,
         "brute-force subgroup enumeration is limited to tiny moduli");
  const std::vector<Mat2>& ambient = gl2_elements(n);
  std::vector<Group> all;
  std::unordered_map<std::uint64_t, std::vector<int>> seen;
  std::deque<std::size_t> work;
  auto add = [&](Group s) {
    std::uint64_t h = s.element_set_hash();
    for (int idx : seen[h])
      if (all[std::size_t(idx)].same_group(s)) return;
    seen[h].push_back(int(all.size()));
    all.push_back(std::move(s));
    work.push_back(all.size() - 1);
  };
  add(Group::generated(n, {}));
  while (!work.empty()) {
    std::size_t idx = work.front();
    work.pop_front();
    Group current = all[idx];
    for (const Mat2& g : ambient) {
      if (current.contains(g)) continue;
      std::vector<Mat2> gens = current.generators();
      if (current.order() == 1) gens.clear();
      gens.push_back(g);
      add(Group::generated(n, std::move(gens)));
    }
  }
  std::sort(all.begin(), all.end(), Group::canonical_less);
  return all;
}

std::vector<Group> conjugacy_class_representatives(std::vector<Group> groups) {
  std::sort(groups.begin(), groups.end(), Group::canonical_less);
  ClassSet classes;
  for (const Group& g : groups) classes.add(g);
  std::vector<Group> out = std::move(classes).take();
  std::sort(out.begin(), out.end(), Group::canonical_less);
  return out;
}

}  // namespace atlas
