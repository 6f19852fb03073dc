#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "core/matrix.hpp"

namespace atlas {

// Finite subgroup of GL2(Z/n).  Immutable once built; copies share the
// element storage.  Elements are kept canonically sorted by packed key so
// that equality, hashing and serialized output are deterministic.
class Group {
 public:
  Group() = default;

  // Closure of the given generators.  Throws NonInvertibleGenerator when a
  // generator has non-unit determinant, InvalidArgument for modulus < 1.
  static Group generated(Int modulus, std::vector<Mat2> gens);

  // Wraps an element set that is already known to be a subgroup (sorted or
  // not).  When `trusted` is false the closure property is verified.
  static Group from_elements(Int modulus, std::vector<Mat2> elems,
                             std::vector<Mat2> gens = {}, bool trusted = true);

  Int modulus() const { return data_->n; }
  Int order() const { return Int(data_->elems.size()); }
  const std::vector<Mat2>& elements() const { return data_->elems; }
  const std::vector<Mat2>& generators() const { return data_->gens; }

  bool contains(const Mat2& m) const;
  bool contains_key(std::uint64_t key) const;
  bool contains_minus_identity() const;
  bool same_group(const Group& other) const;
  bool is_subgroup_of(const Group& other) const;

  // pi_m: entrywise reduction.  Throws NotADivisor unless m | n, m >= 1.
  Group reduce_mod(Int m) const;

  // ker(pi_m) within this group.  Same divisibility requirement.
  Group kernel_of_reduction(Int m) const;

  Group intersect_sl2() const;
  Group intersect(const Group& other) const;
  Group adjoin(const Mat2& extra) const;
  Group conjugate_by(const Mat2& g) const;

  std::vector<Int> det_image() const;  // sorted list of attained units
  bool det_surjective() const;
  Group det_kernel() const;  // elements of determinant 1 ... = intersect_sl2

  // Multiset {element order -> count}; conjugation invariant.
  const std::map<Int, Int>& order_census() const;

  // Conjugation-invariant fingerprint: hash of the multiset of
  // (order, det, trace) triples together with order and modulus.
  std::uint64_t fingerprint() const;

  // Hash of the sorted element keys: equal iff same subgroup.
  std::uint64_t element_set_hash() const;

  // Small generating set recovered greedily (for display/serialization).
  std::vector<Mat2> minimal_generators() const;

  // Deterministic total order on subgroups of the same modulus.
  static bool canonical_less(const Group& x, const Group& y);

 private:
  struct Data {
    Int n = 1;
    std::vector<Mat2> gens;
    std::vector<Mat2> elems;  // sorted by mat_key
    std::unordered_set<std::uint64_t> keys;
    // lazily filled caches
    mutable std::once_flag census_once;
    mutable std::map<Int, Int> census;
    mutable std::once_flag fp_once;
    mutable std::uint64_t fp = 0;
  };
  std::shared_ptr<const Data> data_ = empty_data();

  static std::shared_ptr<const Data> empty_data();
  static Group wrap(std::shared_ptr<Data> d);
};

// --- free operations ------------------------------------------------------

// Conjugacy witness: g with g G g^-1 = K, if one exists.  Throws
// ModulusMismatch when the moduli differ.  Uses fingerprint pruning, then a
// generator-image scan over GL2(Z/n).
std::optional<Mat2> conjugacy_witness(const Group& g, const Group& k);

// Witness for "some conjugate of G lies inside K" (subgroup up to conjugacy).
std::optional<Mat2> conjugate_into_witness(const Group& g, const Group& k);

// Conjugacy classes of elements of G (as vectors of matrices).
std::vector<std::vector<Mat2>> element_conjugacy_classes(const Group& g);

// Normal closure of a subset within G.
Group normal_closure(const Group& g, const std::vector<Mat2>& subset);

// All normal subgroups of G (atom-join enumeration over class closures).
std::vector<Group> normal_subgroups(const Group& g);

// Multiplication table of N/M (M normal in N): returns coset reps and the
// table over rep indices.  Throws InvalidArgument if M is not normal in N.
struct QuotientTable {
  Int modulus = 1;
  std::vector<Mat2> reps;  // reps[0] is the identity coset
  std::vector<std::vector<int>> table;
  std::unordered_map<std::uint64_t, int> coset_of;  // element key -> coset id

  int coset_index(const Mat2& m) const;  // InvalidArgument if m not in N
  std::size_t size() const { return reps.size(); }
};
QuotientTable quotient_table(const Group& n, const Group& m);

// The subgroup generated by the union of two subgroups of the same modulus.
Group join(const Group& x, const Group& y);

}  // namespace atlas
