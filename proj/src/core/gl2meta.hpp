#pragma once

#include <string>
#include <vector>

#include "core/group.hpp"

namespace atlas {

// Cached per-modulus ambient data.  All lists are built once (thread-safe)
// and shared afterwards.
const std::vector<Mat2>& gl2_elements(Int n);
const std::vector<Mat2>& sl2_elements(Int n);
Int gl2_order(Int n);
Int sl2_order(Int n);

// Memoized element order (per-modulus table, thread-safe).
Int mat_order_cached(const Mat2& m, Int n);

Group gl2_group(Int n);
Group sl2_group(Int n);

// epsilon convention for the non-split Cartan mod an odd prime l:
// -1 when l = 3 (mod 4), otherwise the smallest non-residue >= 2.
Int cartan_epsilon(Int l);

// Named subgroups of GL2(Z/l), l prime.  For l = 2 the non-split Cartan is
// the order-3 cyclic subgroup <[[0,1],[1,1]]> (multiplication by a generator
// of F4^x) and its normalizer is all of GL2(Z/2).
Group borel_group(Int l);
Group split_cartan_group(Int l);
Group nonsplit_cartan_group(Int l);
Group split_cartan_normalizer_group(Int l);
Group nonsplit_cartan_normalizer_group(Int l);

// Coarse label of a subgroup of GL2(Z/l) up to conjugacy:
// "GL2", "B", "Cs", "Cn", "Ns", "Nn" when conjugate to the named group
// exactly, otherwise "" (caller decides how to report).
std::string coarse_label(const Group& g);

}  // namespace atlas
