#pragma once

#include "core/group.hpp"

namespace atlas {

// One representative per conjugacy class of subgroups of GL2(Z/p),
// p prime <= 13.  Built bottom-up by the cyclic-extension method seeded
// with the trivial group, SL2(Z/p) and (for p = 11) the icosahedral
// subgroups, so that perfect subgroups are not missed.  Deterministic
// canonical order.  Throws UnsupportedModulus for other p.
std::vector<Group> subgroup_lattice(Int p);

// Brute-force oracle: every subgroup of GL2(Z/n) (as element sets) found by
// closing subsets one adjoined element at a time.  Only sensible for tiny
// moduli (|GL2| a few hundred); intended for validation.
std::vector<Group> brute_force_subgroups(Int n);

// Collapse a list of groups into conjugacy classes (canonical order, one
// representative each).
std::vector<Group> conjugacy_class_representatives(std::vector<Group> groups);

// Normalizer of H in GL2(Z/n) (element scan).
Group gl2_normalizer(const Group& h);

}  // namespace atlas
