#pragma once

#include "core/group.hpp"

namespace atlas {

// Goursat datum for a subgroup of GL2(Z/(p*q)), gcd(p,q) = 1: component
// groups, normal subgroups of each, and an isomorphism between the two
// quotients encoded as a bijection of coset ids (indices into the
// respective quotient tables, identity coset = 0 on both sides).
struct GoursatTriple {
  Group left;          // subgroup of GL2(Z/p)
  Group left_kernel;   // normal in left
  Group right;         // subgroup of GL2(Z/q)
  Group right_kernel;  // normal in right
  std::vector<int> gluing;  // left coset id -> right coset id
};

// Fibered product { crt(x, y) : phi(x M_p) = (y M_q) } as a subgroup of
// GL2(Z/(p*q)).  Throws InvalidArgument for malformed data (non-coprime
// moduli, kernels that are not normal subgroups) and BadGluing when the
// coset bijection is not an isomorphism of the quotients.
Group goursat_product(const GoursatTriple& t);

// All isomorphisms a -> b between finite groups presented by multiplication
// tables, each returned as an index bijection.  Empty when non-isomorphic.
std::vector<std::vector<int>> table_isomorphisms(const QuotientTable& a,
                                                 const QuotientTable& b);

// Every Goursat triple with the given component groups: one entry per
// (normal subgroup pair, quotient isomorphism).  When max_quotient > 0,
// pairs with a larger common quotient are skipped.
std::vector<GoursatTriple> goursat_triples(const Group& left,
                                           const Group& right,
                                           Int max_quotient = 0);

}  // namespace atlas
