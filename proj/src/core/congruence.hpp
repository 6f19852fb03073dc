#pragma once

#include <unordered_map>

#include "core/group.hpp"

namespace atlas {

// Lift of g in SL2(Z/n) to an integer matrix of determinant exactly 1.
// Entries are small but unreduced; throws InvalidArgument when det(g) != 1.
Mat2 sl2_lift(const Mat2& g, Int n);

struct CuspInfo {
  Int num = 1, den = 0;  // representative point num/den of P^1(Q); den 0 = oo
  Int width = 1;
  Mat2 lift;  // A in SL2(Z) with A(oo) = num/den, reduction lies in the coset
};

// Invariants of the modular curve X_H attached to H <= GL2(Z/n), computed
// from the right-coset action of SL2(Z/n) on +-(H cap SL2) \ SL2(Z/n).
struct ModularInvariants {
  Int modulus = 1;
  Int sl2_level = 1;
  Int index = 1;  // [SL2(Z/n) : +-(H cap SL2)] = [PSL2(Z) : image of Gamma_H]
  Int e2 = 0, e3 = 0;
  Int genus = 0;
  std::vector<CuspInfo> cusps;  // deterministic order (see cusp_index_of_point)

  // internals kept for cusp lookups and divisor computations
  std::unordered_map<std::uint64_t, int> coset_of;  // element key -> coset id
  std::vector<int> cusp_of_coset;
};

ModularInvariants modular_invariants(const Group& h);

// Least divisor m of n with ker(SL2(Z/n) -> SL2(Z/m)) contained in
// +-(H cap SL2).
Int sl2_level(const Group& h);

// Index of the cusp containing the point num/den (den = 0 for oo).
int cusp_index_of_point(const ModularInvariants& mi, Int num, Int den);

}  // namespace atlas
