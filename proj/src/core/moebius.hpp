#pragma once

#include <optional>
#include <vector>

#include "core/cyclotomic.hpp"
#include "core/ratfunc.hpp"
#include "core/siegel.hpp"

namespace atlas {

// All roots of m lying in Q(zeta_level).  Candidate roots are reconstructed
// from a large prime split in the cyclotomic field (one residue per Galois
// conjugate, solved against the power-basis Vandermonde system); every
// candidate is re-checked exactly over the field before it is reported, so
// the output never contains a spurious root.  Results are sorted by their
// printed form.  InvalidArgument on the zero polynomial or level < 1.
std::vector<CyclotomicNumber> cyclotomic_roots(const Poly<Rat>& m, Int level);

// A Moebius map mu over Q(zeta_level) with f = g(mu(t)) when one exists.
// Anchors are taken from the fibers of f and g over oo, 0, 1728, 1: a visible
// (field-rational) fiber point of f can only map to a visible fiber point of
// g with the same base value and multiplicity, so three anchor points pin mu
// down to finitely many candidates, each verified exactly.  nullopt when no
// candidate survives or fewer than three anchors are visible over the field.
// DegreeMismatch when the map degrees differ.
std::optional<MoebiusMap> moebius_equivalent(const RationalFunction& f,
                                             const RationalFunction& g,
                                             Int level);

}  // namespace atlas
