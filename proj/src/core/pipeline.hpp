#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/congruence.hpp"
#include "core/entangle.hpp"

namespace atlas {

// Analytic input that cannot be derived from the group alone: whether the
// genus-1 modular curve attached to a group has positive rank over Q.
// Matched against pipeline survivors by conjugacy.
struct RankFact {
  Int modulus = 0;
  std::vector<Mat2> gens;
  bool positive_rank = false;
  std::string citation;
};

// A surviving conjugacy-class representative with its classification data.
struct PipelineGroup {
  Group group;
  EntanglementReport report;
  Int genus = 0;
  bool positive_rank = false;  // meaningful only when genus == 1
};

// One ((a,b), type) class of survivors at a fixed genus, with the subset
// that is maximal under containment up to conjugation.
struct PipelineBucket {
  Int a = 0;
  Int b = 0;
  std::string type_label;  // "Z/2" or "(S3,Z/3)" style
  Int genus = 0;
  std::vector<int> members;  // indices into PipelineReport::groups
  std::vector<int> maximal;  // subset of members
};

struct PipelineReport {
  Int level = 0;
  Int genus_bound = 0;
  // Counts over composed candidates (with multiplicity, before conjugacy
  // dedup); non-increasing along the filter chain.
  Int candidate_count = 0;
  Int admissible_count = 0;
  Int genus_ok_count = 0;
  Int representing_count = 0;
  Int unexplained_count = 0;
  Int rank_excluded_count = 0;  // genus-1 classes dropped by a stored rank 0
  std::vector<PipelineGroup> groups;
  std::vector<PipelineBucket> buckets;
  double elapsed_seconds = 0.0;
};

// Levels for which a congruence subgroup of genus <= 1 exists, minus the two
// the fixed-point argument removes.
const std::vector<Int>& supported_levels();

// The type label used to key buckets: the quotient type alone when it agrees
// with the SL2 type, otherwise the pair.
std::string bucket_type_label(const EntanglementReport& r);

// Full classification at one level n = p*q: enumerate candidates by Goursat
// composition of the mod-p and mod-q subgroup lattices, filter by
// admissibility, genus <= genus_bound and unexplained classification, dedupe
// by conjugacy, apply stored rank facts to genus-1 classes, and bucket the
// result with maximal sets.  `jobs` bounds worker threads; a non-empty
// `checkpoint_path` makes completed component pairs resumable across runs.
// Throws UnsupportedLevel off the supported list and MissingRankFact when a
// genus-1 survivor matches no stored fact.
PipelineReport run_pipeline(Int level, Int genus_bound,
                            const std::vector<RankFact>& rank_facts,
                            int jobs = 1, const std::string& checkpoint_path = "");

}  // namespace atlas
