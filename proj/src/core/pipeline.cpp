#include "core/pipeline.hpp"

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

#include "core/gl2meta.hpp"
#include "core/goursat.hpp"
#include "core/lattice.hpp"

namespace atlas {

namespace {

using nlohmann::json;

struct Survivor {
  Group group;
  EntanglementReport report;
  Int genus = 0;
};

struct PairResult {
  Int cand = 0, adm = 0, genus_ok = 0, rep = 0, unexp = 0;
  std::vector<Survivor> survivors;  // conjugacy-deduped within the pair
};

// Survivors from distinct (left-class, right-class) pairs are never
// conjugate (conjugation acts componentwise on the projections), so a
// within-pair dedupe is globally complete.
PairResult process_pair(const Group& left, const Group& right, Int level,
                        Int genus_bound) {
  PairResult out;
  Int a = std::min(left.modulus(), right.modulus());
  Int b = std::max(left.modulus(), right.modulus());
  for (const GoursatTriple& t : goursat_triples(left, right)) {
    Group g = goursat_product(t);
    ++out.cand;
    if (!admissible_check(g).admissible) continue;
    ++out.adm;
    ModularInvariants mi = modular_invariants(g);
    if (mi.genus > genus_bound) continue;
    ++out.genus_ok;
    EntanglementReport r = entanglement_report(g, a, b);
    if (!r.represents) continue;
    ++out.rep;
    if (!r.unexplained) continue;
    ++out.unexp;
    bool dup = false;
    for (const Survivor& s : out.survivors)
      if (s.group.order() == g.order() &&
          s.group.fingerprint() == g.fingerprint() &&
          conjugacy_witness(s.group, g).has_value()) {
        dup = true;
        break;
      }
    if (!dup) out.survivors.push_back({std::move(g), std::move(r), mi.genus});
  }
  return out;
}

json pair_to_json(std::size_t index, const PairResult& r) {
  json surv = json::array();
  for (const Survivor& s : r.survivors) {
    json gens = json::array();
    for (const Mat2& m : s.group.minimal_generators())
      gens.push_back({m.a, m.b, m.c, m.d});
    surv.push_back({{"gens", gens}});
  }
  return json{{"pair", index},    {"cand", r.cand}, {"adm", r.adm},
              {"genus_ok", r.genus_ok}, {"rep", r.rep},  {"unexp", r.unexp},
              {"survivors", surv}};
}

PairResult pair_from_json(const json& j, Int level, Int a, Int b,
                          Int genus_bound) {
  PairResult r;
  r.cand = j.at("cand").get<Int>();
  r.adm = j.at("adm").get<Int>();
  r.genus_ok = j.at("genus_ok").get<Int>();
  r.rep = j.at("rep").get<Int>();
  r.unexp = j.at("unexp").get<Int>();
  for (const json& s : j.at("survivors")) {
    std::vector<Mat2> gens;
    for (const json& g : s.at("gens"))
      gens.push_back(Mat2{g.at(0).get<Int>(), g.at(1).get<Int>(),
                          g.at(2).get<Int>(), g.at(3).get<Int>()});
    Group grp = Group::generated(level, gens);
    ModularInvariants mi = modular_invariants(grp);
    if (mi.genus > genus_bound)
      fail(ErrorCode::DataError, "checkpoint survivor exceeds genus bound");
    EntanglementReport rep = entanglement_report(grp, a, b);
    r.survivors.push_back({std::move(grp), std::move(rep), mi.genus});
  }
  return r;
}

}  // namespace

const std::vector<Int>& supported_levels() {
  static const std::vector<Int> levels = {6, 10, 14, 15, 21, 22, 26, 33, 39};
  return levels;
}

std::string bucket_type_label(const EntanglementReport& r) {
  if (r.type == r.sl2_type) return r.type.str();
  return "(" + r.type.str() + "," + r.sl2_type.str() + ")";
}

PipelineReport run_pipeline(Int level, Int genus_bound,
                            const std::vector<RankFact>& rank_facts, int jobs,
                            const std::string& checkpoint_path) {
  auto t0 = std::chrono::steady_clock::now();
  const std::vector<Int>& levels = supported_levels();
  if (std::find(levels.begin(), levels.end(), level) == levels.end())
    fail(ErrorCode::UnsupportedLevel,
         "level " + std::to_string(level) + " is not a supported level");
  Int p = 0, q = 0;
  for (Int d = 2; d * d <= level; ++d)
    if (level % d == 0) {
      p = d;
      q = level / d;
      break;
    }

  std::vector<Group> left_classes, right_classes;
  for (const Group& g : subgroup_lattice(p))
    if (g.det_surjective()) left_classes.push_back(g);
  for (const Group& g : subgroup_lattice(q))
    if (g.det_surjective()) right_classes.push_back(g);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < left_classes.size(); ++i)
    for (std::size_t j = 0; j < right_classes.size(); ++j)
      pairs.emplace_back(i, j);

  std::vector<std::optional<PairResult>> results(pairs.size());

  // Resume any finished pairs from the checkpoint file.
  if (!checkpoint_path.empty()) {
    std::ifstream in(checkpoint_path);
    std::string line;
    while (in && std::getline(in, line)) {
      if (line.empty()) continue;
      json j = json::parse(line, nullptr, false);
      if (j.is_discarded())
        fail(ErrorCode::DataError, "malformed checkpoint line");
      std::size_t idx = j.at("pair").get<std::size_t>();
      if (idx < results.size())
        results[idx] = pair_from_json(j, level, p, q, genus_bound);
    }
  }

  std::mutex ckpt_mutex;
  std::ofstream ckpt;
  if (!checkpoint_path.empty())
    ckpt.open(checkpoint_path, std::ios::app);

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t k = next.fetch_add(1);
      if (k >= pairs.size()) return;
      if (results[k].has_value()) continue;
      PairResult r = process_pair(left_classes[pairs[k].first],
                                  right_classes[pairs[k].second], level,
                                  genus_bound);
      if (ckpt.is_open()) {
        std::lock_guard<std::mutex> lock(ckpt_mutex);
        ckpt << pair_to_json(k, r) << "\n";
        ckpt.flush();
      }
      results[k] = std::move(r);
    }
  };
  int nthreads = std::max(1, jobs);
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int i = 0; i < nthreads; ++i) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }

  PipelineReport report;
  report.level = level;
  report.genus_bound = genus_bound;

  std::vector<Survivor> survivors;
  for (std::optional<PairResult>& r : results) {
    report.candidate_count += r->cand;
    report.admissible_count += r->adm;
    report.genus_ok_count += r->genus_ok;
    report.representing_count += r->rep;
    report.unexplained_count += r->unexp;
    for (Survivor& s : r->survivors) survivors.push_back(std::move(s));
  }

  // Stored rank facts decide which genus-1 classes stay.
  std::vector<Group> fact_groups;
  for (const RankFact& f : rank_facts)
    fact_groups.push_back(f.modulus == level ? Group::generated(level, f.gens)
                                             : Group::generated(f.modulus, f.gens));
  for (Survivor& s : survivors) {
    bool positive = false;
    if (s.genus == 1) {
      bool found = false;
      for (std::size_t i = 0; i < rank_facts.size(); ++i) {
        if (rank_facts[i].modulus != level) continue;
        if (fact_groups[i].order() != s.group.order()) continue;
        if (!conjugacy_witness(fact_groups[i], s.group).has_value()) continue;
        found = true;
        positive = rank_facts[i].positive_rank;
        break;
      }
      if (!found)
        fail(ErrorCode::MissingRankFact,
             "no stored rank fact for a genus-1 class at level " +
                 std::to_string(level));
      if (!positive) {
        ++report.rank_excluded_count;
        continue;
      }
    }
    report.groups.push_back(
        {std::move(s.group), std::move(s.report), s.genus, positive});
  }

  // Bucket by ((a,b), type pair, genus); structural comparison of the type
  // classes, display label stored alongside.
  for (int i = 0; i < int(report.groups.size()); ++i) {
    const PipelineGroup& g = report.groups[std::size_t(i)];
    bool placed = false;
    for (PipelineBucket& bk : report.buckets) {
      if (bk.a != g.report.a || bk.b != g.report.b || bk.genus != g.genus)
        continue;
      const PipelineGroup& ex = report.groups[std::size_t(bk.members[0])];
      if (ex.report.type == g.report.type &&
          ex.report.sl2_type == g.report.sl2_type) {
        bk.members.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) {
      PipelineBucket bk;
      bk.a = g.report.a;
      bk.b = g.report.b;
      bk.genus = g.genus;
      bk.type_label = bucket_type_label(g.report);
      bk.members.push_back(i);
      report.buckets.push_back(std::move(bk));
    }
  }
  std::sort(report.buckets.begin(), report.buckets.end(),
            [](const PipelineBucket& x, const PipelineBucket& y) {
              return std::tie(x.a, x.b, x.genus, x.type_label) <
                     std::tie(y.a, y.b, y.genus, y.type_label);
            });
  for (PipelineBucket& bk : report.buckets) {
    std::vector<Group> members;
    for (int i : bk.members) members.push_back(report.groups[std::size_t(i)].group);
    for (std::size_t k : select_maximal_indices(members))
      bk.maximal.push_back(bk.members[k]);
  }

  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return report;
}

}  // namespace atlas
