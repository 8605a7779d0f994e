#include "matchable/sweep.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>

#include "matchable/dyson.hpp"
#include "matchable/json_io.hpp"

namespace matchable {

namespace {

using nlohmann::json;

std::vector<GroupSpecPtr> group_pool() {
  std::vector<GroupSpecPtr> pool;
  for (int64_t n = 2; n <= 12; ++n) pool.push_back(make_group(0, {n}));
  pool.push_back(make_group(0, {2, 2}));
  pool.push_back(make_group(0, {2, 4}));
  pool.push_back(make_group(0, {3, 3}));
  pool.push_back(make_group(0, {2, 6}));
  pool.push_back(make_group(0, {2, 2, 2}));
  return pool;
}

std::vector<GroupElement> sample_elements(SplitMix64& rng, const GroupSpecPtr& spec,
                                          int count, bool avoid_identity) {
  int64_t order = *spec->order();
  int64_t identity_idx = index_of(identity(spec));
  std::set<int64_t> picked;
  while (static_cast<int>(picked.size()) < count) {
    int64_t idx = static_cast<int64_t>(rng.below(static_cast<uint64_t>(order)));
    if (avoid_identity && idx == identity_idx) continue;
    picked.insert(idx);
  }
  std::vector<GroupElement> out;
  for (int64_t idx : picked) out.push_back(element_at(spec, idx));
  return out;
}

}  // namespace

MatchInstance random_group_instance(SplitMix64& rng, const GroupSpecPtr& spec,
                                    int max_set_size) {
  int64_t order = *spec->order();
  int64_t cap = std::min<int64_t>(max_set_size, order - 1);
  int k = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(cap)));
  return MatchInstance(spec, sample_elements(rng, spec, k, false),
                       sample_elements(rng, spec, k, true));
}

json run_group_sweep(const GroupSweepConfig& config) {
  SplitMix64 rng(config.seed);
  auto pool = group_pool();

  int matched = 0, unmatched = 0;
  json disagreements = json::array();
  json certificate_failures = json::array();
  json implication_failures = json::array();

  auto implication_fail = [&](const char* kind, const MatchInstance& inst) {
    implication_failures.push_back(json{{"kind", kind}, {"instance", instance_to_json(inst)}});
  };

  for (int trial = 0; trial < config.instances; ++trial) {
    GroupSpecPtr spec = pool[rng.below(pool.size())];
    MatchInstance inst = random_group_instance(rng, spec, config.max_set_size);

    MatchingResult direct = find_matching(inst);
    CharacterizationResult exhaustive =
        characterization_check(inst, CharacterizationStrategy::kExhaustive);
    CharacterizationResult reduced =
        characterization_check(inst, CharacterizationStrategy::kReduced);
    (direct.exists ? matched : unmatched) += 1;

    if (direct.exists != exhaustive.holds || exhaustive.holds != reduced.holds) {
      disagreements.push_back(json{{"instance", instance_to_json(inst)},
                                   {"search", direct.exists},
                                   {"exhaustive", exhaustive.holds},
                                   {"reduced", reduced.holds}});
      continue;
    }

    if (!direct.exists) {
      ViolationCertificate cert = certificate_for_unmatched(inst);
      ViolationCertificate round_trip =
          certificate_from_json(spec, certificate_to_json(cert));
      if (!verify_certificate(inst, cert) || !verify_certificate(inst, round_trip)) {
        certificate_failures.push_back(instance_to_json(inst));
      }
    }

    // Sufficient conditions must only fire on matchable instances.
    int64_t progression = max_progression_length(inst.A);
    if (check_progression_order_condition(inst, progression) && !direct.exists) {
      implication_fail("progression_order", inst);
    }
    if (check_chowla_condition(inst) && !direct.exists) implication_fail("chowla", inst);
    if (check_coset_intersection_condition(inst) && !direct.exists) {
      implication_fail("coset_intersection", inst);
    }
    if (is_sidon(inst.A)) {
      BigInt count = count_matchings(inst);
      if (count < sidon_count_bound(inst)) implication_fail("sidon_count", inst);
    }
    if (direct.exists && count_matchings(inst) < marshall_hall_lower_bound(inst)) {
      implication_fail("marshall_hall", inst);
    }

    // A set is matchable to itself exactly when it avoids the identity.
    MatchInstance self_inst(spec, inst.A, inst.A);
    if (find_matching(self_inst).exists != check_self_matching(inst.A)) {
      implication_fail("self_matching", self_inst);
    }
  }

  bool ok = disagreements.empty() && certificate_failures.empty() &&
            implication_failures.empty();
  return json{{"seed", config.seed},
              {"instances", config.instances},
              {"matched", matched},
              {"unmatched", unmatched},
              {"disagreements", disagreements},
              {"certificate_failures", certificate_failures},
              {"implication_failures", implication_failures},
              {"ok", ok}};
}

namespace {

Subspace random_subspace(SplitMix64& rng, const TowerPtr& tower, int dim,
                         bool avoid_one) {
  int64_t q = tower->K.size();
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<std::vector<int64_t>> rows;
    int guard = 0;
    while (static_cast<int>(rows.size()) < dim && ++guard < 200) {
      std::vector<int64_t> row(tower->n);
      for (auto& c : row) c = static_cast<int64_t>(rng.below(static_cast<uint64_t>(q)));
      rows.push_back(std::move(row));
      if (linalg::rank(tower->K, rows) < static_cast<int>(rows.size())) rows.pop_back();
    }
    if (static_cast<int>(rows.size()) != dim) continue;
    Subspace space = Subspace::span_rows(tower, rows);
    if (avoid_one && space.contains_one()) continue;
    return space;
  }
  throw SizeBoundError("failed to sample a subspace");
}

}  // namespace

LinearInstance random_linear_instance(SplitMix64& rng, const TowerPtr& tower, int max_dim) {
  int cap = std::min(max_dim, tower->n - 1);
  int d = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(cap)));
  return LinearInstance(random_subspace(rng, tower, d, false),
                        random_subspace(rng, tower, d, true));
}

json run_linear_sweep(const LinearSweepConfig& config) {
  SplitMix64 rng(config.seed);
  TowerPtr tower = make_tower(config.p, 1, config.n);

  int matched = 0, unmatched = 0;
  json disagreements = json::array();
  json construction_failures = json::array();
  json implication_failures = json::array();

  auto implication_fail = [&](const char* kind, const LinearInstance& inst) {
    implication_failures.push_back(
        json{{"kind", kind}, {"instance", linear_instance_to_json(inst)}});
  };

  for (int trial = 0; trial < config.instances; ++trial) {
    LinearInstance inst = random_linear_instance(rng, tower, config.max_dim);

    LinearCharacterizationResult exhaustive =
        is_matched_characterization(inst, LinearStrategy::kExhaustive);
    LinearCharacterizationResult subfield =
        is_matched_characterization(inst, LinearStrategy::kSubfield);
    LinearCharacterizationResult frame =
        is_matched_characterization(inst, LinearStrategy::kFrame);
    (exhaustive.matched ? matched : unmatched) += 1;

    if (exhaustive.matched != subfield.matched || subfield.matched != frame.matched) {
      disagreements.push_back(json{{"instance", linear_instance_to_json(inst)},
                                   {"exhaustive", exhaustive.matched},
                                   {"subfield", subfield.matched},
                                   {"frame", frame.matched}});
      continue;
    }
    for (const auto& result : {exhaustive, subfield, frame}) {
      if (result.violation && !verify_linear_violation(inst, *result.violation)) {
        disagreements.push_back(json{{"instance", linear_instance_to_json(inst)},
                                     {"bad_violation", true}});
      }
    }

    // Matched instances admit a dual basis for every A basis; the canonical
    // basis is as good a probe as any (construction audits the result).
    MatchedBasisResult built = construct_matched_basis(inst, inst.A.basis_elements());
    if (exhaustive.matched && !built.matched) {
      construction_failures.push_back(linear_instance_to_json(inst));
    }

    if (check_chowla_matching(inst) && !exhaustive.matched) implication_fail("chowla", inst);
    if (check_intermediate_field_condition(inst) && !exhaustive.matched) {
      implication_fail("intermediate_field", inst);
    }
    if (!inst.A.contains_one()) {
      LinearInstance self_inst(inst.A, inst.A);
      if (!is_matched_characterization(self_inst, LinearStrategy::kExhaustive).matched) {
        implication_fail("self_matched", self_inst);
      }
    }
  }

  bool ok = disagreements.empty() && construction_failures.empty() &&
            implication_failures.empty();
  return json{{"seed", config.seed},
              {"instances", config.instances},
              {"field", tower_to_json(*tower)},
              {"matched", matched},
              {"unmatched", unmatched},
              {"disagreements", disagreements},
              {"construction_failures", construction_failures},
              {"implication_failures", implication_failures},
              {"ok", ok}};
}

}  // namespace matchable
