#pragma once

#include <nlohmann/json_fwd.hpp>

#include "matchable/dyson.hpp"
#include "matchable/group_matching.hpp"
#include "matchable/linear_matching.hpp"

// JSON shapes:
//   group:       {"free_rank": 0, "torsion": [6]}
//   instance:    {"group": ..., "A": [[0], [2]], "B": [[1], [3]]}
//   matching:    {"exists": true, "matching": [[...], ...]} with B images in A order
//   violator:    {"S": [[...]], "neighborhood": [[...]], "blocked": [[...]]}
//   count:       {"count": "1234"} (decimal string, may exceed 64 bits)
//   certificate: {"S_m": [[...]], "R_m": [[...]], "instance_hash": "cbf29c..."}
//   field:       {"p": 2, "base_degree": 1, "n": 4, "modulus": [1, 0, 0, 1, 1]}
//   linear:      {"field": ..., "A": [[...], ...], "B": [[...], ...]} rows as
//                coefficient lists; subspaces are canonicalized on load.

namespace matchable {

nlohmann::json group_spec_to_json(const GroupSpec& spec);
GroupSpecPtr group_spec_from_json(const nlohmann::json& j);

nlohmann::json group_elements_to_json(const std::vector<GroupElement>& elems);
std::vector<GroupElement> group_elements_from_json(const GroupSpecPtr& spec,
                                                   const nlohmann::json& j);

nlohmann::json instance_to_json(const MatchInstance& inst);
MatchInstance instance_from_json(const nlohmann::json& j);

nlohmann::json matching_result_to_json(const MatchInstance& inst, const MatchingResult& result);
nlohmann::json characterization_result_to_json(const CharacterizationResult& result);

nlohmann::json certificate_to_json(const ViolationCertificate& cert);
ViolationCertificate certificate_from_json(const GroupSpecPtr& spec, const nlohmann::json& j);

nlohmann::json tower_to_json(const FieldTower& tower);
TowerPtr tower_from_json(const nlohmann::json& j);

nlohmann::json subspace_to_json(const Subspace& space);
Subspace subspace_from_json(const TowerPtr& tower, const nlohmann::json& j);

nlohmann::json linear_instance_to_json(const LinearInstance& inst);
LinearInstance linear_instance_from_json(const nlohmann::json& j);

nlohmann::json linear_result_to_json(const LinearCharacterizationResult& result);
nlohmann::json matched_basis_result_to_json(const MatchedBasisResult& result);

}  // namespace matchable
