#include "matchable/json_io.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

namespace matchable {

namespace {

using nlohmann::json;

int64_t require_int(const json& j, const char* what) {
  if (!j.is_number_integer()) {
    throw SpecMismatchError(std::string(what) + " must be an integer");
  }
  return j.get<int64_t>();
}

const json& require_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw SpecMismatchError(std::string("missing field: ") + key);
  }
  return j.at(key);
}

std::vector<int64_t> int_list(const json& j, const char* what) {
  if (!j.is_array()) throw SpecMismatchError(std::string(what) + " must be a list");
  std::vector<int64_t> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(require_int(v, what));
  return out;
}

}  // namespace

json group_spec_to_json(const GroupSpec& spec) {
  return json{{"free_rank", spec.free_rank()}, {"torsion", spec.torsion()}};
}

GroupSpecPtr group_spec_from_json(const json& j) {
  int64_t free_rank = require_int(require_field(j, "free_rank"), "free_rank");
  std::vector<int64_t> torsion = int_list(require_field(j, "torsion"), "torsion");
  return make_group(static_cast<int>(free_rank), torsion);
}

json group_elements_to_json(const std::vector<GroupElement>& elems) {
  json out = json::array();
  for (const auto& e : elems) out.push_back(e.coords());
  return out;
}

std::vector<GroupElement> group_elements_from_json(const GroupSpecPtr& spec, const json& j) {
  if (!j.is_array()) throw SpecMismatchError("element list must be a list");
  std::vector<GroupElement> out;
  out.reserve(j.size());
  for (const auto& row : j) out.emplace_back(spec, int_list(row, "coordinate"));
  return out;
}

json instance_to_json(const MatchInstance& inst) {
  return json{{"group", group_spec_to_json(*inst.group)},
              {"A", group_elements_to_json(inst.A)},
              {"B", group_elements_to_json(inst.B)}};
}

MatchInstance instance_from_json(const json& j) {
  GroupSpecPtr spec = group_spec_from_json(require_field(j, "group"));
  return MatchInstance(spec, group_elements_from_json(spec, require_field(j, "A")),
                       group_elements_from_json(spec, require_field(j, "B")));
}

json matching_result_to_json(const MatchInstance& inst, const MatchingResult& result) {
  json out{{"exists", result.exists}};
  if (result.exists) {
    std::vector<GroupElement> images;
    images.reserve(result.matching->size());
    for (int col : *result.matching) images.push_back(inst.B[col]);
    out["matching"] = group_elements_to_json(images);
  } else if (result.witness) {
    std::vector<GroupElement> s_elems, n_elems, blocked;
    for (int i : result.witness->rows) s_elems.push_back(inst.A[i]);
    for (int j2 : result.witness->neighborhood) n_elems.push_back(inst.B[j2]);
    for (int j2 : result.witness->blocked) blocked.push_back(inst.B[j2]);
    out["violator"] = json{{"S", group_elements_to_json(s_elems)},
                           {"neighborhood", group_elements_to_json(n_elems)},
                           {"blocked", group_elements_to_json(blocked)}};
  }
  return out;
}

json characterization_result_to_json(const CharacterizationResult& result) {
  json out{{"holds", result.holds}};
  if (result.violation) {
    out["violation"] = json{{"S", group_elements_to_json(result.violation->S)},
                            {"R", group_elements_to_json(result.violation->R)}};
  }
  return out;
}

json certificate_to_json(const ViolationCertificate& cert) {
  std::ostringstream hash;
  hash << std::hex << cert.instance_hash;
  return json{{"S_m", group_elements_to_json(cert.S_m)},
              {"R_m", group_elements_to_json(cert.R_m)},
              {"instance_hash", hash.str()}};
}

ViolationCertificate certificate_from_json(const GroupSpecPtr& spec, const json& j) {
  ViolationCertificate cert;
  cert.S_m = group_elements_from_json(spec, require_field(j, "S_m"));
  cert.R_m = group_elements_from_json(spec, require_field(j, "R_m"));
  const json& hash = require_field(j, "instance_hash");
  if (!hash.is_string()) throw SpecMismatchError("instance_hash must be a hex string");
  cert.instance_hash = std::stoull(hash.get<std::string>(), nullptr, 16);
  return cert;
}

json tower_to_json(const FieldTower& tower) {
  return json{{"p", tower.K.p()},
              {"base_degree", tower.K.degree()},
              {"n", tower.n},
              {"modulus", tower.modulus}};
}

TowerPtr tower_from_json(const json& j) {
  int64_t p = require_int(require_field(j, "p"), "p");
  int64_t base_degree =
      j.contains("base_degree") ? require_int(j.at("base_degree"), "base_degree") : 1;
  int64_t n = require_int(require_field(j, "n"), "n");
  std::optional<std::vector<int64_t>> modulus;
  if (j.contains("modulus")) modulus = int_list(j.at("modulus"), "modulus");
  return make_tower(p, static_cast<int>(base_degree), static_cast<int>(n), modulus);
}

json subspace_to_json(const Subspace& space) {
  json out = json::array();
  for (const auto& row : space.rows()) out.push_back(row);
  return out;
}

Subspace subspace_from_json(const TowerPtr& tower, const json& j) {
  if (!j.is_array()) throw SpecMismatchError("subspace must be a list of rows");
  std::vector<std::vector<int64_t>> rows;
  rows.reserve(j.size());
  for (const auto& row : j) rows.push_back(int_list(row, "subspace row"));
  return Subspace::span_rows(tower, rows);
}

json linear_instance_to_json(const LinearInstance& inst) {
  return json{{"field", tower_to_json(*inst.tower)},
              {"A", subspace_to_json(inst.A)},
              {"B", subspace_to_json(inst.B)}};
}

LinearInstance linear_instance_from_json(const json& j) {
  TowerPtr tower = tower_from_json(require_field(j, "field"));
  return LinearInstance(subspace_from_json(tower, require_field(j, "A")),
                        subspace_from_json(tower, require_field(j, "B")));
}

json linear_result_to_json(const LinearCharacterizationResult& result) {
  json out{{"matched", result.matched}};
  if (result.violation) {
    out["violation"] = json{{"S", subspace_to_json(result.violation->S)},
                            {"R", subspace_to_json(result.violation->R)}};
  }
  return out;
}

json matched_basis_result_to_json(const MatchedBasisResult& result) {
  json out{{"matched", result.matched}};
  json a_rows = json::array();
  for (const auto& e : result.a_basis) a_rows.push_back(e.coeffs());
  out["a_basis"] = a_rows;
  if (result.matched) {
    json b_rows = json::array();
    for (const auto& e : result.b_basis) b_rows.push_back(e.coeffs());
    out["b_basis"] = b_rows;
  } else if (result.rado_witness) {
    out["rado_witness"] = *result.rado_witness;
  }
  return out;
}

}  // namespace matchable
