#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "matchable/dyson.hpp"
#include "matchable/json_io.hpp"
#include "matchable/sweep.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

json py_to_json(py::handle obj) {
  if (obj.is_none()) return nullptr;
  if (py::isinstance<py::bool_>(obj)) return obj.cast<bool>();
  if (py::isinstance<py::int_>(obj)) return obj.cast<int64_t>();
  if (py::isinstance<py::float_>(obj)) return obj.cast<double>();
  if (py::isinstance<py::str>(obj)) return obj.cast<std::string>();
  if (py::isinstance<py::dict>(obj)) {
    json out = json::object();
    for (auto item : obj.cast<py::dict>()) {
      out[item.first.cast<std::string>()] = py_to_json(item.second);
    }
    return out;
  }
  if (py::isinstance<py::sequence>(obj)) {
    json out = json::array();
    for (auto item : obj.cast<py::sequence>()) out.push_back(py_to_json(item));
    return out;
  }
  throw py::type_error("value is not JSON representable");
}

py::object json_to_py(const json& j) {
  switch (j.type()) {
    case json::value_t::null:
      return py::none();
    case json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case json::value_t::number_integer:
      return py::int_(j.get<int64_t>());
    case json::value_t::number_unsigned:
      return py::int_(j.get<uint64_t>());
    case json::value_t::number_float:
      return py::float_(j.get<double>());
    case json::value_t::string:
      return py::str(j.get<std::string>());
    case json::value_t::array: {
      py::list out;
      for (const auto& v : j) out.append(json_to_py(v));
      return out;
    }
    case json::value_t::object: {
      py::dict out;
      for (auto it = j.begin(); it != j.end(); ++it) {
        out[py::str(it.key())] = json_to_py(it.value());
      }
      return out;
    }
    default:
      return py::none();
  }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "matchings between group subsets and field extension subspaces";

  py::register_exception<matchable::SpecMismatchError>(m, "SpecMismatch", PyExc_ValueError);
  py::register_exception<matchable::PreconditionError>(m, "PreconditionFailure",
                                                       PyExc_ValueError);
  py::register_exception<matchable::SizeBoundError>(m, "SizeBound", PyExc_RuntimeError);
  py::register_exception<matchable::AuditError>(m, "AuditFailure", PyExc_RuntimeError);

  m.def(
      "group_check",
      [](py::dict instance, const std::string& strategy) {
        matchable::MatchInstance inst =
            matchable::instance_from_json(py_to_json(instance));
        if (strategy == "search") {
          return json_to_py(
              matchable::matching_result_to_json(inst, matchable::find_matching(inst)));
        }
        matchable::CharacterizationStrategy s =
            strategy == "reduced" ? matchable::CharacterizationStrategy::kReduced
                                  : matchable::CharacterizationStrategy::kExhaustive;
        return json_to_py(matchable::characterization_result_to_json(
            matchable::characterization_check(inst, s)));
      },
      py::arg("instance"), py::arg("strategy") = "search");

  m.def(
      "group_count",
      [](py::dict instance, int max_size) {
        matchable::MatchInstance inst =
            matchable::instance_from_json(py_to_json(instance));
        return matchable::count_matchings(inst, max_size).str();
      },
      py::arg("instance"), py::arg("max_size") = 20);

  m.def(
      "group_certify",
      [](py::dict instance) {
        matchable::MatchInstance inst =
            matchable::instance_from_json(py_to_json(instance));
        return json_to_py(
            matchable::certificate_to_json(matchable::certificate_for_unmatched(inst)));
      },
      py::arg("instance"));

  m.def(
      "group_verify_certificate",
      [](py::dict instance, py::dict certificate) {
        json doc = py_to_json(instance);
        matchable::MatchInstance inst = matchable::instance_from_json(doc);
        matchable::ViolationCertificate cert =
            matchable::certificate_from_json(inst.group, py_to_json(certificate));
        return matchable::verify_certificate(inst, cert);
      },
      py::arg("instance"), py::arg("certificate"));

  m.def(
      "group_property",
      [](int free_rank, const std::vector<int64_t>& torsion, int64_t bound) {
        auto result =
            matchable::has_matching_property(matchable::make_group(free_rank, torsion), bound);
        json out{{"has_property", result.has_property}};
        if (result.counterexample) {
          out["counterexample"] = matchable::instance_to_json(*result.counterexample);
        }
        return json_to_py(out);
      },
      py::arg("free_rank"), py::arg("torsion"), py::arg("bound") = 512);

  m.def(
      "group_sweep",
      [](uint64_t seed, int instances, int max_set_size) {
        return json_to_py(
            matchable::run_group_sweep({seed, instances, max_set_size}));
      },
      py::arg("seed") = 1, py::arg("instances") = 200, py::arg("max_set_size") = 6);

  m.def(
      "field_check",
      [](py::dict instance, const std::string& strategy) {
        matchable::LinearInstance inst =
            matchable::linear_instance_from_json(py_to_json(instance));
        matchable::LinearStrategy s = matchable::LinearStrategy::kExhaustive;
        if (strategy == "subfield") s = matchable::LinearStrategy::kSubfield;
        if (strategy == "frame") s = matchable::LinearStrategy::kFrame;
        return json_to_py(matchable::linear_result_to_json(
            matchable::is_matched_characterization(inst, s)));
      },
      py::arg("instance"), py::arg("strategy") = "exhaustive");

  m.def(
      "field_construct",
      [](py::dict instance) {
        json doc = py_to_json(instance);
        matchable::LinearInstance inst = matchable::linear_instance_from_json(doc);
        std::vector<matchable::FieldElement> a_basis;
        if (doc.contains("a_basis")) {
          for (const auto& row : doc.at("a_basis")) {
            a_basis.emplace_back(inst.tower, row.get<std::vector<int64_t>>());
          }
        } else {
          a_basis = inst.A.basis_elements();
        }
        return json_to_py(matchable::matched_basis_result_to_json(
            matchable::construct_matched_basis(inst, a_basis)));
      },
      py::arg("instance"));

  m.def(
      "field_property",
      [](int64_t p, int base_degree, int n, std::optional<std::vector<int64_t>> modulus) {
        auto tower = matchable::make_tower(p, base_degree, n, modulus);
        auto result = matchable::has_linear_matching_property(tower);
        json out{{"has_property", result.has_property}, {"vacuous", result.vacuous}};
        if (result.counterexample) {
          out["counterexample"] = matchable::linear_instance_to_json(*result.counterexample);
        }
        return json_to_py(out);
      },
      py::arg("p"), py::arg("base_degree") = 1, py::arg("n") = 2,
      py::arg("modulus") = std::nullopt);

  m.def(
      "field_sweep",
      [](uint64_t seed, int instances, int64_t p, int n, int max_dim) {
        return json_to_py(matchable::run_linear_sweep({seed, instances, p, n, max_dim}));
      },
      py::arg("seed") = 1, py::arg("instances") = 100, py::arg("p") = 2, py::arg("n") = 4,
      py::arg("max_dim") = 3);
}
