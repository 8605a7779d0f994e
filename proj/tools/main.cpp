#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "matchable/dyson.hpp"
#include "matchable/json_io.hpp"
#include "matchable/sweep.hpp"

// Exit codes: 0 computed, 1 internal error, 2 bad input, 3 size bound hit.

namespace {

using matchable::AuditError;
using matchable::PreconditionError;
using matchable::SizeBoundError;
using matchable::SpecMismatchError;
using nlohmann::json;

json read_json(const std::string& path) {
  if (path.empty() || path == "-") return json::parse(std::cin);
  std::ifstream in(path);
  if (!in) throw SpecMismatchError("cannot open input file: " + path);
  return json::parse(in);
}

void emit(const json& out, bool pretty) {
  if (pretty) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << out.dump() << "\n";
  }
}

matchable::CharacterizationStrategy group_strategy(const std::string& name) {
  if (name == "exhaustive") return matchable::CharacterizationStrategy::kExhaustive;
  if (name == "reduced") return matchable::CharacterizationStrategy::kReduced;
  throw SpecMismatchError("unknown strategy: " + name);
}

matchable::LinearStrategy linear_strategy(const std::string& name) {
  if (name == "exhaustive") return matchable::LinearStrategy::kExhaustive;
  if (name == "subfield") return matchable::LinearStrategy::kSubfield;
  if (name == "frame") return matchable::LinearStrategy::kFrame;
  throw SpecMismatchError("unknown strategy: " + name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matchings between group subsets and field subspaces"};
  app.require_subcommand(1);
  app.fallthrough();  // accept --input/--pretty after the subcommand name

  std::string input;
  bool pretty = false;
  app.add_option("--input", input, "instance JSON file, or - for stdin")
      ->capture_default_str();
  app.add_flag("--pretty", pretty, "indent JSON output");

  std::string strategy = "search";
  uint64_t seed = 1;
  int instances = 200;
  int max_set_size = 6;
  int max_size = 20;
  int max_dim = 3;
  int64_t p = 2;
  int base_degree = 1;
  int n = 4;
  std::vector<int64_t> modulus;
  int free_rank = 0;
  std::vector<int64_t> torsion;
  int64_t bound = 512;

  auto* group_check = app.add_subcommand("group-check", "decide matchability of A to B");
  group_check->add_option("--strategy", strategy,
                          "search, exhaustive, or reduced")->capture_default_str();

  auto* group_count = app.add_subcommand("group-count", "count matchings from A to B");
  group_count->add_option("--max-size", max_size, "largest |A| accepted")
      ->capture_default_str();

  app.add_subcommand("group-certify", "emit a violating pair for an unmatchable instance");

  auto* group_property =
      app.add_subcommand("group-property", "test whether every instance in a group matches");
  group_property->add_option("--free-rank", free_rank, "number of infinite factors")
      ->capture_default_str();
  group_property->add_option("--torsion", torsion, "finite cyclic factor sizes");
  group_property->add_option("--bound", bound, "largest counterexample size")
      ->capture_default_str();

  auto* group_sweep = app.add_subcommand("group-sweep", "cross-validate on random instances");
  group_sweep->add_option("--seed", seed, "")->capture_default_str();
  group_sweep->add_option("--instances", instances, "")->capture_default_str();
  group_sweep->add_option("--max-set-size", max_set_size, "")->capture_default_str();

  auto* field_check =
      app.add_subcommand("field-check", "decide whether subspace A is matched to B");
  std::string field_strategy = "exhaustive";
  field_check->add_option("--strategy", field_strategy,
                          "exhaustive, subfield, or frame")->capture_default_str();

  app.add_subcommand("field-construct",
                     "build a matched dual basis (uses a_basis from input when present)");

  auto* field_lmp =
      app.add_subcommand("field-lmp", "test whether every equal-dimension pair matches");
  field_lmp->add_option("--p", p, "")->capture_default_str();
  field_lmp->add_option("--base-degree", base_degree, "")->capture_default_str();
  field_lmp->add_option("--n", n, "extension degree")->capture_default_str();
  field_lmp->add_option("--modulus", modulus, "defining polynomial, low to high");

  auto* field_sweep = app.add_subcommand("field-sweep", "cross-validate on random subspaces");
  field_sweep->add_option("--seed", seed, "")->capture_default_str();
  field_sweep->add_option("--instances", instances, "")->capture_default_str();
  field_sweep->add_option("--p", p, "")->capture_default_str();
  field_sweep->add_option("--n", n, "extension degree")->capture_default_str();
  field_sweep->add_option("--max-dim", max_dim, "")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (group_check->parsed()) {
      matchable::MatchInstance inst = matchable::instance_from_json(read_json(input));
      if (strategy == "search") {
        emit(matchable::matching_result_to_json(inst, matchable::find_matching(inst)), pretty);
      } else {
        emit(matchable::characterization_result_to_json(
                 matchable::characterization_check(inst, group_strategy(strategy))),
             pretty);
      }
    } else if (group_count->parsed()) {
      matchable::MatchInstance inst = matchable::instance_from_json(read_json(input));
      emit(json{{"count", matchable::count_matchings(inst, max_size).str()}}, pretty);
    } else if (app.get_subcommand("group-certify")->parsed()) {
      matchable::MatchInstance inst = matchable::instance_from_json(read_json(input));
      matchable::ViolationCertificate cert = matchable::certificate_for_unmatched(inst);
      if (!matchable::verify_certificate(inst, cert)) {
        throw AuditError("emitted certificate failed verification");
      }
      emit(matchable::certificate_to_json(cert), pretty);
    } else if (group_property->parsed()) {
      auto spec = matchable::make_group(free_rank, torsion);
      auto result = matchable::has_matching_property(spec, bound);
      json out{{"has_property", result.has_property}};
      if (result.counterexample) {
        out["counterexample"] = matchable::instance_to_json(*result.counterexample);
      }
      emit(out, pretty);
    } else if (group_sweep->parsed()) {
      matchable::GroupSweepConfig config{seed, instances, max_set_size};
      json report = matchable::run_group_sweep(config);
      emit(report, pretty);
      return report.at("ok").get<bool>() ? 0 : 1;
    } else if (field_check->parsed()) {
      matchable::LinearInstance inst = matchable::linear_instance_from_json(read_json(input));
      emit(matchable::linear_result_to_json(matchable::is_matched_characterization(
               inst, linear_strategy(field_strategy))),
           pretty);
    } else if (app.get_subcommand("field-construct")->parsed()) {
      json doc = read_json(input);
      matchable::LinearInstance inst = matchable::linear_instance_from_json(doc);
      std::vector<matchable::FieldElement> a_basis;
      if (doc.contains("a_basis")) {
        for (const auto& row : doc.at("a_basis")) {
          a_basis.emplace_back(inst.tower, row.get<std::vector<int64_t>>());
        }
      } else {
        a_basis = inst.A.basis_elements();
      }
      emit(matchable::matched_basis_result_to_json(
               matchable::construct_matched_basis(inst, a_basis)),
           pretty);
    } else if (field_lmp->parsed()) {
      std::optional<std::vector<int64_t>> mod;
      if (!modulus.empty()) mod = modulus;
      auto tower = matchable::make_tower(p, base_degree, n, mod);
      auto result = matchable::has_linear_matching_property(tower);
      json out{{"has_property", result.has_property}, {"vacuous", result.vacuous}};
      if (result.counterexample) {
        out["counterexample"] = matchable::linear_instance_to_json(*result.counterexample);
        out["violation"] =
            json{{"S", matchable::subspace_to_json(result.violation->S)},
                 {"R", matchable::subspace_to_json(result.violation->R)}};
      }
      emit(out, pretty);
    } else if (field_sweep->parsed()) {
      matchable::LinearSweepConfig config{seed, instances, p, n, max_dim};
      json report = matchable::run_linear_sweep(config);
      emit(report, pretty);
      return report.at("ok").get<bool>() ? 0 : 1;
    }
  } catch (const SpecMismatchError& err) {
    std::cerr << "input error: " << err.what() << "\n";
    return 2;
  } catch (const PreconditionError& err) {
    std::cerr << "input error: " << err.what() << "\n";
    return 2;
  } catch (const json::exception& err) {
    std::cerr << "input error: " << err.what() << "\n";
    return 2;
  } catch (const SizeBoundError& err) {
    std::cerr << "size bound exceeded: " << err.what() << "\n";
    return 3;
  } catch (const std::exception& err) {
    std::cerr << "internal error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
