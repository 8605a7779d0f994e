#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <utility>
#include <vector>

#include "matchable/linear_matching.hpp"
#include "matchable/rng.hpp"

using namespace matchable;

namespace {

Subspace random_space(SplitMix64& rng, const TowerPtr& tower, int dim, bool avoid_one) {
  while (true) {
    std::vector<std::vector<int64_t>> rows;
    while (static_cast<int>(rows.size()) < dim) {
      std::vector<int64_t> row(tower->n);
      for (auto& c : row) c = static_cast<int64_t>(rng.below(tower->K.size()));
      rows.push_back(row);
      if (linalg::rank(tower->K, rows) < static_cast<int>(rows.size())) rows.pop_back();
    }
    Subspace s = Subspace::span_rows(tower, rows);
    if (!avoid_one || !s.contains_one()) return s;
  }
}

LinearInstance random_instance(SplitMix64& rng, const TowerPtr& tower, int max_dim) {
  int d = 1 + static_cast<int>(rng.below(std::min(max_dim, tower->n - 1)));
  return LinearInstance(random_space(rng, tower, d, false),
                        random_space(rng, tower, d, true));
}

// Exhaustive free-transversal feasibility for tiny binary families.
bool brute_transversal(const ScalarField& K,
                       const std::vector<std::vector<std::vector<int64_t>>>& families,
                       int width) {
  int m = static_cast<int>(families.size());
  int64_t total = 1;
  for (int i = 0; i < width; ++i) total *= K.size();
  std::vector<std::vector<int64_t>> chosen;
  auto decode = [&](int64_t code) {
    std::vector<int64_t> v(width);
    for (int i = 0; i < width; ++i) {
      v[i] = code % K.size();
      code /= K.size();
    }
    return v;
  };
  std::function<bool(int)> rec = [&](int at) -> bool {
    if (at == m) return true;
    for (int64_t code = 1; code < total; ++code) {
      auto v = decode(code);
      if (!linalg::in_row_space(K, families[at], v)) continue;
      chosen.push_back(v);
      if (linalg::rank(K, chosen) == static_cast<int>(chosen.size()) && rec(at + 1)) {
        return true;
      }
      chosen.pop_back();
    }
    return false;
  };
  return rec(0);
}

}  // namespace

TEST_CASE("instance validation") {
  auto tower = make_tower(2, 1, 4);
  FieldElement t = element_at(tower, 2);
  Subspace a = Subspace::span(tower, {one(tower)});
  Subspace b = Subspace::span(tower, {t, mul(t, t)});
  CHECK_THROWS_AS(LinearInstance(a, b), PreconditionError);
  CHECK_THROWS_AS(LinearInstance(Subspace::zero_space(tower), Subspace::zero_space(tower)),
                  PreconditionError);
  auto other = make_tower(2, 1, 3);
  CHECK_THROWS_AS(LinearInstance(a, Subspace::span(other, {one(other)})),
                  SpecMismatchError);
}

TEST_CASE("free transversal agrees with exhaustive search") {
  auto tower = make_tower(2, 1, 3);
  const ScalarField& K = tower->K;
  SplitMix64 rng(41);
  int infeasible_seen = 0;
  for (int trial = 0; trial < 60; ++trial) {
    // Up to four members in a width-3 space, so infeasible cases occur.
    int m = 1 + static_cast<int>(rng.below(4));
    std::vector<std::vector<std::vector<int64_t>>> families;
    for (int i = 0; i < m; ++i) {
      families.push_back(
          random_space(rng, tower, 1 + static_cast<int>(rng.below(2)), false).rows());
    }
    TransversalResult result = free_transversal(K, families, 3);
    CHECK(result.found == brute_transversal(K, families, 3));
    if (result.found) {
      CHECK(linalg::rank(K, result.transversal) == m);
      for (int i = 0; i < m; ++i) {
        CHECK(linalg::in_row_space(K, families[i], result.transversal[i]));
      }
    } else {
      ++infeasible_seen;
      REQUIRE_FALSE(result.violating.empty());
      // The reported set really violates the dimension count.
      std::vector<std::vector<int64_t>> stacked;
      for (int i : result.violating) {
        stacked.insert(stacked.end(), families[i].begin(), families[i].end());
      }
      CHECK(linalg::rank(K, stacked) < static_cast<int>(result.violating.size()));
    }
  }
  CHECK(infeasible_seen > 0);
}

TEST_CASE("transversal reports the smallest violating set") {
  auto tower = make_tower(2, 1, 2);
  std::vector<std::vector<std::vector<int64_t>>> families{{{1, 0}}, {{1, 0}}};
  TransversalResult result = free_transversal(tower->K, families, 2);
  CHECK_FALSE(result.found);
  CHECK(result.violating == std::vector<int>{0, 1});
}

TEST_CASE("matched basis test follows the containment definition") {
  auto tower = make_tower(2, 1, 4);
  FieldElement t = element_at(tower, 2);
  // A = B = K: 1^{-1}A ∩ B = B itself, never inside the empty span.
  Subspace k_line = Subspace::span(tower, {one(tower)});
  LinearInstance bad(k_line, k_line);
  CHECK_FALSE(is_matched_basis(bad, {one(tower)}, {one(tower)}));

  // A = B = Kt: t^{-1}A ∩ B = K ∩ Kt = 0.
  Subspace t_line = Subspace::span(tower, {t});
  LinearInstance good(t_line, t_line);
  CHECK(is_matched_basis(good, {t}, {t}));

  CHECK_THROWS_AS(is_matched_basis(good, {one(tower)}, {t}), PreconditionError);
  CHECK_THROWS_AS(is_matched_basis(good, {t}, {zero(tower)}), PreconditionError);
}

TEST_CASE("construction produces audited matched bases on a prime-degree tower") {
  auto tower = make_tower(2, 1, 5);
  SplitMix64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    LinearInstance inst = random_instance(rng, tower, 4);
    MatchedBasisResult built = construct_matched_basis(inst, inst.A.basis_elements());
    CHECK(built.matched);
    REQUIRE(built.b_basis.size() == static_cast<size_t>(inst.dim()));
    CHECK(is_matched_basis(inst, built.a_basis, built.b_basis));
  }
}

TEST_CASE("construction rejects bad inputs") {
  auto tower = make_tower(2, 1, 4);
  FieldElement t = element_at(tower, 2);
  Subspace a = Subspace::span(tower, {t});
  Subspace b_with_one = Subspace::span(tower, {one(tower)});
  CHECK_THROWS_AS(construct_matched_basis(LinearInstance(a, b_with_one), {t}),
                  PreconditionError);
  Subspace b = Subspace::span(tower, {mul(t, t)});
  LinearInstance inst(a, b);
  CHECK_THROWS_AS(construct_matched_basis(inst, {one(tower)}), PreconditionError);
  CHECK_THROWS_AS(construct_matched_basis(inst, {t, mul(t, t)}), PreconditionError);
}

TEST_CASE("linear transform step follows its subspace definition") {
  auto tower = make_tower(2, 1, 4);
  FieldElement t = element_at(tower, 2);
  Subspace S = Subspace::span(tower, {one(tower)});
  Subspace R = Subspace::span(tower, {one(tower), t});
  auto [S1, R1] = linear_dyson_step(S, R, one(tower), t);
  CHECK(S1 == sum_spaces(S, scale_space(one(tower), R)));
  CHECK(R1 == intersect_spaces(R, scale_space(inv(one(tower)), S)));
  CHECK(S1.dim() + R1.dim() == S.dim() + R.dim());
  CHECK(S1.dim() == 2);
  CHECK(R1.contains_one());

  CHECK_THROWS_AS(linear_dyson_step(S, R, t, t), PreconditionError);          // e outside S
  CHECK_THROWS_AS(linear_dyson_step(S, R, zero(tower), t), PreconditionError);  // e zero
  CHECK_THROWS_AS(linear_dyson_step(S, R, one(tower), one(tower)),
                  PreconditionError);  // e*r inside S
  CHECK_THROWS_AS(linear_dyson_step(S, R, one(tower), mul(t, t)),
                  PreconditionError);  // r outside R
}

TEST_CASE("linear stabilization grows S to a stable module") {
  auto tower = make_tower(2, 1, 4);
  FieldElement t = element_at(tower, 2);
  Subspace A = Subspace::full_space(tower);
  Subspace S0 = Subspace::span(tower, {one(tower)});
  Subspace R0 = Subspace::span(tower, {one(tower), t});
  LinearTransformTrace trace = linear_stabilize(S0, R0, A);
  REQUIRE(trace.states.size() == 2);
  const auto& last = trace.states.back();
  CHECK(last.S == Subspace::span(tower, {one(tower), t}));
  CHECK(last.R == Subspace::span(tower, {one(tower)}));
  CHECK(minkowski_span(last.S, last.R) == last.S);
  int invariant = S0.dim() + R0.dim();
  for (size_t i = 0; i < trace.states.size(); ++i) {
    CHECK(trace.states[i].S.dim() + trace.states[i].R.dim() == invariant);
    CHECK(trace.states[i].R.contains_one());
    if (i > 0) CHECK(trace.states[i].S.dim() > trace.states[i - 1].S.dim());
  }
  // Already stable input takes zero steps.
  Subspace stable_r = Subspace::span(tower, {one(tower)});
  LinearTransformTrace flat = linear_stabilize(S0, stable_r, A);
  CHECK(flat.states.size() == 1);
  CHECK(flat.chosen.empty());

  CHECK_THROWS_AS(linear_stabilize(Subspace::zero_space(tower), R0, A), PreconditionError);
  CHECK_THROWS_AS(linear_stabilize(S0, Subspace::span(tower, {t}), A), PreconditionError);
  Subspace small_a = Subspace::span(tower, {one(tower)});
  CHECK_THROWS_AS(linear_stabilize(S0, R0, small_a), PreconditionError);
}

TEST_CASE("characterization strategies agree on random instances") {
  SplitMix64 rng(1009);
  for (auto setup : std::vector<std::pair<int, int>>{{4, 60}, {6, 30}}) {
    auto tower = make_tower(2, 1, setup.first);
    int unmatched_seen = 0;
    for (int trial = 0; trial < setup.second; ++trial) {
      LinearInstance inst = random_instance(rng, tower, 3);
      auto ex = is_matched_characterization(inst, LinearStrategy::kExhaustive);
      auto sub = is_matched_characterization(inst, LinearStrategy::kSubfield);
      auto fr = is_matched_characterization(inst, LinearStrategy::kFrame);
      CHECK(ex.matched == sub.matched);
      CHECK(ex.matched == fr.matched);
      for (const auto& res : {ex, sub, fr}) {
        if (res.violation) {
          CHECK(verify_linear_violation(inst, *res.violation));
        }
      }
      if (!ex.matched) {
        ++unmatched_seen;
        REQUIRE(ex.violation.has_value());
        REQUIRE(sub.violation.has_value());
        REQUIRE(fr.violation.has_value());
      }
    }
    if (setup.first == 4) CHECK(unmatched_seen > 0);
  }
}

TEST_CASE("characterization requires 1 outside B") {
  auto tower = make_tower(2, 1, 4);
  Subspace a = Subspace::span(tower, {element_at(tower, 2)});
  Subspace b = Subspace::span(tower, {one(tower)});
  CHECK_THROWS_AS(
      is_matched_characterization(LinearInstance(a, b), LinearStrategy::kExhaustive),
      PreconditionError);
}

TEST_CASE("chowla subspaces and self matching") {
  auto tower = make_tower(2, 1, 4);
  FieldElement t = element_at(tower, 2);
  CHECK(is_chowla_subspace(Subspace::span(tower, {t})));
  CHECK(is_chowla_subspace(Subspace::zero_space(tower)));
  auto fields = intermediate_fields(tower);
  REQUIRE(fields.size() >= 2);
  REQUIRE(fields[1].dim() == 2);
  CHECK_FALSE(is_chowla_subspace(fields[1]));  // contains 1, degree 1 is too small

  LinearInstance chowla_inst(Subspace::span(tower, {one(tower), t}),
                             Subspace::span(tower, {t, mul(t, t)}));
  if (check_chowla_matching(chowla_inst)) {
    CHECK(is_matched_characterization(chowla_inst, LinearStrategy::kExhaustive).matched);
  }

  CHECK(check_self_matched(Subspace::span(tower, {t})));
  CHECK_FALSE(check_self_matched(Subspace::span(tower, {one(tower)})));
  CHECK_THROWS_AS(check_self_matched(Subspace::zero_space(tower)), PreconditionError);
}

TEST_CASE("matching property depends exactly on degree compositeness") {
  auto trivial = has_linear_matching_property(make_tower(2, 1, 1));
  CHECK(trivial.has_property);
  CHECK(trivial.vacuous);

  for (int n : {2, 3, 5, 7}) {
    auto result = has_linear_matching_property(make_tower(2, 1, n));
    CHECK(result.has_property);
    CHECK_FALSE(result.vacuous);
    CHECK_FALSE(result.counterexample.has_value());
  }

  for (auto [p, n] : std::vector<std::pair<int64_t, int>>{{2, 4}, {2, 6}, {2, 9}, {3, 4}}) {
    auto result = has_linear_matching_property(make_tower(p, 1, n));
    CHECK_FALSE(result.has_property);
    REQUIRE(result.counterexample.has_value());
    REQUIRE(result.violation.has_value());
    CHECK(verify_linear_violation(*result.counterexample, *result.violation));
    CHECK_FALSE(is_matched_characterization(*result.counterexample,
                                            LinearStrategy::kExhaustive)
                    .matched);
  }
}

TEST_CASE("violation verification rejects mutations") {
  auto result = has_linear_matching_property(make_tower(2, 1, 4));
  REQUIRE(result.counterexample.has_value());
  const LinearInstance& inst = *result.counterexample;
  LinearViolation good = *result.violation;
  REQUIRE(verify_linear_violation(inst, good));

  LinearViolation swapped{good.R, good.S};
  CHECK_FALSE(verify_linear_violation(inst, swapped));

  LinearViolation zeroed{Subspace::zero_space(inst.tower), good.R};
  CHECK_FALSE(verify_linear_violation(inst, zeroed));

  // Growing S past A breaks the containment requirement.
  for (int64_t i = 0; i < inst.tower->size(); ++i) {
    FieldElement cand = element_at(inst.tower, i);
    if (inst.A.contains(cand)) continue;
    LinearViolation inflated{sum_spaces(good.S, Subspace::span(inst.tower, {cand})),
                             good.R};
    CHECK_FALSE(verify_linear_violation(inst, inflated));
    break;
  }
}

TEST_CASE("stable pairs satisfy the module degree bound") {
  auto tower = make_tower(2, 1, 4);
  auto all = enumerate_subspaces(Subspace::full_space(tower));
  int stable_pairs = 0;
  for (const auto& S : all) {
    if (S.is_zero()) continue;
    for (const auto& R : all) {
      if (R.is_zero()) continue;
      if (!(minkowski_span(S, R) == S)) continue;
      ++stable_pairs;
      for (int64_t i = 0; i < R.element_count(); ++i) {
        FieldElement x = R.element_at(i);
        CHECK(degree_over_base(x) <= S.dim());
        // S is a module over K(x): aK(x) stays inside S.
        for (const auto& a : S.basis_elements()) {
          CHECK(S.contains_space(
              minkowski_span(Subspace::span(tower, {a}), power_span(x))));
        }
      }
    }
  }
  CHECK(stable_pairs > 0);
}

TEST_CASE("intermediate field condition is sound") {
  auto tower = make_tower(2, 1, 4);
  auto property = has_linear_matching_property(tower);
  REQUIRE(property.counterexample.has_value());
  CHECK_FALSE(check_intermediate_field_condition(*property.counterexample));

  SplitMix64 rng(2024);
  int satisfied = 0;
  for (int trial = 0; trial < 60; ++trial) {
    LinearInstance inst = random_instance(rng, tower, 3);
    if (check_intermediate_field_condition(inst)) {
      ++satisfied;
      CHECK(is_matched_characterization(inst, LinearStrategy::kExhaustive).matched);
    }
  }
  CHECK(satisfied > 0);
}
