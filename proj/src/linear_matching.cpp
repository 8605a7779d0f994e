#include "matchable/linear_matching.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

namespace matchable {

namespace {

void require_same_tower_inst(const Subspace& a, const Subspace& b) {
  if (a.tower() == b.tower()) return;
  if (a.tower() && b.tower() && *a.tower() == *b.tower()) return;
  throw SpecMismatchError("subspaces belong to different field towers");
}

bool spans_space(const std::vector<FieldElement>& basis, const Subspace& space) {
  if (static_cast<int>(basis.size()) != space.dim()) return false;
  return Subspace::span(space.tower(), basis) == space;
}

// a_i^{-1}A ∩ B for each basis element.
std::vector<Subspace> shifted_intersections(const LinearInstance& inst,
                                            const std::vector<FieldElement>& a_basis) {
  std::vector<Subspace> out;
  out.reserve(a_basis.size());
  for (const auto& a : a_basis) {
    out.push_back(intersect_spaces(scale_space(inv(a), inst.A), inst.B));
  }
  return out;
}

}  // namespace

LinearInstance::LinearInstance(Subspace a, Subspace b) : tower(a.tower()), A(std::move(a)), B(std::move(b)) {
  require_same_tower_inst(A, B);
  if (A.dim() != B.dim() || A.dim() < 1) {
    throw PreconditionError("instance requires equal positive dimensions");
  }
}

TransversalResult free_transversal(const ScalarField& K,
                                   const std::vector<std::vector<std::vector<int64_t>>>& families,
                                   int width) {
  int m = static_cast<int>(families.size());
  struct Ground {
    int family;
    const std::vector<int64_t>* vec;
  };
  std::vector<Ground> ground;
  for (int i = 0; i < m; ++i) {
    for (const auto& row : families[i]) {
      if (static_cast<int>(row.size()) != width) {
        throw PreconditionError("family rows must share one ambient width");
      }
      ground.push_back({i, &row});
    }
  }
  int g = static_cast<int>(ground.size());
  std::vector<char> in_set(g, 0);

  auto independent_with = [&](const std::vector<int>& ids) {
    std::vector<std::vector<int64_t>> rows;
    rows.reserve(ids.size());
    for (int id : ids) rows.push_back(*ground[id].vec);
    return linalg::rank(K, std::move(rows)) == static_cast<int>(ids.size());
  };

  // Matroid intersection of the one-per-family partition matroid with the
  // linear matroid, grown by shortest augmenting paths.
  while (true) {
    std::vector<int> chosen;
    for (int id = 0; id < g; ++id) {
      if (in_set[id]) chosen.push_back(id);
    }
    if (static_cast<int>(chosen.size()) == m) break;

    std::vector<char> family_used(m, 0);
    for (int id : chosen) family_used[ground[id].family] = 1;

    std::vector<int> parent(g, -2);
    std::queue<int> queue;
    for (int id = 0; id < g; ++id) {
      if (!in_set[id] && !family_used[ground[id].family]) {
        parent[id] = -1;
        queue.push(id);
      }
    }
    int reached = -1;
    while (!queue.empty() && reached < 0) {
      int at = queue.front();
      queue.pop();
      if (!in_set[at]) {
        // Sink test: adding `at` keeps the chosen vectors independent.
        auto ids = chosen;
        ids.push_back(at);
        if (independent_with(ids)) {
          reached = at;
          break;
        }
        // Arcs to chosen elements whose removal restores independence.
        for (int x : chosen) {
          if (parent[x] != -2) continue;
          std::vector<int> swapped;
          for (int id : chosen) {
            if (id != x) swapped.push_back(id);
          }
          swapped.push_back(at);
          if (independent_with(swapped)) {
            parent[x] = at;
            queue.push(x);
          }
        }
      } else {
        // Arcs from a chosen element to outside elements of its family.
        for (int id = 0; id < g; ++id) {
          if (in_set[id] || parent[id] != -2) continue;
          if (ground[id].family != ground[at].family) continue;
          parent[id] = at;
          queue.push(id);
        }
      }
    }
    if (reached < 0) {
      // Infeasible: report the first Rado-violating index set.
      TransversalResult result;
      for (int size = 1; size <= m && result.violating.empty(); ++size) {
        for (uint32_t mask = 1; mask < (1u << m); ++mask) {
          if (std::popcount(mask) != size) continue;
          std::vector<std::vector<int64_t>> rows;
          for (int i = 0; i < m; ++i) {
            if (!((mask >> i) & 1)) continue;
            rows.insert(rows.end(), families[i].begin(), families[i].end());
          }
          if (linalg::rank(K, std::move(rows)) < size) {
            for (int i = 0; i < m; ++i) {
              if ((mask >> i) & 1) result.violating.push_back(i);
            }
            break;
          }
        }
      }
      if (result.violating.empty()) {
        throw AuditError("transversal infeasible but no violating set found");
      }
      return result;
    }
    for (int at = reached; at >= 0; at = parent[at]) in_set[at] = !in_set[at];
  }

  TransversalResult result;
  result.found = true;
  result.transversal.assign(m, {});
  for (int id = 0; id < g; ++id) {
    if (in_set[id]) result.transversal[ground[id].family] = *ground[id].vec;
  }
  return result;
}

TransversalResult free_transversal(const std::vector<Subspace>& family) {
  if (family.empty()) throw PreconditionError("transversal requires a nonempty family");
  std::vector<std::vector<std::vector<int64_t>>> families;
  families.reserve(family.size());
  for (const auto& w : family) {
    require_same_tower_inst(w, family.front());
    families.push_back(w.rows());
  }
  return free_transversal(family.front().tower()->K, families,
                          family.front().tower()->n);
}

bool is_matched_basis(const LinearInstance& inst, const std::vector<FieldElement>& a_basis,
                      const std::vector<FieldElement>& b_basis) {
  if (!spans_space(a_basis, inst.A) || !spans_space(b_basis, inst.B)) {
    throw PreconditionError("matched-basis test requires bases of A and B");
  }
  auto shifted = shifted_intersections(inst, a_basis);
  for (size_t i = 0; i < a_basis.size(); ++i) {
    std::vector<FieldElement> others;
    for (size_t j = 0; j < b_basis.size(); ++j) {
      if (j != i) others.push_back(b_basis[j]);
    }
    Subspace hyperplane = Subspace::span(inst.tower, others);
    if (!hyperplane.contains_space(shifted[i])) return false;
  }
  return true;
}

MatchedBasisResult construct_matched_basis(const LinearInstance& inst,
                                           const std::vector<FieldElement>& a_basis) {
  if (inst.one_in_B()) {
    throw PreconditionError("construction requires 1 outside B");
  }
  if (!spans_space(a_basis, inst.A)) {
    throw PreconditionError("construction requires a basis of A");
  }
  MatchedBasisResult result;
  result.a_basis = a_basis;

  std::vector<std::vector<std::vector<int64_t>>> families;
  for (const auto& v : shifted_intersections(inst, a_basis)) {
    families.push_back(annihilator(v, inst.B));
  }
  TransversalResult tr = free_transversal(inst.tower->K, families, inst.B.dim());
  if (!tr.found) {
    result.rado_witness = std::move(tr.violating);
    return result;
  }
  result.matched = true;
  result.b_basis = dual_basis(tr.transversal, inst.B);
  if (!is_matched_basis(inst, result.a_basis, result.b_basis)) {
    throw AuditError("constructed dual basis is not matched");
  }
  return result;
}

std::pair<Subspace, Subspace> linear_dyson_step(const Subspace& S, const Subspace& R,
                                                const FieldElement& e, const FieldElement& r) {
  require_same_tower_inst(S, R);
  if (e.is_zero() || !S.contains(e)) {
    throw PreconditionError("transform pivot must be a nonzero element of S");
  }
  if (!R.contains(r)) throw PreconditionError("transform witness must lie in R");
  if (S.contains(mul(e, r))) throw PreconditionError("transform requires e*r outside S");

  Subspace S1 = sum_spaces(S, scale_space(e, R));
  Subspace R1 = intersect_spaces(R, scale_space(inv(e), S));
  if (S1.dim() + R1.dim() != S.dim() + R.dim()) {
    throw AuditError("transform changed dim S + dim R");
  }
  if (S1.dim() <= S.dim()) throw AuditError("transform failed to grow S");
  if (R.contains_one() && !R1.contains_one()) {
    throw AuditError("transform dropped 1 from R");
  }
  return {std::move(S1), std::move(R1)};
}

LinearTransformTrace linear_stabilize(const Subspace& S0, const Subspace& R0,
                                      const Subspace& A) {
  require_same_tower_inst(S0, R0);
  require_same_tower_inst(S0, A);
  if (S0.is_zero()) throw PreconditionError("stabilize requires a nonzero S");
  if (!A.contains_space(S0)) throw PreconditionError("S must lie inside A");
  if (!R0.contains_one()) throw PreconditionError("R must contain 1");
  if (!A.contains_space(minkowski_span(S0, R0))) {
    throw PreconditionError("the span of S*R must start inside A");
  }

  LinearTransformTrace trace;
  trace.states.push_back({S0, R0, 0});
  while (true) {
    const LinearTransformState& cur = trace.states.back();
    Subspace product = minkowski_span(cur.S, cur.R);
    if (product == cur.S) break;

    bool stepped = false;
    int64_t s_count = cur.S.element_count();
    int64_t r_count = cur.R.element_count();
    for (int64_t ei = 1; ei < s_count && !stepped; ++ei) {
      FieldElement e = cur.S.element_at(ei);
      for (int64_t ri = 1; ri < r_count; ++ri) {
        FieldElement r = cur.R.element_at(ri);
        if (cur.S.contains(mul(e, r))) continue;
        auto [S1, R1] = linear_dyson_step(cur.S, cur.R, e, r);
        if (!product.contains_space(minkowski_span(S1, R1))) {
          throw AuditError("transform enlarged the product span");
        }
        if (!A.contains_space(S1)) throw AuditError("transform left A");
        trace.chosen.emplace_back(e, r);
        trace.states.push_back({std::move(S1), std::move(R1),
                                static_cast<int>(trace.states.size())});
        stepped = true;
        break;
      }
    }
    if (!stepped) throw AuditError("product span exceeds S but no step applies");
    if (static_cast<int>(trace.chosen.size()) > A.dim()) {
      throw AuditError("stabilization failed to halt");
    }
  }
  return trace;
}

bool verify_linear_violation(const LinearInstance& inst, const LinearViolation& violation) {
  const Subspace& S = violation.S;
  const Subspace& R = violation.R;
  if (S.is_zero() || R.is_zero()) return false;
  if (!inst.A.contains_space(S)) return false;
  Subspace b_plus_one = sum_spaces(inst.B, Subspace::span(inst.tower, {one(inst.tower)}));
  if (!b_plus_one.contains_space(R)) return false;
  if (!(minkowski_span(S, R) == S)) return false;
  return S.dim() > inst.B.dim() - intersect_spaces(R, inst.B).dim();
}

namespace {

LinearCharacterizationResult characterization_exhaustive(const LinearInstance& inst,
                                                         int64_t max_subspaces) {
  Subspace bk = direct_sum_with_one(inst.B);
  auto all_S = enumerate_subspaces(inst.A, max_subspaces);
  auto all_R = enumerate_subspaces(bk, max_subspaces);
  for (const auto& S : all_S) {
    if (S.is_zero()) continue;
    for (const auto& R : all_R) {
      if (R.is_zero()) continue;
      if (S.dim() <= inst.B.dim() - intersect_spaces(R, inst.B).dim()) continue;
      if (minkowski_span(S, R) == S) {
        return {false, LinearViolation{S, R}};
      }
    }
  }
  return {true, std::nullopt};
}

LinearCharacterizationResult characterization_subfield(const LinearInstance& inst) {
  Subspace bk = direct_sum_with_one(inst.B);
  auto fields = intermediate_fields(inst.tower);
  for (const auto& field : fields) {
    Subspace R = intersect_spaces(field, bk);

    // The subfield generated by R: the compositum of K(e) over a basis of R,
    // i.e. the intermediate field of degree lcm of the basis degrees.
    int gen_degree = 1;
    for (const auto& e : R.basis_elements()) {
      gen_degree = std::lcm(gen_degree, degree_over_base(e));
    }
    const Subspace* closure = nullptr;
    for (const auto& candidate : fields) {
      if (candidate.dim() == gen_degree) {
        closure = &candidate;
        break;
      }
    }
    if (closure == nullptr) throw AuditError("generated subfield missing from the lattice");

    // Largest closure-stable subspace of A: everything that stays inside A
    // under multiplication by the generated subfield.
    Subspace S = inst.A;
    for (const auto& h : closure->basis_elements()) {
      S = intersect_spaces(S, scale_space(inv(h), inst.A));
    }
    if (!S.is_zero() &&
        S.dim() > inst.B.dim() - intersect_spaces(R, inst.B).dim()) {
      LinearViolation violation{S, R};
      if (!verify_linear_violation(inst, violation)) {
        throw AuditError("subfield strategy produced an invalid violation");
      }
      return {false, std::move(violation)};
    }
  }
  return {true, std::nullopt};
}

LinearCharacterizationResult characterization_frame(const LinearInstance& inst) {
  const ScalarField& K = inst.tower->K;
  int m = inst.dim();

  // One representative per projective point of A, in element order.
  std::vector<FieldElement> points;
  std::set<int64_t> seen;
  for (int64_t idx = 1; idx < inst.A.element_count(); ++idx) {
    FieldElement x = inst.A.element_at(idx);
    if (seen.count(index_of(x))) continue;
    for (int64_t k = 1; k < K.size(); ++k) seen.insert(index_of(scalar_mul(k, x)));
    points.push_back(std::move(x));
  }
  if (points.size() > 4096) throw SizeBoundError("too many projective points");

  int p_count = static_cast<int>(points.size());
  std::vector<int> combo(m);
  std::iota(combo.begin(), combo.end(), 0);
  int64_t frames_checked = 0;
  while (true) {
    std::vector<FieldElement> frame;
    std::vector<std::vector<int64_t>> rows;
    for (int i : combo) {
      frame.push_back(points[i]);
      rows.push_back(points[i].coeffs());
    }
    if (linalg::rank(K, rows) == m) {
      if (++frames_checked > 2000000) throw SizeBoundError("too many frames");
      auto shifted = shifted_intersections(inst, frame);
      std::vector<std::vector<std::vector<int64_t>>> families;
      for (const auto& v : shifted) families.push_back(annihilator(v, inst.B));

      // Rado feasibility: dim of every partial family sum covers its size.
      std::vector<int> violating;
      for (int size = 1; size <= m && violating.empty(); ++size) {
        for (uint32_t mask = 1; mask < (1u << m); ++mask) {
          if (std::popcount(mask) != size) continue;
          std::vector<std::vector<int64_t>> stacked;
          for (int i = 0; i < m; ++i) {
            if (!((mask >> i) & 1)) continue;
            stacked.insert(stacked.end(), families[i].begin(), families[i].end());
          }
          if (linalg::rank(K, std::move(stacked)) < size) {
            for (int i = 0; i < m; ++i) {
              if ((mask >> i) & 1) violating.push_back(i);
            }
            break;
          }
        }
      }
      if (!violating.empty()) {
        // Stabilizing (span of the violating frame part, common shifted
        // intersection + K) always lands on a certified violation.
        Subspace T = inst.B;
        std::vector<FieldElement> gens;
        for (int i : violating) {
          T = intersect_spaces(T, shifted[static_cast<size_t>(i)]);
          gens.push_back(frame[static_cast<size_t>(i)]);
        }
        Subspace S0 = Subspace::span(inst.tower, gens);
        Subspace R0 = sum_spaces(T, Subspace::span(inst.tower, {one(inst.tower)}));
        LinearTransformTrace trace = linear_stabilize(S0, R0, inst.A);
        LinearViolation violation{trace.states.back().S, trace.states.back().R};
        if (!verify_linear_violation(inst, violation)) {
          throw AuditError("frame strategy produced an invalid violation");
        }
        return {false, std::move(violation)};
      }
    }

    // Next combination in lexicographic order.
    int at = m - 1;
    while (at >= 0 && combo[at] == p_count - m + at) --at;
    if (at < 0) break;
    ++combo[at];
    for (int j = at + 1; j < m; ++j) combo[j] = combo[j - 1] + 1;
  }
  return {true, std::nullopt};
}

}  // namespace

LinearCharacterizationResult is_matched_characterization(const LinearInstance& inst,
                                                         LinearStrategy strategy,
                                                         int64_t max_subspaces) {
  if (inst.one_in_B()) {
    throw PreconditionError("the characterization requires 1 outside B");
  }
  switch (strategy) {
    case LinearStrategy::kExhaustive:
      return characterization_exhaustive(inst, max_subspaces);
    case LinearStrategy::kSubfield:
      return characterization_subfield(inst);
    case LinearStrategy::kFrame:
      return characterization_frame(inst);
  }
  throw PreconditionError("unknown characterization strategy");
}

bool is_chowla_subspace(const Subspace& b) {
  if (b.element_count() > (1 << 16)) {
    throw SizeBoundError("subspace too large for the degree scan");
  }
  for (int64_t idx = 1; idx < b.element_count(); ++idx) {
    if (degree_over_base(b.element_at(idx)) < b.dim() + 1) return false;
  }
  return true;
}

bool check_chowla_matching(const LinearInstance& inst) { return is_chowla_subspace(inst.B); }

bool check_self_matched(const Subspace& a) {
  if (a.is_zero()) throw PreconditionError("self matching requires a nonzero subspace");
  return !a.contains_one();
}

LinearPropertyResult has_linear_matching_property(const TowerPtr& tower) {
  if (!tower) throw PreconditionError("matching property requires a tower");
  int n = tower->n;
  if (n == 1) return {true, true, std::nullopt, std::nullopt};
  bool prime = true;
  for (int d = 2; d < n; ++d) {
    if (n % d == 0) {
      prime = false;
      break;
    }
  }
  if (prime) return {true, false, std::nullopt, std::nullopt};

  // Composite degree: pick a generator of the smallest proper subfield and
  // an element outside it; A = K(a) and B = (x, a, ..., a^{m-1}) cannot be
  // matched because S = A, R = (a, ..., a^{m-1}) violates the criterion.
  int m = *min_extension_degree(*tower);
  auto fields = intermediate_fields(tower);
  const Subspace* subfield = nullptr;
  for (const auto& f : fields) {
    if (f.dim() == m) subfield = &f;
  }
  if (subfield == nullptr) throw AuditError("subfield of minimal degree missing");

  std::optional<FieldElement> gen;
  for (int64_t idx = 1; idx < subfield->element_count(); ++idx) {
    FieldElement e = subfield->element_at(idx);
    if (degree_over_base(e) == m) {
      gen = std::move(e);
      break;
    }
  }
  if (!gen) throw AuditError("no generator of the minimal subfield");

  std::optional<FieldElement> outsider;
  for (int64_t idx = 1; idx < tower->size(); ++idx) {
    FieldElement e = element_at(tower, idx);
    if (!subfield->contains(e)) {
      outsider = std::move(e);
      break;
    }
  }
  if (!outsider) throw AuditError("no element outside the minimal subfield");

  Subspace A = power_span(*gen);
  if (!(A == *subfield)) throw AuditError("powers of the generator miss the subfield");
  std::vector<FieldElement> b_gens = {*outsider};
  std::vector<FieldElement> r_gens;
  FieldElement acc = *gen;
  for (int k = 1; k < m; ++k) {
    b_gens.push_back(acc);
    r_gens.push_back(acc);
    acc = mul(acc, *gen);
  }
  Subspace B = Subspace::span(tower, b_gens);
  if (B.dim() != m || B.contains_one()) throw AuditError("counterexample B malformed");

  LinearInstance counterexample(A, B);
  LinearViolation violation{A, Subspace::span(tower, r_gens)};
  if (!verify_linear_violation(counterexample, violation)) {
    throw AuditError("counterexample violation failed verification");
  }
  return {false, false, std::move(counterexample), std::move(violation)};
}

bool check_intermediate_field_condition(const LinearInstance& inst) {
  if (inst.one_in_B()) {
    throw PreconditionError("the condition requires 1 outside B");
  }
  auto fields = intermediate_fields(inst.tower);
  for (const auto& H : fields) {
    if (H.dim() <= 1 || H.dim() >= inst.tower->n) continue;
    int h_in_b = intersect_spaces(H, inst.B).dim();
    // Cosets aH with aH ∩ A = 0 satisfy the bound outright, so only cosets
    // through nonzero elements of A need checking; aH determines the coset.
    std::set<int64_t> seen;
    for (int64_t idx = 1; idx < inst.A.element_count(); ++idx) {
      FieldElement x = inst.A.element_at(idx);
      if (seen.count(index_of(x))) continue;
      Subspace coset = scale_space(x, H);
      for (int64_t j = 1; j < coset.element_count(); ++j) {
        seen.insert(index_of(coset.element_at(j)));
      }
      int in_a = intersect_spaces(coset, inst.A).dim();
      if (in_a + h_in_b >= H.dim() + 1) return false;
    }
  }
  return true;
}

}  // namespace matchable
