#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "matchable/subspace.hpp"

namespace matchable {

// A pair of equal-dimension nonzero K-subspaces of a common tower.
struct LinearInstance {
  TowerPtr tower;
  Subspace A;
  Subspace B;

  LinearInstance(Subspace a, Subspace b);

  int dim() const { return A.dim(); }
  bool one_in_B() const { return B.contains_one(); }
};

// Free transversal of a family of coordinate subspaces: independent vectors
// x_i, one per family member.  When none exists, `violating` holds the first
// index set J (by size, then bitmask) with dim(sum of W_i over J) < |J|.
struct TransversalResult {
  bool found = false;
  std::vector<std::vector<int64_t>> transversal;
  std::vector<int> violating;
};

TransversalResult free_transversal(const ScalarField& K,
                                   const std::vector<std::vector<std::vector<int64_t>>>& families,
                                   int width);
TransversalResult free_transversal(const std::vector<Subspace>& family);

// Matched-basis test: a_i^{-1}A ∩ B inside span(b_j : j != i) for every i.
bool is_matched_basis(const LinearInstance& inst, const std::vector<FieldElement>& a_basis,
                      const std::vector<FieldElement>& b_basis);

struct MatchedBasisResult {
  bool matched = false;
  std::vector<FieldElement> a_basis;
  std::vector<FieldElement> b_basis;
  std::optional<std::vector<int>> rado_witness;
};

// Builds the annihilator family W_i of a_i^{-1}A ∩ B inside B*, finds a free
// transversal and returns its dual basis; a Rado failure is reported as the
// violating index set, not an error.
MatchedBasisResult construct_matched_basis(const LinearInstance& inst,
                                           const std::vector<FieldElement>& a_basis);

// One linear transform step: (S + eR, R ∩ Se^{-1}).  Requires nonzero e in
// S, r in R with e*r outside S.  Dimension-sum conservation, retention of 1
// in R, and strict growth of S are audited.
std::pair<Subspace, Subspace> linear_dyson_step(const Subspace& S, const Subspace& R,
                                                const FieldElement& e, const FieldElement& r);

struct LinearTransformState {
  Subspace S;
  Subspace R;
  int step = 0;
};

struct LinearTransformTrace {
  std::vector<LinearTransformState> states;
  std::vector<std::pair<FieldElement, FieldElement>> chosen;
};

// Repeats transform steps with the first applicable (e, r) in element-index
// order until ⟨SR⟩ = S.  Requires nonzero S0 inside A, 1 in R0 and
// ⟨S0 R0⟩ inside A.
LinearTransformTrace linear_stabilize(const Subspace& S0, const Subspace& R0,
                                      const Subspace& A);

// Witness against matchedness: nonzero S ⊆ A, R ⊆ B⊕K with ⟨SR⟩ = S and
// dim S > dim B - dim(R ∩ B).
struct LinearViolation {
  Subspace S;
  Subspace R;
};

struct LinearCharacterizationResult {
  bool matched = false;
  std::optional<LinearViolation> violation;
};

enum class LinearStrategy {
  kExhaustive,  // all nonzero subspace pairs (S, R)
  kSubfield,    // one maximal pair per intermediate field
  kFrame,       // Rado feasibility over all projective frames spanning A
};

LinearCharacterizationResult is_matched_characterization(const LinearInstance& inst,
                                                         LinearStrategy strategy,
                                                         int64_t max_subspaces = 200000);

bool verify_linear_violation(const LinearInstance& inst, const LinearViolation& violation);

// Every nonzero element of B has degree over K at least dim B + 1.
bool is_chowla_subspace(const Subspace& b);

// Sufficient condition for matchedness (never contradicts the verdict).
bool check_chowla_matching(const LinearInstance& inst);

// A is matched to itself exactly when 1 lies outside A.
bool check_self_matched(const Subspace& a);

// Whether every valid instance over this tower is matched: true exactly for
// prime n (n = 1 vacuously, flagged).  Composite towers come with the
// standard counterexample pair and its violation.
struct LinearPropertyResult {
  bool has_property = false;
  bool vacuous = false;
  std::optional<LinearInstance> counterexample;
  std::optional<LinearViolation> violation;
};

LinearPropertyResult has_linear_matching_property(const TowerPtr& tower);

// Sufficient condition: for every intermediate field H with 1 < dim H < n
// and every coset aH, dim(aH ∩ A) + dim(H ∩ B) < dim H + 1.
bool check_intermediate_field_condition(const LinearInstance& inst);

}  // namespace matchable
