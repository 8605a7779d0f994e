#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <vector>

#include "matchable/group.hpp"

namespace matchable {

using BigInt = boost::multiprecision::cpp_int;

// An instance of the matching problem: equal-size finite subsets A, B of a
// common abelian group, both in a fixed listed order.
struct MatchInstance {
  GroupSpecPtr group;
  std::vector<GroupElement> A;
  std::vector<GroupElement> B;

  MatchInstance(GroupSpecPtr group, std::vector<GroupElement> a, std::vector<GroupElement> b);

  int size() const { return static_cast<int>(A.size()); }
  bool identity_in_B() const;
  // Sorted copies, used by the set-level operations.
  std::vector<GroupElement> a_set() const;
  std::vector<GroupElement> b_set() const;
};

// adjacency[i][j] is true when A[i] + B[j] lies outside A, i.e. mapping
// A[i] to B[j] is allowed.
struct EdgeSet {
  std::vector<std::vector<bool>> adjacency;
  std::vector<int> degree_a;
  std::vector<int> degree_b;
};

EdgeSet build_edges(const MatchInstance& inst);

// Witness that no perfect matching exists: a set S of row indices whose
// allowed neighborhood is smaller than S.  U lists the columns j with
// S + B[j] contained in A (the forbidden columns for every row of S).
struct HallViolator {
  std::vector<int> rows;          // indices into A
  std::vector<int> neighborhood;  // indices into B, the allowed columns of S
  std::vector<int> blocked;       // indices into B with S + b inside A
};

struct MatchingResult {
  bool exists = false;
  std::optional<std::vector<int>> matching;  // matching[i] = column for row i
  std::optional<HallViolator> witness;
};

// Deterministic augmenting-path search; rows and columns are tried in
// increasing index order, so the output is a pure function of the instance.
MatchingResult find_matching(const MatchInstance& inst);

// Permanent of the adjacency matrix: the exact number of perfect matchings.
// Throws SizeBoundError when the instance is larger than max_size.
BigInt count_matchings(const MatchInstance& inst, int max_size = 20);

// (d)! where d is the minimum allowed-column degree; valid as a lower bound
// on the matching count whenever a matching exists.
BigInt marshall_hall_lower_bound(const MatchInstance& inst);

// A pair witnessing failure of the subset-product characterization:
// S + R = S (as sets) with |S| > |B \ R|.
struct CharacterizationViolation {
  std::vector<GroupElement> S;  // nonempty subset of A, sorted
  std::vector<GroupElement> R;  // subset of B together with the identity, sorted
};

struct CharacterizationResult {
  bool holds = false;  // true means a matching exists
  std::optional<CharacterizationViolation> violation;
};

enum class CharacterizationStrategy {
  kExhaustive,  // scan every nonempty S with its maximal stabilizing R
  kReduced,     // scan subgroups generated by their intersection with B + {0}
};

// Decides matchability through the subset-product criterion.  Requires the
// identity not to lie in B.  The exhaustive strategy is bounded by
// max_exhaustive rows; the reduced strategy needs a finite group of order at
// most max_group_order.
CharacterizationResult characterization_check(const MatchInstance& inst,
                                              CharacterizationStrategy strategy,
                                              int max_exhaustive = 14,
                                              int64_t max_group_order = 512);

// Sufficient condition: A has no progression longer than n and every element
// of B has order greater than n.  Requires the identity not to lie in B.
bool check_progression_order_condition(const MatchInstance& inst, int64_t n);

// Sufficient condition: every element of B has order greater than |B|.
bool check_chowla_condition(const MatchInstance& inst);

// A is matchable to itself exactly when the identity is not in A.
bool check_self_matching(const std::vector<GroupElement>& A);

// (|A| - 1)! lower bound, valid when A is sidon and the identity is not in B.
BigInt sidon_count_bound(const MatchInstance& inst);

// Whether every valid instance over this group is matchable.  This holds
// exactly when the group is torsion-free or cyclic of prime order; otherwise
// a concrete unmatchable instance is produced for finite groups within the
// bound.
struct MatchingPropertyResult {
  bool has_property = false;
  std::optional<MatchInstance> counterexample;
};

MatchingPropertyResult has_matching_property(const GroupSpecPtr& spec,
                                             int64_t counterexample_bound = 512);

// Sufficient condition over finite groups: for every nontrivial proper
// subgroup H and every coset a + H, |(a + H) ∩ A| + |H ∩ B| < |H| + 1.
bool check_coset_intersection_condition(const MatchInstance& inst,
                                        int64_t max_group_order = 512);

BigInt factorial(int64_t n);

}  // namespace matchable
