#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "matchable/group_matching.hpp"

namespace matchable {

// One state of the set transform.  S and R are kept sorted; step counts the
// transforms applied since the initial pair.
struct TransformState {
  std::vector<GroupElement> S;
  std::vector<GroupElement> R;
  int step = 0;
};

struct TransformTrace {
  std::vector<TransformState> states;  // states[0] is the initial pair
  std::vector<std::pair<GroupElement, GroupElement>> chosen;  // (e, r) per step
};

// Applies one transform: S1 = S ∪ (e + R), R1 = R ∩ (S - e).  Requires
// e in S, r in R and e + r outside S, which forces |S1| > |S|.  The
// invariants |S1| + |R1| = |S| + |R| and preservation of the identity
// inside R are checked and raise AuditError on failure.
TransformState e_transform_step(const TransformState& state, const GroupElement& e,
                                const GroupElement& r);

// Iterates transforms with the lexicographically first applicable pair
// (e ordered by position in A, r by position in B with the identity last)
// until S + R = S.  Requires S0 a nonempty subset of A with S0 + R0 inside A,
// and R0 a subset of B together with the identity.
TransformTrace stabilize(const MatchInstance& inst, std::vector<GroupElement> S0,
                         std::vector<GroupElement> R0);

// Transport-ready witness of unmatchability: S_m + R_m = S_m with
// |S_m| > |B \ R_m|, tied to the instance by a content hash.
struct ViolationCertificate {
  std::vector<GroupElement> S_m;
  std::vector<GroupElement> R_m;
  uint64_t instance_hash = 0;
};

// Extracts a certificate from an unmatchable instance by stabilizing the
// Hall violator of the failed matching search.  Matchable instances are
// rejected with PreconditionError.
ViolationCertificate certificate_for_unmatched(const MatchInstance& inst);

// Replays every certificate condition against the instance; false when any
// fails (including a hash mismatch).
bool verify_certificate(const MatchInstance& inst, const ViolationCertificate& cert);

// FNV-1a over the group spec and both element lists in listed order.
uint64_t instance_digest(const MatchInstance& inst);

}  // namespace matchable
