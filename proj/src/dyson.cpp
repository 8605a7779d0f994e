#include "matchable/dyson.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace matchable {

namespace {

std::vector<GroupElement> shifted(const GroupElement& e, const std::vector<GroupElement>& R) {
  std::vector<GroupElement> out;
  out.reserve(R.size());
  for (const auto& r : R) out.push_back(compose(e, r));
  std::sort(out.begin(), out.end());
  return out;
}

bool contains_identity(const std::vector<GroupElement>& set) {
  return std::any_of(set.begin(), set.end(),
                     [](const GroupElement& x) { return x.is_identity(); });
}

}  // namespace

TransformState e_transform_step(const TransformState& state, const GroupElement& e,
                                const GroupElement& r) {
  const auto& S = state.S;
  const auto& R = state.R;
  if (!set_contains(S, e)) throw PreconditionError("transform pivot must lie in S");
  if (!set_contains(R, r)) throw PreconditionError("transform witness must lie in R");
  if (set_contains(S, compose(e, r))) {
    throw PreconditionError("transform requires e + r outside S");
  }

  TransformState next;
  next.step = state.step + 1;
  auto e_plus_R = shifted(e, R);
  std::set_union(S.begin(), S.end(), e_plus_R.begin(), e_plus_R.end(),
                 std::back_inserter(next.S));
  auto S_minus_e = shifted(inverse(e), S);
  std::set_intersection(R.begin(), R.end(), S_minus_e.begin(), S_minus_e.end(),
                        std::back_inserter(next.R));

  if (next.S.size() + next.R.size() != S.size() + R.size()) {
    throw AuditError("transform changed |S| + |R|");
  }
  if (next.S.size() <= S.size()) throw AuditError("transform failed to grow S");
  if (contains_identity(R) && !contains_identity(next.R)) {
    throw AuditError("transform dropped the identity from R");
  }
  return next;
}

TransformTrace stabilize(const MatchInstance& inst, std::vector<GroupElement> S0,
                         std::vector<GroupElement> R0) {
  auto a_sorted = inst.a_set();
  S0 = canonical_set(inst.group, std::move(S0));
  R0 = canonical_set(inst.group, std::move(R0));
  if (S0.empty()) throw PreconditionError("stabilize requires a nonempty S");
  for (const auto& s : S0) {
    if (!set_contains(a_sorted, s)) throw PreconditionError("S must be a subset of A");
  }
  if (!contains_identity(R0)) throw PreconditionError("R must contain the identity");
  auto b_sorted = inst.b_set();
  for (const auto& r : R0) {
    if (!r.is_identity() && !set_contains(b_sorted, r)) {
      throw PreconditionError("R must lie inside B plus the identity");
    }
  }
  for (const auto& s : S0) {
    for (const auto& r : R0) {
      if (!set_contains(a_sorted, compose(s, r))) {
        throw PreconditionError("S + R must start inside A");
      }
    }
  }

  // Pivot order: by position in the instance's A list; witness order: by
  // position in B, identity last.
  std::map<GroupElement, int> priority;
  for (int i = 0; i < inst.size(); ++i) priority.emplace(inst.A[i], i);
  std::vector<GroupElement> witness_order = inst.B;
  witness_order.push_back(identity(inst.group));

  TransformTrace trace;
  trace.states.push_back({S0, R0, 0});
  size_t max_steps = a_sorted.size() + 1;
  while (true) {
    const TransformState& cur = trace.states.back();
    std::vector<GroupElement> pivots = cur.S;
    std::sort(pivots.begin(), pivots.end(),
              [&](const GroupElement& x, const GroupElement& y) {
                return priority.at(x) < priority.at(y);
              });
    bool stepped = false;
    for (const auto& e : pivots) {
      for (const auto& r : witness_order) {
        if (!set_contains(cur.R, r)) continue;
        if (set_contains(cur.S, compose(e, r))) continue;
        TransformState next = e_transform_step(cur, e, r);
        for (const auto& s : next.S) {
          for (const auto& rr : next.R) {
            if (!set_contains(a_sorted, compose(s, rr))) {
              throw AuditError("transform left A during stabilization");
            }
          }
        }
        trace.chosen.emplace_back(e, r);
        trace.states.push_back(std::move(next));
        stepped = true;
        break;
      }
      if (stepped) break;
    }
    if (!stepped) break;
    if (trace.states.size() > max_steps) throw AuditError("stabilization failed to halt");
  }
  return trace;
}

uint64_t instance_digest(const MatchInstance& inst) {
  uint64_t hash = 0xcbf29ce484222325ull;
  auto feed_byte = [&](unsigned char b) {
    hash ^= b;
    hash *= 0x100000001b3ull;
  };
  auto feed_i64 = [&](int64_t v) {
    auto u = static_cast<uint64_t>(v);
    for (int i = 0; i < 8; ++i) feed_byte(static_cast<unsigned char>((u >> (8 * i)) & 0xff));
  };
  auto feed_tag = [&](char c) { feed_byte(static_cast<unsigned char>(c)); };

  feed_tag('g');
  feed_i64(inst.group->free_rank());
  for (int64_t d : inst.group->torsion()) feed_i64(d);
  feed_tag('A');
  for (const auto& a : inst.A) {
    for (int64_t c : a.coords()) feed_i64(c);
  }
  feed_tag('B');
  for (const auto& b : inst.B) {
    for (int64_t c : b.coords()) feed_i64(c);
  }
  return hash;
}

ViolationCertificate certificate_for_unmatched(const MatchInstance& inst) {
  if (inst.identity_in_B()) {
    throw PreconditionError("certificates require the identity outside B");
  }
  MatchingResult result = find_matching(inst);
  if (result.exists) throw PreconditionError("instance is matchable, no certificate exists");
  const HallViolator& witness = *result.witness;

  std::vector<GroupElement> S0;
  for (int i : witness.rows) S0.push_back(inst.A[i]);
  std::vector<GroupElement> R0;
  for (int j : witness.blocked) R0.push_back(inst.B[j]);
  R0.push_back(identity(inst.group));

  TransformTrace trace = stabilize(inst, std::move(S0), std::move(R0));
  ViolationCertificate cert;
  cert.S_m = trace.states.back().S;
  cert.R_m = trace.states.back().R;
  cert.instance_hash = instance_digest(inst);
  if (!verify_certificate(inst, cert)) {
    throw AuditError("stabilization produced an invalid certificate");
  }
  return cert;
}

bool verify_certificate(const MatchInstance& inst, const ViolationCertificate& cert) {
  if (cert.instance_hash != instance_digest(inst)) return false;
  if (cert.S_m.empty()) return false;
  auto a_sorted = inst.a_set();
  auto b_sorted = inst.b_set();
  auto S = canonical_set(inst.group, cert.S_m);
  auto R = canonical_set(inst.group, cert.R_m);
  if (S.size() != cert.S_m.size() || R.size() != cert.R_m.size()) return false;
  for (const auto& s : S) {
    if (!set_contains(a_sorted, s)) return false;
  }
  int64_t r_in_b = 0;
  for (const auto& r : R) {
    if (set_contains(b_sorted, r)) {
      ++r_in_b;
    } else if (!r.is_identity()) {
      return false;
    }
  }
  if (R.empty()) return false;
  if (set_product(S, R) != S) return false;
  int64_t b_minus_r = static_cast<int64_t>(b_sorted.size()) - r_in_b;
  return static_cast<int64_t>(S.size()) > b_minus_r;
}

}  // namespace matchable
