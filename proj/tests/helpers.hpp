#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "matchable/group_matching.hpp"
#include "matchable/subspace.hpp"

namespace matchable::testing {

inline GroupElement el(const GroupSpecPtr& spec, std::vector<int64_t> coords) {
  return GroupElement(spec, std::move(coords));
}

// Single-coordinate shorthand for cyclic groups.
inline std::vector<GroupElement> zset(const GroupSpecPtr& spec,
                                      const std::vector<int64_t>& xs) {
  std::vector<GroupElement> out;
  out.reserve(xs.size());
  for (int64_t x : xs) out.emplace_back(spec, std::vector<int64_t>{x});
  return out;
}

inline std::vector<int64_t> exponents(std::vector<GroupElement> elems) {
  std::sort(elems.begin(), elems.end());
  std::vector<int64_t> out;
  out.reserve(elems.size());
  for (const auto& e : elems) out.push_back(e.coords()[0]);
  return out;
}

inline bool is_valid_matching(const MatchInstance& inst, const std::vector<int>& cols) {
  auto a_sorted = inst.a_set();
  std::vector<bool> used(inst.B.size(), false);
  for (size_t i = 0; i < cols.size(); ++i) {
    int j = cols[i];
    if (j < 0 || j >= inst.size() || used[j]) return false;
    used[j] = true;
    if (set_contains(a_sorted, compose(inst.A[i], inst.B[j]))) return false;
  }
  return cols.size() == inst.A.size();
}

// Permanent by explicit permutation enumeration; only for tiny instances.
inline int64_t count_matchings_brute(const MatchInstance& inst) {
  int n = inst.size();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  int64_t total = 0;
  do {
    if (is_valid_matching(inst, perm)) ++total;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace matchable::testing
