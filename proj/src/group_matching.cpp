#include "matchable/group_matching.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

namespace matchable {

namespace {

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  auto mulmod = [](uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
  };
  auto powmod = [&](uint64_t a, uint64_t e, uint64_t m) {
    uint64_t acc = 1;
    a %= m;
    while (e) {
      if (e & 1) acc = mulmod(acc, a, m);
      a = mulmod(a, a, m);
      e >>= 1;
    }
    return acc;
  };
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < r && witness; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) witness = false;
    }
    if (witness) return false;
  }
  return true;
}

struct KuhnState {
  const std::vector<std::vector<bool>>* adj;
  std::vector<int> match_row_of_col;
  std::vector<char> visited;

  bool augment(int row) {
    int n = static_cast<int>(match_row_of_col.size());
    for (int j = 0; j < n; ++j) {
      if (!(*adj)[row][j] || visited[j]) continue;
      visited[j] = 1;
      if (match_row_of_col[j] < 0 || augment(match_row_of_col[j])) {
        match_row_of_col[j] = row;
        return true;
      }
    }
    return false;
  }
};

}  // namespace

MatchInstance::MatchInstance(GroupSpecPtr group_in, std::vector<GroupElement> a,
                             std::vector<GroupElement> b)
    : group(std::move(group_in)), A(std::move(a)), B(std::move(b)) {
  if (!group) throw PreconditionError("instance requires a group spec");
  if (A.empty() || A.size() != B.size()) {
    throw PreconditionError("instance requires equal nonempty sizes");
  }
  if (canonical_set(group, A).size() != A.size()) {
    throw PreconditionError("duplicate elements in A");
  }
  if (canonical_set(group, B).size() != B.size()) {
    throw PreconditionError("duplicate elements in B");
  }
}

bool MatchInstance::identity_in_B() const {
  return std::any_of(B.begin(), B.end(), [](const GroupElement& b) { return b.is_identity(); });
}

std::vector<GroupElement> MatchInstance::a_set() const { return canonical_set(group, A); }
std::vector<GroupElement> MatchInstance::b_set() const { return canonical_set(group, B); }

EdgeSet build_edges(const MatchInstance& inst) {
  int n = inst.size();
  auto a_sorted = inst.a_set();
  EdgeSet edges;
  edges.adjacency.assign(n, std::vector<bool>(n, false));
  edges.degree_a.assign(n, 0);
  edges.degree_b.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!set_contains(a_sorted, compose(inst.A[i], inst.B[j]))) {
        edges.adjacency[i][j] = true;
        ++edges.degree_a[i];
        ++edges.degree_b[j];
      }
    }
  }
  return edges;
}

MatchingResult find_matching(const MatchInstance& inst) {
  int n = inst.size();
  EdgeSet edges = build_edges(inst);
  KuhnState state;
  state.adj = &edges.adjacency;
  state.match_row_of_col.assign(n, -1);
  for (int row = 0; row < n; ++row) {
    state.visited.assign(n, 0);
    if (state.augment(row)) continue;

    // The failed search visited exactly the columns reachable from `row`
    // by alternating paths; those columns' matched rows together with `row`
    // form a set S whose allowed neighborhood is the visited column set,
    // which is one too small.
    HallViolator witness;
    witness.rows.push_back(row);
    for (int j = 0; j < n; ++j) {
      if (state.visited[j]) {
        witness.neighborhood.push_back(j);
        witness.rows.push_back(state.match_row_of_col[j]);
      }
    }
    std::sort(witness.rows.begin(), witness.rows.end());
    auto a_sorted = inst.a_set();
    for (int j = 0; j < n; ++j) {
      bool blocked = true;
      for (int i : witness.rows) {
        if (!set_contains(a_sorted, compose(inst.A[i], inst.B[j]))) {
          blocked = false;
          break;
        }
      }
      if (blocked) witness.blocked.push_back(j);
    }
    MatchingResult result;
    result.exists = false;
    result.witness = std::move(witness);
    return result;
  }
  MatchingResult result;
  result.exists = true;
  std::vector<int> matching(n, -1);
  for (int j = 0; j < n; ++j) matching[state.match_row_of_col[j]] = j;
  result.matching = std::move(matching);
  return result;
}

BigInt count_matchings(const MatchInstance& inst, int max_size) {
  int n = inst.size();
  if (n > max_size) throw SizeBoundError("instance exceeds the counting bound");
  if (n > 32) throw SizeBoundError("counting supports at most 32 rows");
  EdgeSet edges = build_edges(inst);

  // Ryser's formula over column subsets, visited in Gray-code order so each
  // step updates the row sums by a single column.
  std::vector<int64_t> row_sum(n, 0);
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) adj[i][j] = edges.adjacency[i][j] ? 1 : 0;
  }
  BigInt positive = 0, negative = 0;
  uint64_t total = 1ull << n;
  uint64_t gray = 0;
  for (uint64_t k = 1; k < total; ++k) {
    int j = std::countr_zero(k);
    uint64_t next_gray = k ^ (k >> 1);
    bool added = (next_gray >> j) & 1;
    for (int i = 0; i < n; ++i) row_sum[i] += added ? adj[i][j] : -adj[i][j];
    gray = next_gray;
    int bits = std::popcount(gray);
    if (n <= 26) {
      unsigned __int128 prod = 1;
      for (int i = 0; i < n; ++i) {
        prod *= static_cast<unsigned __int128>(row_sum[i]);
        if (prod == 0) break;
      }
      if (prod == 0) continue;
      if ((n - bits) % 2 == 0) {
        positive += BigInt(prod);
      } else {
        negative += BigInt(prod);
      }
    } else {
      BigInt prod = 1;
      for (int i = 0; i < n && prod != 0; ++i) prod *= row_sum[i];
      if (prod == 0) continue;
      if ((n - bits) % 2 == 0) {
        positive += prod;
      } else {
        negative += prod;
      }
    }
  }
  return positive - negative;
}

BigInt factorial(int64_t n) {
  BigInt acc = 1;
  for (int64_t i = 2; i <= n; ++i) acc *= i;
  return acc;
}

BigInt marshall_hall_lower_bound(const MatchInstance& inst) {
  EdgeSet edges = build_edges(inst);
  int min_degree = *std::min_element(edges.degree_b.begin(), edges.degree_b.end());
  if (min_degree == 0 || !find_matching(inst).exists) {
    throw PreconditionError("the lower bound requires a matchable instance");
  }
  return factorial(min_degree);
}

namespace {

CharacterizationResult characterization_exhaustive(const MatchInstance& inst,
                                                   int max_exhaustive) {
  int n = inst.size();
  if (n > max_exhaustive) {
    throw SizeBoundError("instance exceeds the exhaustive characterization bound");
  }
  std::map<GroupElement, int> a_index;
  for (int i = 0; i < n; ++i) a_index.emplace(inst.A[i], i);

  // pool = B in listed order, then the identity.
  std::vector<GroupElement> pool = inst.B;
  pool.push_back(identity(inst.group));
  int pool_size = n + 1;

  // shift[i][r] = index in A of A[i] + pool[r], or -1 when the sum leaves A.
  std::vector<std::vector<int>> shift(n, std::vector<int>(pool_size, -1));
  for (int i = 0; i < n; ++i) {
    for (int r = 0; r < pool_size; ++r) {
      auto it = a_index.find(compose(inst.A[i], pool[r]));
      if (it != a_index.end()) shift[i][r] = it->second;
    }
  }

  // For each S the largest stabilizing R is {r : S + r = S}; since shifting
  // by r preserves cardinality, S + r = S is the same as S + r inside S.
  for (uint32_t mask = 1; mask < (1u << n); ++mask) {
    int blocked_in_b = 0;
    uint32_t stabilizers = 0;
    for (int r = 0; r < pool_size; ++r) {
      bool stable = true;
      for (int i = 0; i < n && stable; ++i) {
        if (!((mask >> i) & 1)) continue;
        int to = shift[i][r];
        stable = to >= 0 && ((mask >> to) & 1);
      }
      if (stable) {
        stabilizers |= (1u << r);
        if (r < n) ++blocked_in_b;
      }
    }
    int s_size = std::popcount(mask);
    if (s_size > n - blocked_in_b) {
      CharacterizationViolation violation;
      for (int i = 0; i < n; ++i) {
        if ((mask >> i) & 1) violation.S.push_back(inst.A[i]);
      }
      for (int r = 0; r < pool_size; ++r) {
        if ((stabilizers >> r) & 1) violation.R.push_back(pool[r]);
      }
      violation.S = canonical_set(inst.group, violation.S);
      violation.R = canonical_set(inst.group, violation.R);
      return {false, std::move(violation)};
    }
  }
  return {true, std::nullopt};
}

CharacterizationResult characterization_reduced(const MatchInstance& inst,
                                                int64_t max_group_order) {
  if (!inst.group->is_finite()) {
    throw PreconditionError("the reduced characterization requires a finite group");
  }
  auto a_sorted = inst.a_set();
  auto b_sorted = inst.b_set();
  std::vector<GroupElement> pool = b_sorted;
  pool.push_back(identity(inst.group));
  pool = canonical_set(inst.group, pool);

  // Only subgroups generated by their own intersection with B + {0} can
  // carry a maximal violating pair; cosets of H fully inside A make up the
  // largest S with S + H = S.
  for (const auto& H : enumerate_subgroups(inst.group, max_group_order)) {
    std::vector<GroupElement> R;
    for (const auto& r : pool) {
      if (H.contains(r)) R.push_back(r);
    }
    Subgroup generated = subgroup_generated(inst.group, R);
    if (generated.elements != H.elements) continue;

    std::set<GroupElement> S;
    for (const auto& a : a_sorted) {
      bool inside = true;
      for (const auto& h : H.elements) {
        if (!set_contains(a_sorted, compose(a, h))) {
          inside = false;
          break;
        }
      }
      if (inside) {
        for (const auto& h : H.elements) S.insert(compose(a, h));
      }
    }
    int64_t b_minus_r = static_cast<int64_t>(b_sorted.size()) -
                        (static_cast<int64_t>(R.size()) - 1);
    if (!S.empty() && static_cast<int64_t>(S.size()) > b_minus_r) {
      CharacterizationViolation violation;
      violation.S.assign(S.begin(), S.end());
      violation.R = std::move(R);
      return {false, std::move(violation)};
    }
  }
  return {true, std::nullopt};
}

}  // namespace

CharacterizationResult characterization_check(const MatchInstance& inst,
                                              CharacterizationStrategy strategy,
                                              int max_exhaustive,
                                              int64_t max_group_order) {
  if (inst.identity_in_B()) {
    throw PreconditionError("the characterization requires the identity to avoid B");
  }
  switch (strategy) {
    case CharacterizationStrategy::kExhaustive:
      return characterization_exhaustive(inst, max_exhaustive);
    case CharacterizationStrategy::kReduced:
      return characterization_reduced(inst, max_group_order);
  }
  throw PreconditionError("unknown characterization strategy");
}

bool check_progression_order_condition(const MatchInstance& inst, int64_t n) {
  if (n < 1) throw PreconditionError("the progression bound must be positive");
  if (inst.identity_in_B()) {
    throw PreconditionError("the condition requires the identity to avoid B");
  }
  if (max_progression_length(inst.A) > n) return false;
  for (const auto& b : inst.B) {
    auto ord = element_order(b);
    if (ord && *ord <= n) return false;
  }
  return true;
}

bool check_chowla_condition(const MatchInstance& inst) {
  return is_chowla_subset(inst.B);
}

bool check_self_matching(const std::vector<GroupElement>& A) {
  if (A.empty()) throw PreconditionError("self matching requires a nonempty set");
  return std::none_of(A.begin(), A.end(),
                      [](const GroupElement& a) { return a.is_identity(); });
}

BigInt sidon_count_bound(const MatchInstance& inst) {
  if (inst.identity_in_B()) {
    throw PreconditionError("the bound requires the identity to avoid B");
  }
  if (!is_sidon(inst.A)) throw PreconditionError("the bound requires A to be sidon");
  return factorial(inst.size() - 1);
}

MatchingPropertyResult has_matching_property(const GroupSpecPtr& spec,
                                             int64_t counterexample_bound) {
  if (!spec) throw PreconditionError("matching property requires a group spec");
  const auto& torsion = spec->torsion();
  if (torsion.empty()) return {true, std::nullopt};
  if (spec->free_rank() == 0 && torsion.size() == 1 &&
      is_prime_u64(static_cast<uint64_t>(torsion[0]))) {
    return {true, std::nullopt};
  }

  // Not torsion-free and not of prime order: a minimal finite subgroup H
  // yields the unmatchable pair A = H, B = (H minus 0) plus one outsider.
  int64_t best_p = 0;
  size_t best_i = 0;
  for (size_t i = 0; i < torsion.size(); ++i) {
    int64_t d = torsion[i];
    int64_t p = d;
    for (int64_t f = 2; f * f <= d; ++f) {
      if (d % f == 0) {
        p = f;
        break;
      }
    }
    if (best_p == 0 || p < best_p) {
      best_p = p;
      best_i = i;
    }
  }
  if (best_p + 1 > counterexample_bound) return {false, std::nullopt};

  std::vector<int64_t> gen_coords(spec->dimensions(), 0);
  gen_coords[spec->free_rank() + best_i] = torsion[best_i] / best_p;
  GroupElement gen(spec, gen_coords);
  Subgroup H = subgroup_generated(spec, {gen});

  GroupElement outsider = identity(spec);
  if (spec->free_rank() > 0) {
    std::vector<int64_t> coords(spec->dimensions(), 0);
    coords[0] = 1;
    outsider = GroupElement(spec, coords);
  } else {
    int64_t order = *spec->order();
    for (int64_t i = 1; i < order; ++i) {
      GroupElement candidate = element_at(spec, i);
      if (!H.contains(candidate)) {
        outsider = candidate;
        break;
      }
    }
  }
  if (H.contains(outsider)) throw AuditError("no element outside the minimal subgroup");

  std::vector<GroupElement> A = H.elements;
  std::vector<GroupElement> B;
  for (const auto& h : H.elements) {
    if (!h.is_identity()) B.push_back(h);
  }
  B.push_back(outsider);
  MatchInstance counterexample(spec, std::move(A), std::move(B));
  if (find_matching(counterexample).exists) {
    throw AuditError("constructed counterexample is matchable");
  }
  return {false, std::move(counterexample)};
}

bool check_coset_intersection_condition(const MatchInstance& inst,
                                        int64_t max_group_order) {
  if (inst.identity_in_B()) {
    throw PreconditionError("the condition requires the identity to avoid B");
  }
  if (!inst.group->is_finite()) {
    throw PreconditionError("the coset condition requires a finite group");
  }
  int64_t order = *inst.group->order();
  auto a_sorted = inst.a_set();
  auto b_sorted = inst.b_set();
  for (const auto& H : enumerate_subgroups(inst.group, max_group_order)) {
    int64_t h_size = H.size();
    if (h_size <= 1 || h_size >= order) continue;
    int64_t h_in_b = 0;
    for (const auto& h : H.elements) {
      if (set_contains(b_sorted, h)) ++h_in_b;
    }
    // Cosets disjoint from A satisfy the bound outright, so only cosets of
    // elements of A need checking.
    std::set<GroupElement> seen;
    for (const auto& a : a_sorted) {
      if (seen.count(a)) continue;
      int64_t coset_in_a = 0;
      for (const auto& h : H.elements) {
        GroupElement member = compose(a, h);
        seen.insert(member);
        if (set_contains(a_sorted, member)) ++coset_in_a;
      }
      if (coset_in_a + h_in_b >= h_size + 1) return false;
    }
  }
  return true;
}

}  // namespace matchable
