#include "matchable/group.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

namespace matchable {

namespace {

void require_same_spec(const GroupElement& x, const GroupElement& y) {
  if (x.spec() == y.spec()) return;
  if (x.spec() && y.spec() && *x.spec() == *y.spec()) return;
  throw SpecMismatchError("elements belong to different groups");
}

int64_t smallest_prime_factor(int64_t n) {
  for (int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) return p;
  }
  return n;
}

}  // namespace

GroupSpec::GroupSpec(int free_rank, std::vector<int64_t> torsion)
    : free_rank_(free_rank), torsion_(std::move(torsion)) {
  if (free_rank_ < 0) throw PreconditionError("free rank must be nonnegative");
  for (int64_t d : torsion_) {
    if (d < 2) throw PreconditionError("torsion orders must be at least 2");
  }
}

std::optional<int64_t> GroupSpec::order() const {
  if (free_rank_ > 0) return std::nullopt;
  __int128 n = 1;
  for (int64_t d : torsion_) {
    n *= d;
    if (n > (static_cast<__int128>(1) << 62)) {
      throw SizeBoundError("group order exceeds 2^62");
    }
  }
  return static_cast<int64_t>(n);
}

GroupSpecPtr make_group(int free_rank, std::vector<int64_t> torsion) {
  return std::make_shared<const GroupSpec>(free_rank, std::move(torsion));
}

GroupElement::GroupElement(GroupSpecPtr spec, std::vector<int64_t> coords)
    : spec_(std::move(spec)), coords_(std::move(coords)) {
  if (!spec_) throw PreconditionError("element requires a group spec");
  if (coords_.size() != static_cast<size_t>(spec_->dimensions())) {
    throw SpecMismatchError("coordinate count does not match the group spec");
  }
  const auto& torsion = spec_->torsion();
  size_t base = spec_->free_rank();
  for (size_t i = 0; i < torsion.size(); ++i) {
    int64_t d = torsion[i];
    coords_[base + i] = ((coords_[base + i] % d) + d) % d;
  }
}

bool GroupElement::is_identity() const {
  return std::all_of(coords_.begin(), coords_.end(), [](int64_t c) { return c == 0; });
}

GroupElement identity(const GroupSpecPtr& spec) {
  if (!spec) throw PreconditionError("identity requires a group spec");
  return GroupElement(spec, std::vector<int64_t>(spec->dimensions(), 0));
}

GroupElement element_at(const GroupSpecPtr& spec, int64_t index) {
  if (!spec || !spec->is_finite()) {
    throw PreconditionError("element enumeration requires a finite group");
  }
  int64_t order = *spec->order();
  if (index < 0 || index >= order) throw PreconditionError("element index out of range");
  const auto& torsion = spec->torsion();
  std::vector<int64_t> coords(torsion.size(), 0);
  for (size_t i = torsion.size(); i-- > 0;) {
    coords[i] = index % torsion[i];
    index /= torsion[i];
  }
  return GroupElement(spec, std::move(coords));
}

int64_t index_of(const GroupElement& x) {
  const auto& spec = x.spec();
  if (!spec->is_finite()) throw PreconditionError("element index requires a finite group");
  const auto& torsion = spec->torsion();
  int64_t index = 0;
  for (size_t i = 0; i < torsion.size(); ++i) {
    index = index * torsion[i] + x.coords()[i];
  }
  return index;
}

GroupElement compose(const GroupElement& x, const GroupElement& y) {
  require_same_spec(x, y);
  std::vector<int64_t> coords(x.coords());
  for (size_t i = 0; i < coords.size(); ++i) coords[i] += y.coords()[i];
  return GroupElement(x.spec(), std::move(coords));
}

GroupElement inverse(const GroupElement& x) {
  std::vector<int64_t> coords(x.coords());
  for (auto& c : coords) c = -c;
  return GroupElement(x.spec(), std::move(coords));
}

GroupElement power(const GroupElement& x, int64_t k) {
  GroupElement base = k < 0 ? inverse(x) : x;
  uint64_t e = k < 0 ? static_cast<uint64_t>(-(k + 1)) + 1 : static_cast<uint64_t>(k);
  GroupElement acc = identity(x.spec());
  while (e > 0) {
    if (e & 1) acc = compose(acc, base);
    e >>= 1;
    if (e > 0) base = compose(base, base);
  }
  return acc;
}

std::optional<int64_t> element_order(const GroupElement& x) {
  const auto& spec = x.spec();
  for (int i = 0; i < spec->free_rank(); ++i) {
    if (x.coords()[i] != 0) return std::nullopt;
  }
  int64_t ord = 1;
  const auto& torsion = spec->torsion();
  size_t base = spec->free_rank();
  for (size_t i = 0; i < torsion.size(); ++i) {
    int64_t c = x.coords()[base + i];
    int64_t component = torsion[i] / std::gcd(torsion[i], c);
    ord = std::lcm(ord, component);
  }
  return ord;
}

int64_t Subgroup::size() const {
  if (!finite) throw PreconditionError("subgroup is not explicitly enumerated");
  return static_cast<int64_t>(elements.size());
}

namespace {

// Membership in the subgroup generated by `generators`: the subgroup is the
// image of the integer lattice spanned by the generator coordinate vectors
// together with d_i * e_i for each torsion coordinate.  Echelonize that
// lattice over Z and decide membership by forward substitution.
bool lattice_contains(const GroupSpecPtr& spec,
                      const std::vector<GroupElement>& generators,
                      const GroupElement& x) {
  size_t dims = static_cast<size_t>(spec->dimensions());
  std::vector<std::vector<int64_t>> rows;
  for (const auto& g : generators) rows.push_back(g.coords());
  size_t base = spec->free_rank();
  const auto& torsion = spec->torsion();
  for (size_t i = 0; i < torsion.size(); ++i) {
    std::vector<int64_t> r(dims, 0);
    r[base + i] = torsion[i];
    rows.push_back(r);
  }
  std::vector<std::pair<size_t, size_t>> pivots;
  size_t pivot_row = 0;
  for (size_t col = 0; col < dims && pivot_row < rows.size(); ++col) {
    while (true) {
      size_t best = rows.size();
      for (size_t r = pivot_row; r < rows.size(); ++r) {
        if (rows[r][col] != 0 &&
            (best == rows.size() || std::abs(rows[r][col]) < std::abs(rows[best][col]))) {
          best = r;
        }
      }
      if (best == rows.size()) break;
      std::swap(rows[pivot_row], rows[best]);
      bool cleared = true;
      for (size_t r = pivot_row + 1; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        int64_t q = rows[r][col] / rows[pivot_row][col];
        for (size_t c = col; c < dims; ++c) rows[r][c] -= q * rows[pivot_row][c];
        if (rows[r][col] != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (rows[pivot_row][col] != 0) {
      pivots.emplace_back(pivot_row, col);
      ++pivot_row;
    }
  }
  std::vector<int64_t> v = x.coords();
  for (auto [r, c] : pivots) {
    if (v[c] % rows[r][c] != 0) return false;
    int64_t q = v[c] / rows[r][c];
    for (size_t j = c; j < dims; ++j) v[j] -= q * rows[r][j];
  }
  return std::all_of(v.begin(), v.end(), [](int64_t t) { return t == 0; });
}

}  // namespace

bool Subgroup::contains(const GroupElement& x) const {
  if (finite) return set_contains(elements, x);
  require_same_spec(x, generators.front());
  return lattice_contains(x.spec(), generators, x);
}

Subgroup subgroup_generated(const GroupSpecPtr& spec,
                            const std::vector<GroupElement>& generators) {
  if (!spec) throw PreconditionError("subgroup requires a group spec");
  for (const auto& g : generators) require_same_spec(g, identity(spec));
  Subgroup result;
  result.generators = generators;
  for (const auto& g : generators) {
    if (!element_order(g)) return result;  // infinite subgroup, no element list
  }
  constexpr size_t kMaxElements = 1u << 20;
  std::set<GroupElement> closure;
  closure.insert(identity(spec));
  std::queue<GroupElement> pending;
  pending.push(identity(spec));
  while (!pending.empty()) {
    GroupElement cur = pending.front();
    pending.pop();
    for (const auto& g : generators) {
      GroupElement next = compose(cur, g);
      if (closure.insert(next).second) {
        if (closure.size() > kMaxElements) {
          throw SizeBoundError("subgroup closure exceeds 2^20 elements");
        }
        pending.push(next);
      }
    }
  }
  result.elements.assign(closure.begin(), closure.end());
  result.finite = true;
  return result;
}

bool is_union_of_cosets(const std::vector<GroupElement>& S, const Subgroup& H) {
  if (!H.finite) throw PreconditionError("coset test requires an enumerated subgroup");
  if (S.empty()) return true;
  auto sorted = canonical_set(S.front().spec(), S);
  for (const auto& a : sorted) {
    for (const auto& h : H.elements) {
      if (!set_contains(sorted, compose(a, h))) return false;
    }
  }
  return true;
}

std::vector<GroupElement> set_product(const std::vector<GroupElement>& S,
                                      const std::vector<GroupElement>& R) {
  if (S.empty() || R.empty()) throw PreconditionError("set product requires nonempty sets");
  std::set<GroupElement> out;
  for (const auto& s : S) {
    for (const auto& r : R) out.insert(compose(s, r));
  }
  return {out.begin(), out.end()};
}

int64_t max_progression_length(const std::vector<GroupElement>& A) {
  if (A.empty()) throw PreconditionError("progression length requires a nonempty set");
  auto sorted = canonical_set(A.front().spec(), A);
  // A progression of length >= 2 has its step in the difference set of A.
  std::set<GroupElement> steps;
  for (const auto& a : sorted) {
    for (const auto& b : sorted) {
      if (!(a == b)) steps.insert(compose(a, inverse(b)));
    }
  }
  int64_t best = 1;
  for (const auto& x : steps) {
    auto ord = element_order(x);
    for (const auto& a : sorted) {
      int64_t len = 1;
      GroupElement cur = compose(a, x);
      while ((!ord || len < *ord) && set_contains(sorted, cur)) {
        ++len;
        cur = compose(cur, x);
      }
      best = std::max(best, len);
    }
  }
  return best;
}

bool is_sidon(const std::vector<GroupElement>& A) {
  if (A.empty()) throw PreconditionError("sidon test requires a nonempty set");
  auto sorted = canonical_set(A.front().spec(), A);
  std::set<GroupElement> sums;
  for (size_t i = 0; i < sorted.size(); ++i) {
    for (size_t j = i; j < sorted.size(); ++j) {
      if (!sums.insert(compose(sorted[i], sorted[j])).second) return false;
    }
  }
  return true;
}

bool is_chowla_subset(const std::vector<GroupElement>& B) {
  if (B.empty()) throw PreconditionError("chowla test requires a nonempty set");
  auto sorted = canonical_set(B.front().spec(), B);
  int64_t n = static_cast<int64_t>(sorted.size());
  for (const auto& b : sorted) {
    auto ord = element_order(b);
    if (ord && *ord <= n) return false;
  }
  return true;
}

std::optional<int64_t> min_nontrivial_subgroup_size(const GroupSpec& spec) {
  const auto& torsion = spec.torsion();
  if (torsion.empty()) return std::nullopt;
  int64_t best = smallest_prime_factor(torsion.front());
  for (size_t i = 1; i < torsion.size(); ++i) {
    best = std::min(best, smallest_prime_factor(torsion[i]));
  }
  return best;
}

std::vector<Subgroup> enumerate_subgroups(const GroupSpecPtr& spec, int64_t max_order) {
  if (!spec || !spec->is_finite()) {
    throw PreconditionError("subgroup enumeration requires a finite group");
  }
  int64_t n = *spec->order();
  if (n > max_order) throw SizeBoundError("group order exceeds the enumeration bound");
  constexpr size_t kMaxSubgroups = 200000;

  // Index-space Cayley table keeps the closure loops cheap.
  std::vector<GroupElement> elems;
  elems.reserve(n);
  for (int64_t i = 0; i < n; ++i) elems.push_back(element_at(spec, i));
  std::vector<std::vector<int32_t>> add(n, std::vector<int32_t>(n));
  for (int64_t i = 0; i < n; ++i) {
    for (int64_t j = 0; j < n; ++j) {
      add[i][j] = static_cast<int32_t>(index_of(compose(elems[i], elems[j])));
    }
  }

  struct Node {
    std::vector<int32_t> elements;  // sorted indices
    std::vector<int32_t> generators;
  };
  std::set<std::vector<int32_t>> seen;
  std::vector<Node> nodes;
  std::queue<size_t> pending;
  nodes.push_back({{0}, {}});
  seen.insert(nodes.back().elements);
  pending.push(0);

  while (!pending.empty()) {
    size_t at = pending.front();
    pending.pop();
    Node node = nodes[at];
    std::set<int32_t> base(node.elements.begin(), node.elements.end());
    for (int32_t g = 1; g < n; ++g) {
      if (base.count(g)) continue;
      // <H, g> is the union of the cosets H, H+g, H+2g, ... until kg lands in H.
      std::set<int32_t> closure = base;
      int32_t kg = g;
      while (!base.count(kg)) {
        for (int32_t h : node.elements) closure.insert(add[h][kg]);
        kg = add[kg][g];
      }
      std::vector<int32_t> key(closure.begin(), closure.end());
      if (seen.insert(key).second) {
        if (seen.size() > kMaxSubgroups) {
          throw SizeBoundError("subgroup lattice exceeds the enumeration bound");
        }
        auto gens = node.generators;
        gens.push_back(g);
        nodes.push_back({std::move(key), std::move(gens)});
        pending.push(nodes.size() - 1);
      }
    }
  }

  std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) {
    if (a.elements.size() != b.elements.size()) return a.elements.size() < b.elements.size();
    return a.elements < b.elements;
  });
  std::vector<Subgroup> result;
  result.reserve(nodes.size());
  for (const auto& node : nodes) {
    Subgroup sub;
    for (int32_t g : node.generators) sub.generators.push_back(elems[g]);
    if (sub.generators.empty()) sub.generators.push_back(elems[0]);
    for (int32_t e : node.elements) sub.elements.push_back(elems[e]);
    sub.finite = true;
    result.push_back(std::move(sub));
  }
  return result;
}

std::vector<GroupElement> canonical_set(const GroupSpecPtr& spec,
                                        std::vector<GroupElement> elems) {
  if (!spec) throw PreconditionError("canonical set requires a group spec");
  for (const auto& e : elems) require_same_spec(e, identity(spec));
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  return elems;
}

bool set_contains(const std::vector<GroupElement>& sorted_set, const GroupElement& x) {
  return std::binary_search(sorted_set.begin(), sorted_set.end(), x);
}

}  // namespace matchable
