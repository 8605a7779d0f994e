#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "matchable/errors.hpp"

namespace matchable {

// Finitely generated abelian group Z^r x Z_{d1} x ... x Z_{dk}, written
// additively.  Coordinates are ordered free part first, then torsion part.
class GroupSpec {
 public:
  GroupSpec(int free_rank, std::vector<int64_t> torsion);

  int free_rank() const { return free_rank_; }
  const std::vector<int64_t>& torsion() const { return torsion_; }
  int dimensions() const { return free_rank_ + static_cast<int>(torsion_.size()); }
  bool is_finite() const { return free_rank_ == 0; }

  // Group order; nullopt when the group is infinite.
  std::optional<int64_t> order() const;

  bool operator==(const GroupSpec& other) const = default;

 private:
  int free_rank_;
  std::vector<int64_t> torsion_;
};

using GroupSpecPtr = std::shared_ptr<const GroupSpec>;

GroupSpecPtr make_group(int free_rank, std::vector<int64_t> torsion);

// Element of a GroupSpec group.  Torsion coordinates are kept reduced to
// [0, d_i), so coordinate equality is element equality.
class GroupElement {
 public:
  GroupElement(GroupSpecPtr spec, std::vector<int64_t> coords);

  const GroupSpecPtr& spec() const { return spec_; }
  const std::vector<int64_t>& coords() const { return coords_; }
  bool is_identity() const;

  bool operator==(const GroupElement& other) const { return coords_ == other.coords_; }
  // Lexicographic on coordinates; orders elements of a common group.
  bool operator<(const GroupElement& other) const { return coords_ < other.coords_; }

 private:
  GroupSpecPtr spec_;
  std::vector<int64_t> coords_;
};

GroupElement identity(const GroupSpecPtr& spec);

// Mixed-radix enumeration of a finite group: index runs over [0, |G|).
GroupElement element_at(const GroupSpecPtr& spec, int64_t index);
int64_t index_of(const GroupElement& x);

GroupElement compose(const GroupElement& x, const GroupElement& y);
GroupElement inverse(const GroupElement& x);
GroupElement power(const GroupElement& x, int64_t k);

// Order of x; nullopt when infinite (nonzero free part).
std::optional<int64_t> element_order(const GroupElement& x);

// Subgroup described by generators.  The element list is present exactly when
// every generator has finite order; it is then the full closure, sorted.
struct Subgroup {
  std::vector<GroupElement> generators;
  std::vector<GroupElement> elements;
  bool finite = false;

  int64_t size() const;
  bool contains(const GroupElement& x) const;
};

Subgroup subgroup_generated(const GroupSpecPtr& spec,
                            const std::vector<GroupElement>& generators);

// True when S is a union of cosets of H, i.e. S + H = S.  H must be finite.
bool is_union_of_cosets(const std::vector<GroupElement>& S, const Subgroup& H);

// {s + r : s in S, r in R}, sorted and deduplicated.
std::vector<GroupElement> set_product(const std::vector<GroupElement>& S,
                                      const std::vector<GroupElement>& R);

// Length of the longest arithmetic progression a, a+x, ..., a+(len-1)x
// contained in A with len - 1 < order(x).  A nonempty set always has a
// progression of length 1.
int64_t max_progression_length(const std::vector<GroupElement>& A);

// True when all pairwise sums a_i + a_j (i <= j) are distinct.
bool is_sidon(const std::vector<GroupElement>& A);

// True when every element of B has order greater than |B|.
bool is_chowla_subset(const std::vector<GroupElement>& B);

// Size of the smallest subgroup of order > 1; nullopt when the group is
// torsion-free (no finite nontrivial subgroup exists).
std::optional<int64_t> min_nontrivial_subgroup_size(const GroupSpec& spec);

// All subgroups of a finite group, sorted by (order, element list).  Throws
// SizeBoundError when |G| exceeds max_order.
std::vector<Subgroup> enumerate_subgroups(const GroupSpecPtr& spec,
                                          int64_t max_order = 512);

// Sorted deduplicated copy, with every element checked against spec.
std::vector<GroupElement> canonical_set(const GroupSpecPtr& spec,
                                        std::vector<GroupElement> elems);

bool set_contains(const std::vector<GroupElement>& sorted_set, const GroupElement& x);

}  // namespace matchable
