#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "matchable/field.hpp"

namespace matchable {

// Plain row-space linear algebra over a scalar field.  Rows are K-code
// vectors; every public routine returns matrices in reduced row echelon
// form, which makes them canonical per subspace.
namespace linalg {

void rref(const ScalarField& K, std::vector<std::vector<int64_t>>& rows);
std::vector<int> pivot_columns(const std::vector<std::vector<int64_t>>& rref_rows);
bool in_row_space(const ScalarField& K, const std::vector<std::vector<int64_t>>& rref_rows,
                  const std::vector<int64_t>& vec);
int rank(const ScalarField& K, std::vector<std::vector<int64_t>> rows);
std::vector<std::vector<int64_t>> intersect_row_spaces(
    const ScalarField& K, const std::vector<std::vector<int64_t>>& a,
    const std::vector<std::vector<int64_t>>& b, int width);
// Kernel of x -> M x with rows of M as equations; basis in RREF.
std::vector<std::vector<int64_t>> nullspace(const ScalarField& K,
                                            const std::vector<std::vector<int64_t>>& m,
                                            int width);
std::optional<std::vector<std::vector<int64_t>>> invert(
    const ScalarField& K, const std::vector<std::vector<int64_t>>& m);

}  // namespace linalg

// K-subspace of the tower's top field L, stored as canonical RREF rows over
// K in the coordinate space of L.  Equal subspaces compare equal rows.
class Subspace {
 public:
  static Subspace zero_space(TowerPtr tower);
  static Subspace full_space(TowerPtr tower);
  static Subspace span(TowerPtr tower, const std::vector<FieldElement>& gens);
  static Subspace span_rows(TowerPtr tower, std::vector<std::vector<int64_t>> rows);

  const TowerPtr& tower() const { return tower_; }
  const std::vector<std::vector<int64_t>>& rows() const { return rows_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  int ambient_dim() const { return tower_->n; }

  bool contains(const FieldElement& x) const;
  bool contains_space(const Subspace& other) const;
  bool contains_one() const;
  bool is_zero() const { return rows_.empty(); }

  std::vector<FieldElement> basis_elements() const;
  // Number of elements, |K|^dim.
  int64_t element_count() const;
  // Element by little-endian base-|K| coordinates over the basis rows.
  FieldElement element_at(int64_t index) const;
  // Coordinates of x over the RREF basis (entries at the pivot columns).
  std::vector<int64_t> internal_coords(const FieldElement& x) const;

  bool operator==(const Subspace& other) const { return rows_ == other.rows_; }

 private:
  Subspace(TowerPtr tower, std::vector<std::vector<int64_t>> rref_rows);

  TowerPtr tower_;
  std::vector<std::vector<int64_t>> rows_;
};

Subspace sum_spaces(const Subspace& a, const Subspace& b);
Subspace intersect_spaces(const Subspace& a, const Subspace& b);

// {a*s : s in S}; a must be nonzero.
Subspace scale_space(const FieldElement& a, const Subspace& s);

// Span of all products s*r; the subspace generated by the product set.
Subspace minkowski_span(const Subspace& a, const Subspace& b);

// B + K*1 as a direct sum; requires 1 outside B.
Subspace direct_sum_with_one(const Subspace& b);

// dim(B / U); requires U inside B.
int quotient_dim(const Subspace& b, const Subspace& u);

// Functionals are coefficient vectors in the internal coordinates of a fixed
// reference space: f(x) = sum f[i] * coord_i(x).
using Functional = std::vector<int64_t>;

int64_t eval_functional(const Functional& f, const Subspace& within, const FieldElement& x);

// Basis (RREF) of the functionals on `within` vanishing on W; W must lie
// inside `within`.
std::vector<Functional> annihilator(const Subspace& w, const Subspace& within);

// Basis b_1..b_m of `within` with f_i(b_j) = delta_ij; the functionals must
// be independent.
std::vector<FieldElement> dual_basis(const std::vector<Functional>& fs,
                                     const Subspace& within);

// All subspaces of S including the zero space and S itself, sorted by
// (dimension, row matrix).  Throws SizeBoundError past max_count.
std::vector<Subspace> enumerate_subspaces(const Subspace& s, int64_t max_count = 200000);

// The subfield GF(|K|^d) inside L for every divisor d of n, ascending; each
// is the fixed space of the d-th Frobenius power.
std::vector<Subspace> intermediate_fields(const TowerPtr& tower);

// K(x) = span{1, x, ..., x^(d-1)} where d is the degree of x over K.
Subspace power_span(const FieldElement& x);

}  // namespace matchable
