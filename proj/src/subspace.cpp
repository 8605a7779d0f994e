#include "matchable/subspace.hpp"

#include <algorithm>
#include <set>

namespace matchable {

namespace linalg {

void rref(const ScalarField& K, std::vector<std::vector<int64_t>>& rows) {
  if (rows.empty()) return;
  size_t width = rows[0].size();
  size_t row = 0;
  for (size_t col = 0; col < width && row < rows.size(); ++col) {
    size_t pivot = row;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[row], rows[pivot]);
    int64_t inv_lead = K.inv(rows[row][col]);
    for (size_t j = col; j < width; ++j) rows[row][j] = K.mul(rows[row][j], inv_lead);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == row || rows[i][col] == 0) continue;
      int64_t factor = rows[i][col];
      for (size_t j = col; j < width; ++j) {
        rows[i][j] = K.sub(rows[i][j], K.mul(factor, rows[row][j]));
      }
    }
    ++row;
  }
  rows.resize(row);
}

std::vector<int> pivot_columns(const std::vector<std::vector<int64_t>>& rref_rows) {
  std::vector<int> pivots;
  for (const auto& r : rref_rows) {
    for (size_t c = 0; c < r.size(); ++c) {
      if (r[c] != 0) {
        pivots.push_back(static_cast<int>(c));
        break;
      }
    }
  }
  return pivots;
}

bool in_row_space(const ScalarField& K, const std::vector<std::vector<int64_t>>& rref_rows,
                  const std::vector<int64_t>& vec) {
  std::vector<int64_t> residue = vec;
  auto pivots = pivot_columns(rref_rows);
  for (size_t i = 0; i < rref_rows.size(); ++i) {
    int64_t coeff = residue[pivots[i]];
    if (coeff == 0) continue;
    for (size_t j = 0; j < residue.size(); ++j) {
      residue[j] = K.sub(residue[j], K.mul(coeff, rref_rows[i][j]));
    }
  }
  return std::all_of(residue.begin(), residue.end(), [](int64_t c) { return c == 0; });
}

int rank(const ScalarField& K, std::vector<std::vector<int64_t>> rows) {
  rref(K, rows);
  return static_cast<int>(rows.size());
}

std::vector<std::vector<int64_t>> intersect_row_spaces(
    const ScalarField& K, const std::vector<std::vector<int64_t>>& a,
    const std::vector<std::vector<int64_t>>& b, int width) {
  // Zassenhaus: reduce rows [x | x] for x in a and [y | 0] for y in b; the
  // rows whose left half vanished carry the intersection in the right half.
  std::vector<std::vector<int64_t>> stacked;
  for (const auto& x : a) {
    std::vector<int64_t> row(2 * width, 0);
    for (int j = 0; j < width; ++j) row[j] = row[width + j] = x[j];
    stacked.push_back(std::move(row));
  }
  for (const auto& y : b) {
    std::vector<int64_t> row(2 * width, 0);
    for (int j = 0; j < width; ++j) row[j] = y[j];
    stacked.push_back(std::move(row));
  }
  rref(K, stacked);
  std::vector<std::vector<int64_t>> out;
  for (const auto& row : stacked) {
    bool left_zero = std::all_of(row.begin(), row.begin() + width,
                                 [](int64_t c) { return c == 0; });
    if (left_zero) out.emplace_back(row.begin() + width, row.end());
  }
  rref(K, out);
  return out;
}

std::vector<std::vector<int64_t>> nullspace(const ScalarField& K,
                                            const std::vector<std::vector<int64_t>>& m,
                                            int width) {
  std::vector<std::vector<int64_t>> reduced = m;
  rref(K, reduced);
  auto pivots = pivot_columns(reduced);
  std::vector<char> is_pivot(width, 0);
  for (int p : pivots) is_pivot[p] = 1;
  std::vector<std::vector<int64_t>> basis;
  for (int free_col = 0; free_col < width; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<int64_t> v(width, 0);
    v[free_col] = 1;
    for (size_t i = 0; i < reduced.size(); ++i) {
      v[pivots[i]] = K.neg(reduced[i][free_col]);
    }
    basis.push_back(std::move(v));
  }
  rref(K, basis);
  return basis;
}

std::optional<std::vector<std::vector<int64_t>>> invert(
    const ScalarField& K, const std::vector<std::vector<int64_t>>& m) {
  size_t n = m.size();
  std::vector<std::vector<int64_t>> aug(n, std::vector<int64_t>(2 * n, 0));
  for (size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw PreconditionError("inversion requires a square matrix");
    for (size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = 1;
  }
  rref(K, aug);
  if (aug.size() != n) return std::nullopt;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (aug[i][j] != (i == j ? 1 : 0)) return std::nullopt;
    }
  }
  std::vector<std::vector<int64_t>> out(n, std::vector<int64_t>(n, 0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) out[i][j] = aug[i][n + j];
  }
  return out;
}

}  // namespace linalg

namespace {

void require_same_tower_space(const Subspace& a, const Subspace& b) {
  if (a.tower() == b.tower()) return;
  if (a.tower() && b.tower() && *a.tower() == *b.tower()) return;
  throw SpecMismatchError("subspaces belong to different field towers");
}

}  // namespace

Subspace::Subspace(TowerPtr tower, std::vector<std::vector<int64_t>> rref_rows)
    : tower_(std::move(tower)), rows_(std::move(rref_rows)) {}

Subspace Subspace::zero_space(TowerPtr tower) {
  if (!tower) throw PreconditionError("subspace requires a field tower");
  return Subspace(std::move(tower), {});
}

Subspace Subspace::full_space(TowerPtr tower) {
  if (!tower) throw PreconditionError("subspace requires a field tower");
  int n = tower->n;
  std::vector<std::vector<int64_t>> rows(n, std::vector<int64_t>(n, 0));
  for (int i = 0; i < n; ++i) rows[i][i] = 1;
  return Subspace(std::move(tower), std::move(rows));
}

Subspace Subspace::span_rows(TowerPtr tower, std::vector<std::vector<int64_t>> rows) {
  if (!tower) throw PreconditionError("subspace requires a field tower");
  for (const auto& r : rows) {
    if (r.size() != static_cast<size_t>(tower->n)) {
      throw PreconditionError("row width does not match the tower degree");
    }
    for (int64_t c : r) {
      if (c < 0 || c >= tower->K.size()) throw PreconditionError("row code out of range");
    }
  }
  linalg::rref(tower->K, rows);
  return Subspace(std::move(tower), std::move(rows));
}

Subspace Subspace::span(TowerPtr tower, const std::vector<FieldElement>& gens) {
  std::vector<std::vector<int64_t>> rows;
  rows.reserve(gens.size());
  for (const auto& g : gens) {
    if (!(g.tower() == tower) && !(g.tower() && tower && *g.tower() == *tower)) {
      throw SpecMismatchError("generator belongs to a different tower");
    }
    rows.push_back(g.coeffs());
  }
  return span_rows(std::move(tower), std::move(rows));
}

bool Subspace::contains(const FieldElement& x) const {
  if (!(x.tower() == tower_) && !(*x.tower() == *tower_)) {
    throw SpecMismatchError("element belongs to a different tower");
  }
  return linalg::in_row_space(tower_->K, rows_, x.coeffs());
}

bool Subspace::contains_space(const Subspace& other) const {
  require_same_tower_space(*this, other);
  return std::all_of(other.rows_.begin(), other.rows_.end(), [&](const auto& r) {
    return linalg::in_row_space(tower_->K, rows_, r);
  });
}

bool Subspace::contains_one() const { return contains(one(tower_)); }

std::vector<FieldElement> Subspace::basis_elements() const {
  std::vector<FieldElement> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.emplace_back(tower_, r);
  return out;
}

int64_t Subspace::element_count() const {
  int64_t count = 1;
  for (int i = 0; i < dim(); ++i) count *= tower_->K.size();
  return count;
}

FieldElement Subspace::element_at(int64_t index) const {
  if (index < 0 || index >= element_count()) {
    throw PreconditionError("subspace element index out of range");
  }
  const ScalarField& K = tower_->K;
  std::vector<int64_t> coords(tower_->n, 0);
  for (const auto& row : rows_) {
    int64_t digit = index % K.size();
    index /= K.size();
    if (digit == 0) continue;
    for (int j = 0; j < tower_->n; ++j) {
      coords[j] = K.add(coords[j], K.mul(digit, row[j]));
    }
  }
  return FieldElement(tower_, std::move(coords));
}

std::vector<int64_t> Subspace::internal_coords(const FieldElement& x) const {
  if (!contains(x)) throw PreconditionError("element lies outside the subspace");
  auto pivots = linalg::pivot_columns(rows_);
  std::vector<int64_t> coords(pivots.size(), 0);
  for (size_t i = 0; i < pivots.size(); ++i) coords[i] = x.coeffs()[pivots[i]];
  return coords;
}

Subspace sum_spaces(const Subspace& a, const Subspace& b) {
  require_same_tower_space(a, b);
  std::vector<std::vector<int64_t>> rows = a.rows();
  rows.insert(rows.end(), b.rows().begin(), b.rows().end());
  return Subspace::span_rows(a.tower(), std::move(rows));
}

Subspace intersect_spaces(const Subspace& a, const Subspace& b) {
  require_same_tower_space(a, b);
  auto rows = linalg::intersect_row_spaces(a.tower()->K, a.rows(), b.rows(),
                                           a.tower()->n);
  return Subspace::span_rows(a.tower(), std::move(rows));
}

Subspace scale_space(const FieldElement& a, const Subspace& s) {
  if (a.is_zero()) throw PreconditionError("scaling requires a nonzero element");
  std::vector<std::vector<int64_t>> rows;
  rows.reserve(s.rows().size());
  for (const auto& e : s.basis_elements()) rows.push_back(mul(a, e).coeffs());
  return Subspace::span_rows(s.tower(), std::move(rows));
}

Subspace minkowski_span(const Subspace& a, const Subspace& b) {
  require_same_tower_space(a, b);
  std::vector<std::vector<int64_t>> rows;
  for (const auto& x : a.basis_elements()) {
    for (const auto& y : b.basis_elements()) rows.push_back(mul(x, y).coeffs());
  }
  return Subspace::span_rows(a.tower(), std::move(rows));
}

Subspace direct_sum_with_one(const Subspace& b) {
  if (b.contains_one()) throw PreconditionError("the subspace already contains 1");
  return sum_spaces(b, Subspace::span(b.tower(), {one(b.tower())}));
}

int quotient_dim(const Subspace& b, const Subspace& u) {
  if (!b.contains_space(u)) throw PreconditionError("quotient requires a nested pair");
  return b.dim() - u.dim();
}

int64_t eval_functional(const Functional& f, const Subspace& within,
                        const FieldElement& x) {
  auto coords = within.internal_coords(x);
  if (f.size() != coords.size()) throw PreconditionError("functional width mismatch");
  const ScalarField& K = within.tower()->K;
  int64_t acc = 0;
  for (size_t i = 0; i < coords.size(); ++i) acc = K.add(acc, K.mul(f[i], coords[i]));
  return acc;
}

std::vector<Functional> annihilator(const Subspace& w, const Subspace& within) {
  require_same_tower_space(w, within);
  if (!within.contains_space(w)) {
    throw PreconditionError("annihilator requires W inside the reference space");
  }
  std::vector<std::vector<int64_t>> coords;
  for (const auto& e : w.basis_elements()) coords.push_back(within.internal_coords(e));
  auto basis = linalg::nullspace(within.tower()->K, coords, within.dim());
  if (static_cast<int>(basis.size()) != within.dim() - w.dim()) {
    throw AuditError("annihilator dimension mismatch");
  }
  return basis;
}

std::vector<FieldElement> dual_basis(const std::vector<Functional>& fs,
                                     const Subspace& within) {
  size_t m = within.dim();
  if (fs.size() != m) throw PreconditionError("need exactly dim-many functionals");
  for (const auto& f : fs) {
    if (f.size() != m) throw PreconditionError("functional width mismatch");
  }
  auto inv = linalg::invert(within.tower()->K, fs);
  if (!inv) throw PreconditionError("functionals are linearly dependent");
  const ScalarField& K = within.tower()->K;
  auto basis = within.basis_elements();
  std::vector<FieldElement> duals;
  for (size_t j = 0; j < m; ++j) {
    FieldElement acc = zero(within.tower());
    for (size_t k = 0; k < m; ++k) {
      acc = add(acc, scalar_mul((*inv)[k][j], basis[k]));
    }
    duals.push_back(std::move(acc));
  }
  return duals;
}

std::vector<Subspace> enumerate_subspaces(const Subspace& s, int64_t max_count) {
  const ScalarField& K = s.tower()->K;
  int m = s.dim();
  int64_t q = K.size();
  int64_t points = 1;
  for (int i = 0; i < m; ++i) points *= q;

  // Breadth-first closure over internal coordinate space: extend each found
  // subspace by each vector outside it.
  std::set<std::vector<std::vector<int64_t>>> seen;
  std::vector<std::vector<std::vector<int64_t>>> order;
  seen.emplace();
  order.emplace_back();
  for (size_t at = 0; at < order.size(); ++at) {
    auto current = order[at];
    for (int64_t v = 1; v < points; ++v) {
      std::vector<int64_t> vec(m, 0);
      int64_t rest = v;
      for (int i = 0; i < m; ++i) {
        vec[i] = rest % q;
        rest /= q;
      }
      if (linalg::in_row_space(K, current, vec)) continue;
      auto extended = current;
      extended.push_back(std::move(vec));
      linalg::rref(K, extended);
      if (seen.insert(extended).second) {
        if (static_cast<int64_t>(seen.size()) > max_count) {
          throw SizeBoundError("subspace lattice exceeds the enumeration bound");
        }
        order.push_back(std::move(extended));
      }
    }
  }

  std::vector<Subspace> out;
  out.reserve(order.size());
  for (const auto& internal : seen) {
    std::vector<std::vector<int64_t>> ambient_rows;
    for (const auto& coords : internal) {
      std::vector<int64_t> row(s.tower()->n, 0);
      for (int i = 0; i < m; ++i) {
        if (coords[i] == 0) continue;
        for (int j = 0; j < s.tower()->n; ++j) {
          row[j] = K.add(row[j], K.mul(coords[i], s.rows()[i][j]));
        }
      }
      ambient_rows.push_back(std::move(row));
    }
    out.push_back(Subspace::span_rows(s.tower(), std::move(ambient_rows)));
  }
  std::sort(out.begin(), out.end(), [](const Subspace& a, const Subspace& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return a.rows() < b.rows();
  });
  return out;
}

std::vector<Subspace> intermediate_fields(const TowerPtr& tower) {
  if (!tower) throw PreconditionError("intermediate fields require a tower");
  const ScalarField& K = tower->K;
  int n = tower->n;
  std::vector<Subspace> out;
  for (int d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    // Fixed space of the d-th Frobenius power: v (phi_d - id) = 0 for row
    // vectors v, i.e. the nullspace of the transposed difference matrix.
    std::vector<std::vector<int64_t>> matrix(n, std::vector<int64_t>(n, 0));
    for (int j = 0; j < n; ++j) {
      std::vector<int64_t> basis_coeffs(n, 0);
      basis_coeffs[j] = 1;
      FieldElement image = frobenius_power(FieldElement(tower, basis_coeffs), d);
      for (int k = 0; k < n; ++k) matrix[j][k] = image.coeffs()[k];
      matrix[j][j] = K.sub(matrix[j][j], 1);
    }
    std::vector<std::vector<int64_t>> transposed(n, std::vector<int64_t>(n, 0));
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) transposed[k][j] = matrix[j][k];
    }
    auto basis = linalg::nullspace(K, transposed, n);
    auto field = Subspace::span_rows(tower, std::move(basis));
    if (field.dim() != d) throw AuditError("fixed field has unexpected dimension");
    out.push_back(std::move(field));
  }
  return out;
}

Subspace power_span(const FieldElement& x) {
  int d = degree_over_base(x);
  std::vector<FieldElement> gens;
  FieldElement acc = one(x.tower());
  for (int i = 0; i < d; ++i) {
    gens.push_back(acc);
    acc = mul(acc, x);
  }
  return Subspace::span(x.tower(), gens);
}

}  // namespace matchable
