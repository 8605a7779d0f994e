#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "matchable/errors.hpp"

namespace matchable {

// GF(p^m) with elements encoded as integers in [0, p^m): the code of an
// element is its base-p digit string, constant digit least significant.
// The defining polynomial is the lexicographically smallest monic
// irreducible of degree m over GF(p), ordered by coefficient tuple
// (c_0, ..., c_{m-1}).
class ScalarField {
 public:
  ScalarField(int64_t p, int degree);

  int64_t p() const { return p_; }
  int degree() const { return degree_; }
  int64_t size() const { return size_; }
  // GF(p) coefficients, low degree first, leading 1 included.
  const std::vector<int64_t>& modulus() const { return modulus_; }

  int64_t add(int64_t a, int64_t b) const;
  int64_t sub(int64_t a, int64_t b) const;
  int64_t neg(int64_t a) const;
  int64_t mul(int64_t a, int64_t b) const;
  int64_t inv(int64_t a) const;
  int64_t pow(int64_t a, int64_t e) const;

  std::vector<int64_t> decode(int64_t code) const;
  int64_t encode(const std::vector<int64_t>& digits) const;

  bool operator==(const ScalarField& other) const {
    return p_ == other.p_ && degree_ == other.degree_;
  }

 private:
  int64_t mul_slow(int64_t a, int64_t b) const;

  int64_t p_ = 0;
  int degree_ = 0;
  int64_t size_ = 0;
  std::vector<int64_t> modulus_;
  std::vector<int32_t> mul_table_;  // built when the field is small
  std::vector<int32_t> inv_table_;
};

// Extension L = K[t]/(modulus) of degree n over the scalar field K.
// Elements are coefficient vectors over K, low degree first.  The default
// modulus is the lexicographically smallest monic irreducible of degree n
// over K, by coefficient tuple (c_0, ..., c_{n-1}) of K-codes.
struct FieldTower {
  ScalarField K;
  int n;
  std::vector<int64_t> modulus;  // K-codes, size n + 1, monic

  int64_t size() const;  // |L| = |K|^n

  bool operator==(const FieldTower& other) const {
    return K == other.K && n == other.n && modulus == other.modulus;
  }
};

using TowerPtr = std::shared_ptr<const FieldTower>;

// Validates the parameters (p prime, |L| <= 2^20, modulus monic irreducible
// when given) and builds the tower.
TowerPtr make_tower(int64_t p, int base_degree, int n,
                    std::optional<std::vector<int64_t>> modulus = std::nullopt);

class FieldElement {
 public:
  FieldElement(TowerPtr tower, std::vector<int64_t> coeffs);

  const TowerPtr& tower() const { return tower_; }
  const std::vector<int64_t>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_one() const;
  // True when the element lies in the base field K.
  bool in_base() const;

  bool operator==(const FieldElement& other) const { return coeffs_ == other.coeffs_; }
  bool operator<(const FieldElement& other) const { return coeffs_ < other.coeffs_; }

 private:
  TowerPtr tower_;
  std::vector<int64_t> coeffs_;
};

FieldElement zero(const TowerPtr& tower);
FieldElement one(const TowerPtr& tower);
FieldElement from_base(const TowerPtr& tower, int64_t k_code);

// Enumeration of L by index: index = sum coeffs[i] * |K|^i.
FieldElement element_at(const TowerPtr& tower, int64_t index);
int64_t index_of(const FieldElement& x);

FieldElement add(const FieldElement& x, const FieldElement& y);
FieldElement sub(const FieldElement& x, const FieldElement& y);
FieldElement neg(const FieldElement& x);
FieldElement mul(const FieldElement& x, const FieldElement& y);
FieldElement inv(const FieldElement& x);
FieldElement field_pow(const FieldElement& x, int64_t e);
FieldElement scalar_mul(int64_t k_code, const FieldElement& x);

// x -> x^|K|, the generator of the Galois group over K.
FieldElement frobenius(const FieldElement& x);
FieldElement frobenius_power(const FieldElement& x, int d);

// Monic minimal polynomial of x over K; coeffs are K-codes, low degree
// first.  Its degree is the degree of x over K and divides n.
struct MinPoly {
  std::vector<int64_t> coeffs;
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

MinPoly minimal_polynomial(const FieldElement& x);
int degree_over_base(const FieldElement& x);

// Evaluates a MinPoly at x inside L (used to cross-check roots).
FieldElement eval_minpoly(const MinPoly& mp, const FieldElement& x);

// Smallest divisor of n greater than 1; nullopt when n = 1 (no proper
// extension step exists).
std::optional<int> min_extension_degree(const FieldTower& tower);

}  // namespace matchable
