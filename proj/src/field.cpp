#include "matchable/field.hpp"

#include <algorithm>

namespace matchable {

namespace {

constexpr int64_t kMaxFieldSize = 1 << 20;

bool is_small_prime(int64_t p) {
  if (p < 2) return false;
  for (int64_t f = 2; f * f <= p; ++f) {
    if (p % f == 0) return false;
  }
  return true;
}

// Dense polynomials over a coefficient field, codes low degree first.
using Poly = std::vector<int64_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

template <class F>
Poly poly_sub(const F& f, const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < out.size(); ++i) {
    int64_t x = i < a.size() ? a[i] : 0;
    int64_t y = i < b.size() ? b[i] : 0;
    out[i] = f.sub(x, y);
  }
  trim(out);
  return out;
}

template <class F>
Poly poly_mul(const F& f, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
    }
  }
  trim(out);
  return out;
}

template <class F>
Poly poly_mod(const F& f, Poly a, const Poly& m) {
  trim(a);
  int64_t lead_inv = f.inv(m.back());
  while (a.size() >= m.size()) {
    int64_t factor = f.mul(a.back(), lead_inv);
    size_t shift = a.size() - m.size();
    for (size_t i = 0; i < m.size(); ++i) {
      a[shift + i] = f.sub(a[shift + i], f.mul(factor, m[i]));
    }
    trim(a);
    if (a.empty()) break;
  }
  return a;
}

template <class F>
Poly poly_powmod(const F& f, Poly base, int64_t e, const Poly& m) {
  Poly acc = {1};
  base = poly_mod(f, std::move(base), m);
  while (e > 0) {
    if (e & 1) acc = poly_mod(f, poly_mul(f, acc, base), m);
    e >>= 1;
    if (e > 0) base = poly_mod(f, poly_mul(f, base, base), m);
  }
  return acc;
}

template <class F>
Poly poly_gcd(const F& f, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    int64_t lead_inv = f.inv(a.back());
    for (auto& c : a) c = f.mul(c, lead_inv);
  }
  return a;
}

// Rabin's test: f of degree n is irreducible over GF(q) iff x^(q^n) = x
// mod f and gcd(x^(q^(n/l)) - x, f) = 1 for every prime l dividing n.
template <class F>
bool poly_is_irreducible(const F& f, const Poly& m) {
  int n = static_cast<int>(m.size()) - 1;
  if (n < 1) return false;
  if (n == 1) return true;
  int64_t q = f.size();
  Poly x = {0, 1};

  auto frob_power = [&](int k) {
    Poly g = poly_mod(f, x, m);
    for (int i = 0; i < k; ++i) g = poly_powmod(f, g, q, m);
    return g;
  };

  if (poly_sub(f, frob_power(n), poly_mod(f, x, m)) != Poly{}) return false;
  int rest = n;
  for (int l = 2; l * l <= rest; ++l) {
    if (rest % l != 0) continue;
    Poly g = poly_sub(f, frob_power(n / l), poly_mod(f, x, m));
    if (poly_gcd(f, g, m).size() > 1) return false;
    while (rest % l == 0) rest /= l;
  }
  if (rest > 1) {
    Poly g = poly_sub(f, frob_power(n / rest), poly_mod(f, x, m));
    if (poly_gcd(f, g, m).size() > 1) return false;
  }
  return true;
}

// Smallest monic irreducible of the given degree, ordered lexicographically
// by the coefficient tuple (c_0, ..., c_{degree-1}).
template <class F>
Poly find_irreducible(const F& f, int degree) {
  int64_t q = f.size();
  __int128 count = 1;
  for (int i = 0; i < degree; ++i) count *= q;
  for (__int128 code = 0; code < count; ++code) {
    Poly m(degree + 1, 0);
    m[degree] = 1;
    // code counts with c_0 as the most significant digit, so increasing code
    // walks the coefficient tuples (c_0, ..., c_{degree-1}) in lex order.
    __int128 rest = code;
    for (int j = degree - 1; j >= 0; --j) {
      m[j] = static_cast<int64_t>(rest % q);
      rest /= q;
    }
    if (poly_is_irreducible(f, m)) return m;
  }
  throw AuditError("no irreducible polynomial found");
}

struct PrimeOps {
  int64_t p;
  int64_t size() const { return p; }
  int64_t add(int64_t a, int64_t b) const { return (a + b) % p; }
  int64_t sub(int64_t a, int64_t b) const { return ((a - b) % p + p) % p; }
  int64_t neg(int64_t a) const { return (p - a % p) % p; }
  int64_t mul(int64_t a, int64_t b) const { return (a * b) % p; }
  int64_t inv(int64_t a) const {
    if (a % p == 0) throw DivisionByZeroError("inverse of zero");
    int64_t acc = 1, base = a % p, e = p - 2;
    while (e > 0) {
      if (e & 1) acc = acc * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return acc;
  }
};

void require_same_tower(const FieldElement& x, const FieldElement& y) {
  if (x.tower() == y.tower()) return;
  if (x.tower() && y.tower() && *x.tower() == *y.tower()) return;
  throw SpecMismatchError("elements belong to different field towers");
}

}  // namespace

ScalarField::ScalarField(int64_t p, int degree) : p_(p), degree_(degree) {
  if (!is_small_prime(p)) throw PreconditionError("field characteristic must be prime");
  if (degree < 1) throw PreconditionError("field degree must be positive");
  __int128 size = 1;
  for (int i = 0; i < degree; ++i) {
    size *= p;
    if (size > kMaxFieldSize) throw SizeBoundError("scalar field exceeds 2^20 elements");
  }
  size_ = static_cast<int64_t>(size);
  if (degree_ == 1) {
    modulus_ = {0, 1};
  } else {
    modulus_ = find_irreducible(PrimeOps{p_}, degree_);
  }
  if (degree_ >= 2 && size_ <= 512) {
    mul_table_.assign(size_ * size_, 0);
    for (int64_t a = 0; a < size_; ++a) {
      for (int64_t b = a; b < size_; ++b) {
        auto prod = static_cast<int32_t>(mul_slow(a, b));
        mul_table_[a * size_ + b] = prod;
        mul_table_[b * size_ + a] = prod;
      }
    }
    inv_table_.assign(size_, 0);
    for (int64_t a = 1; a < size_; ++a) {
      int64_t acc = 1, base = a, e = size_ - 2;
      while (e > 0) {
        if (e & 1) acc = mul_table_[acc * size_ + base];
        base = mul_table_[base * size_ + base];
        e >>= 1;
      }
      inv_table_[a] = static_cast<int32_t>(acc);
    }
  }
}

std::vector<int64_t> ScalarField::decode(int64_t code) const {
  std::vector<int64_t> digits(degree_, 0);
  for (int i = 0; i < degree_; ++i) {
    digits[i] = code % p_;
    code /= p_;
  }
  return digits;
}

int64_t ScalarField::encode(const std::vector<int64_t>& digits) const {
  int64_t code = 0;
  for (size_t i = digits.size(); i-- > 0;) code = code * p_ + digits[i] % p_;
  return code;
}

int64_t ScalarField::add(int64_t a, int64_t b) const {
  if (degree_ == 1) return (a + b) % p_;
  if (p_ == 2) return a ^ b;
  auto da = decode(a), db = decode(b);
  for (int i = 0; i < degree_; ++i) da[i] = (da[i] + db[i]) % p_;
  return encode(da);
}

int64_t ScalarField::sub(int64_t a, int64_t b) const { return add(a, neg(b)); }

int64_t ScalarField::neg(int64_t a) const {
  if (degree_ == 1) return (p_ - a % p_) % p_;
  if (p_ == 2) return a;
  auto da = decode(a);
  for (int i = 0; i < degree_; ++i) da[i] = (p_ - da[i]) % p_;
  return encode(da);
}

int64_t ScalarField::mul_slow(int64_t a, int64_t b) const {
  if (degree_ == 1) return a * b % p_;
  PrimeOps ops{p_};
  Poly prod = poly_mod(ops, poly_mul(ops, decode(a), decode(b)), modulus_);
  prod.resize(degree_, 0);
  return encode(prod);
}

int64_t ScalarField::mul(int64_t a, int64_t b) const {
  if (degree_ == 1) return a * b % p_;
  if (!mul_table_.empty()) return mul_table_[a * size_ + b];
  return mul_slow(a, b);
}

int64_t ScalarField::inv(int64_t a) const {
  if (a == 0) throw DivisionByZeroError("inverse of zero");
  if (!inv_table_.empty()) return inv_table_[a];
  return pow(a, size_ - 2);
}

int64_t ScalarField::pow(int64_t a, int64_t e) const {
  if (e < 0) return pow(inv(a), -e);
  int64_t acc = 1;
  a %= size_;
  while (e > 0) {
    if (e & 1) acc = mul(acc, a);
    a = mul(a, a);
    e >>= 1;
  }
  return acc;
}

int64_t FieldTower::size() const {
  int64_t s = 1;
  for (int i = 0; i < n; ++i) s *= K.size();
  return s;
}

TowerPtr make_tower(int64_t p, int base_degree, int n,
                    std::optional<std::vector<int64_t>> modulus) {
  ScalarField K(p, base_degree);
  if (n < 1) throw PreconditionError("extension degree must be positive");
  __int128 total = 1;
  for (int i = 0; i < n; ++i) {
    total *= K.size();
    if (total > kMaxFieldSize) throw SizeBoundError("field tower exceeds 2^20 elements");
  }
  std::vector<int64_t> m;
  if (modulus) {
    m = *modulus;
    if (m.size() != static_cast<size_t>(n) + 1 || m.back() != 1) {
      throw PreconditionError("modulus must be monic of degree n");
    }
    for (int64_t c : m) {
      if (c < 0 || c >= K.size()) throw PreconditionError("modulus coefficient out of range");
    }
    if (!poly_is_irreducible(K, m)) throw PreconditionError("modulus must be irreducible");
  } else {
    m = n == 1 ? std::vector<int64_t>{0, 1} : find_irreducible(K, n);
  }
  return std::make_shared<const FieldTower>(FieldTower{std::move(K), n, std::move(m)});
}

FieldElement::FieldElement(TowerPtr tower, std::vector<int64_t> coeffs)
    : tower_(std::move(tower)), coeffs_(std::move(coeffs)) {
  if (!tower_) throw PreconditionError("element requires a field tower");
  if (coeffs_.size() != static_cast<size_t>(tower_->n)) {
    throw PreconditionError("coefficient count does not match the tower degree");
  }
  for (int64_t c : coeffs_) {
    if (c < 0 || c >= tower_->K.size()) {
      throw PreconditionError("coefficient code out of range");
    }
  }
}

bool FieldElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](int64_t c) { return c == 0; });
}

bool FieldElement::is_one() const {
  if (coeffs_[0] != 1) return false;
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](int64_t c) { return c == 0; });
}

bool FieldElement::in_base() const {
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](int64_t c) { return c == 0; });
}

FieldElement zero(const TowerPtr& tower) {
  if (!tower) throw PreconditionError("zero requires a field tower");
  return FieldElement(tower, std::vector<int64_t>(tower->n, 0));
}

FieldElement one(const TowerPtr& tower) { return from_base(tower, 1); }

FieldElement from_base(const TowerPtr& tower, int64_t k_code) {
  if (!tower) throw PreconditionError("element requires a field tower");
  std::vector<int64_t> coeffs(tower->n, 0);
  coeffs[0] = k_code;
  return FieldElement(tower, std::move(coeffs));
}

FieldElement element_at(const TowerPtr& tower, int64_t index) {
  if (!tower) throw PreconditionError("element requires a field tower");
  if (index < 0 || index >= tower->size()) {
    throw PreconditionError("element index out of range");
  }
  int64_t q = tower->K.size();
  std::vector<int64_t> coeffs(tower->n, 0);
  for (int i = 0; i < tower->n; ++i) {
    coeffs[i] = index % q;
    index /= q;
  }
  return FieldElement(tower, std::move(coeffs));
}

int64_t index_of(const FieldElement& x) {
  int64_t q = x.tower()->K.size();
  int64_t index = 0;
  for (size_t i = x.coeffs().size(); i-- > 0;) index = index * q + x.coeffs()[i];
  return index;
}

FieldElement add(const FieldElement& x, const FieldElement& y) {
  require_same_tower(x, y);
  const ScalarField& K = x.tower()->K;
  std::vector<int64_t> coeffs(x.coeffs());
  for (size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = K.add(coeffs[i], y.coeffs()[i]);
  return FieldElement(x.tower(), std::move(coeffs));
}

FieldElement sub(const FieldElement& x, const FieldElement& y) {
  require_same_tower(x, y);
  const ScalarField& K = x.tower()->K;
  std::vector<int64_t> coeffs(x.coeffs());
  for (size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = K.sub(coeffs[i], y.coeffs()[i]);
  return FieldElement(x.tower(), std::move(coeffs));
}

FieldElement neg(const FieldElement& x) {
  const ScalarField& K = x.tower()->K;
  std::vector<int64_t> coeffs(x.coeffs());
  for (auto& c : coeffs) c = K.neg(c);
  return FieldElement(x.tower(), std::move(coeffs));
}

FieldElement mul(const FieldElement& x, const FieldElement& y) {
  require_same_tower(x, y);
  const ScalarField& K = x.tower()->K;
  Poly prod = poly_mod(K, poly_mul(K, x.coeffs(), y.coeffs()), x.tower()->modulus);
  prod.resize(x.tower()->n, 0);
  return FieldElement(x.tower(), std::move(prod));
}

FieldElement inv(const FieldElement& x) {
  if (x.is_zero()) throw DivisionByZeroError("inverse of zero");
  return field_pow(x, x.tower()->size() - 2);
}

FieldElement field_pow(const FieldElement& x, int64_t e) {
  if (e < 0) return field_pow(inv(x), -e);
  FieldElement acc = one(x.tower());
  FieldElement base = x;
  while (e > 0) {
    if (e & 1) acc = mul(acc, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return acc;
}

FieldElement scalar_mul(int64_t k_code, const FieldElement& x) {
  const ScalarField& K = x.tower()->K;
  std::vector<int64_t> coeffs(x.coeffs());
  for (auto& c : coeffs) c = K.mul(k_code, c);
  return FieldElement(x.tower(), std::move(coeffs));
}

FieldElement frobenius(const FieldElement& x) { return field_pow(x, x.tower()->K.size()); }

FieldElement frobenius_power(const FieldElement& x, int d) {
  FieldElement out = x;
  for (int i = 0; i < d; ++i) out = frobenius(out);
  return out;
}

MinPoly minimal_polynomial(const FieldElement& x) {
  std::vector<FieldElement> orbit = {x};
  FieldElement conj = frobenius(x);
  while (!(conj == x)) {
    orbit.push_back(conj);
    conj = frobenius(conj);
    if (orbit.size() > static_cast<size_t>(x.tower()->n)) {
      throw AuditError("frobenius orbit exceeds the tower degree");
    }
  }

  // Product of (t - c) over the orbit, with coefficients inside L.
  std::vector<FieldElement> cs = {one(x.tower())};
  for (const auto& root : orbit) {
    std::vector<FieldElement> next(cs.size() + 1, zero(x.tower()));
    for (size_t k = 0; k < cs.size(); ++k) {
      next[k + 1] = add(next[k + 1], cs[k]);
      next[k] = sub(next[k], mul(root, cs[k]));
    }
    cs = std::move(next);
  }

  MinPoly mp;
  mp.coeffs.reserve(cs.size());
  for (const auto& c : cs) {
    if (!c.in_base()) throw AuditError("minimal polynomial left the base field");
    mp.coeffs.push_back(c.coeffs()[0]);
  }
  return mp;
}

int degree_over_base(const FieldElement& x) {
  int d = 1;
  FieldElement conj = frobenius(x);
  while (!(conj == x)) {
    ++d;
    conj = frobenius(conj);
    if (d > x.tower()->n) throw AuditError("frobenius orbit exceeds the tower degree");
  }
  return d;
}

FieldElement eval_minpoly(const MinPoly& mp, const FieldElement& x) {
  FieldElement acc = zero(x.tower());
  for (size_t i = mp.coeffs.size(); i-- > 0;) {
    acc = add(mul(acc, x), from_base(x.tower(), mp.coeffs[i]));
  }
  return acc;
}

std::optional<int> min_extension_degree(const FieldTower& tower) {
  if (tower.n == 1) return std::nullopt;
  for (int d = 2; d <= tower.n; ++d) {
    if (tower.n % d == 0) return d;
  }
  return std::nullopt;
}

}  // namespace matchable
