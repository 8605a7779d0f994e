#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "matchable/field.hpp"
#include "matchable/rng.hpp"

using namespace matchable;

TEST_CASE("prime fields match integer arithmetic") {
  for (int64_t p : {2, 3, 5, 13}) {
    ScalarField k(p, 1);
    CHECK(k.size() == p);
    SplitMix64 rng(p);
    for (int trial = 0; trial < 50; ++trial) {
      int64_t a = static_cast<int64_t>(rng.below(p));
      int64_t b = static_cast<int64_t>(rng.below(p));
      CHECK(k.add(a, b) == (a + b) % p);
      CHECK(k.mul(a, b) == (a * b) % p);
      CHECK(k.sub(a, b) == ((a - b) % p + p) % p);
      if (b != 0) CHECK(k.mul(k.inv(b), b) == 1);
    }
    CHECK_THROWS_AS(k.inv(0), DivisionByZeroError);
  }
  CHECK_THROWS_AS(ScalarField(4, 1), PreconditionError);
  CHECK_THROWS_AS(ScalarField(1, 1), PreconditionError);
  CHECK_THROWS_AS(ScalarField(2, 0), PreconditionError);
}

TEST_CASE("default moduli are the first irreducibles in low-to-high order") {
  CHECK(ScalarField(2, 2).modulus() == std::vector<int64_t>{1, 1, 1});
  CHECK(ScalarField(3, 2).modulus() == std::vector<int64_t>{1, 0, 1});
  // Degree 4 over GF(2): (1,0,0,0) gives (1+t)^4, so (1,0,0,1) is first.
  CHECK(ScalarField(2, 4).modulus() == std::vector<int64_t>{1, 0, 0, 1, 1});
}

TEST_CASE("extension field arithmetic satisfies the field laws") {
  for (auto [p, m] : std::vector<std::pair<int64_t, int>>{{2, 4}, {3, 2}, {5, 2}}) {
    ScalarField k(p, m);
    SplitMix64 rng(p + m);
    for (int trial = 0; trial < 60; ++trial) {
      int64_t a = static_cast<int64_t>(rng.below(k.size()));
      int64_t b = static_cast<int64_t>(rng.below(k.size()));
      int64_t c = static_cast<int64_t>(rng.below(k.size()));
      CHECK(k.add(a, b) == k.add(b, a));
      CHECK(k.mul(a, b) == k.mul(b, a));
      CHECK(k.mul(a, k.mul(b, c)) == k.mul(k.mul(a, b), c));
      CHECK(k.mul(a, k.add(b, c)) == k.add(k.mul(a, b), k.mul(a, c)));
      CHECK(k.add(a, k.neg(a)) == 0);
      CHECK(k.mul(a, 1) == a);
    }
    for (int64_t a = 1; a < k.size(); ++a) {
      CHECK(k.mul(a, k.inv(a)) == 1);
      CHECK(k.pow(a, k.size() - 1) == 1);
    }
    CHECK(k.pow(0, 0) == 1);
  }
}

TEST_CASE("codes round-trip through digit vectors") {
  ScalarField k(3, 3);
  for (int64_t code = 0; code < k.size(); ++code) {
    CHECK(k.encode(k.decode(code)) == code);
  }
  CHECK(k.decode(5) == std::vector<int64_t>{2, 1, 0});
}

TEST_CASE("tower construction validates the modulus") {
  auto tower = make_tower(2, 1, 4);
  CHECK(tower->size() == 16);
  CHECK(tower->modulus == std::vector<int64_t>{1, 0, 0, 1, 1});
  // A different irreducible modulus is accepted as given.
  auto custom = make_tower(2, 1, 4, std::vector<int64_t>{1, 1, 0, 0, 1});
  CHECK(custom->modulus == std::vector<int64_t>{1, 1, 0, 0, 1});
  // 1 + t^4 = (1 + t)^4 is reducible.
  CHECK_THROWS_AS(make_tower(2, 1, 4, std::vector<int64_t>{1, 0, 0, 0, 1}),
                  PreconditionError);
  // Not monic.
  CHECK_THROWS_AS(make_tower(3, 1, 2, std::vector<int64_t>{1, 0, 2}), PreconditionError);
  CHECK_THROWS_AS(make_tower(2, 1, 21), SizeBoundError);
  CHECK_THROWS_AS(make_tower(2, 1, 0), PreconditionError);
}

TEST_CASE("tower element arithmetic over a non-prime base") {
  auto tower = make_tower(2, 2, 4);  // GF(256) over GF(4)
  CHECK(tower->size() == 256);
  SplitMix64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    FieldElement x = element_at(tower, static_cast<int64_t>(rng.below(256)));
    FieldElement y = element_at(tower, static_cast<int64_t>(rng.below(256)));
    CHECK(add(x, y) == add(y, x));
    CHECK(mul(x, y) == mul(y, x));
    CHECK(sub(add(x, y), y) == x);
    if (!x.is_zero()) {
      CHECK(mul(x, inv(x)).is_one());
      CHECK(field_pow(x, 255).is_one());
    }
  }
  CHECK_THROWS_AS(inv(zero(tower)), DivisionByZeroError);
}

TEST_CASE("element enumeration round-trips") {
  auto tower = make_tower(2, 1, 4);
  for (int64_t i = 0; i < 16; ++i) {
    CHECK(index_of(element_at(tower, i)) == i);
  }
  CHECK(element_at(tower, 0).is_zero());
  CHECK(element_at(tower, 1).is_one());
  CHECK(from_base(tower, 1).is_one());
  CHECK(from_base(tower, 0).is_zero());
}

TEST_CASE("frobenius fixes exactly the base field") {
  auto tower = make_tower(2, 1, 4);
  int fixed = 0;
  for (int64_t i = 0; i < 16; ++i) {
    FieldElement x = element_at(tower, i);
    if (frobenius(x) == x) {
      ++fixed;
      CHECK(x.in_base());
    }
  }
  CHECK(fixed == 2);
  SplitMix64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    FieldElement x = element_at(tower, static_cast<int64_t>(rng.below(16)));
    FieldElement y = element_at(tower, static_cast<int64_t>(rng.below(16)));
    CHECK(frobenius(add(x, y)) == add(frobenius(x), frobenius(y)));
    CHECK(frobenius(mul(x, y)) == mul(frobenius(x), frobenius(y)));
    CHECK(frobenius_power(x, 4) == x);
  }
}

TEST_CASE("minimal polynomials vanish at their element and divide the tower degree") {
  for (auto params : std::vector<std::tuple<int64_t, int, int>>{{2, 1, 4}, {3, 1, 2}, {2, 1, 6}}) {
    auto [p, base, n] = params;
    auto tower = make_tower(p, base, n);
    for (int64_t i = 0; i < tower->size(); ++i) {
      FieldElement x = element_at(tower, i);
      MinPoly mp = minimal_polynomial(x);
      CHECK(eval_minpoly(mp, x).is_zero());
      CHECK(n % mp.degree() == 0);
      CHECK(mp.coeffs.back() == 1);
      CHECK(degree_over_base(x) == mp.degree());
      if (x.in_base()) CHECK(mp.degree() == 1);
    }
  }
}

TEST_CASE("the generator's minimal polynomial is the tower modulus") {
  auto tower = make_tower(2, 1, 4);
  FieldElement t = element_at(tower, 2);  // coefficient vector (0, 1, 0, 0)
  MinPoly mp = minimal_polynomial(t);
  CHECK(mp.coeffs == tower->modulus);
  CHECK(degree_over_base(t) == 4);
}

TEST_CASE("minimum extension degree is the smallest prime factor") {
  CHECK_FALSE(min_extension_degree(*make_tower(2, 1, 1)).has_value());
  CHECK(*min_extension_degree(*make_tower(2, 1, 6)) == 2);
  CHECK(*min_extension_degree(*make_tower(2, 1, 9)) == 3);
  CHECK(*min_extension_degree(*make_tower(2, 1, 5)) == 5);
  CHECK(*min_extension_degree(*make_tower(2, 1, 7)) == 7);
}

TEST_CASE("scalar multiplication matches embedded multiplication") {
  auto tower = make_tower(3, 1, 2);
  for (int64_t k = 0; k < 3; ++k) {
    for (int64_t i = 0; i < 9; ++i) {
      FieldElement x = element_at(tower, i);
      CHECK(scalar_mul(k, x) == mul(from_base(tower, k), x));
    }
  }
}
