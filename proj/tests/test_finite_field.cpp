#include <doctest.h>

#include <random>
#include <set>

#include "kloos/finite_field.hpp"
#include "oracles.hpp"

using namespace kloos;

TEST_CASE("tables agree with schoolbook polynomial arithmetic") {
  for (int r = 1; r <= 4; ++r) {
    const FieldTable t = FieldTable::build(r);
    const oracle::PolyField f(default_modulus(r));
    CAPTURE(r);
    for (std::uint32_t x = 0; x < static_cast<std::uint32_t>(t.q()); ++x) {
      for (std::uint32_t y = 0; y < static_cast<std::uint32_t>(t.q()); ++y) {
        REQUIRE(t.add({x}, {y}).index == f.add(x, y));
        REQUIRE(t.mul({x}, {y}).index == f.mul(x, y));
      }
      REQUIRE(t.trace({x}) == f.trace(x));
    }
  }
}

TEST_CASE("field axioms on random samples up to 3^6") {
  std::mt19937 rng(20261014);
  for (int r = 1; r <= 6; ++r) {
    const FieldTable t = FieldTable::build(r);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(t.q()) - 1);
    for (int trial = 0; trial < 400; ++trial) {
      const FieldElement x{pick(rng)}, y{pick(rng)}, z{pick(rng)};
      CHECK(t.mul(x, t.add(y, z)) == t.add(t.mul(x, y), t.mul(x, z)));
      CHECK(t.mul(t.mul(x, y), z) == t.mul(x, t.mul(y, z)));
      CHECK(t.add(x, t.neg(x)) == t.zero());
      CHECK(t.sub(t.add(x, y), y) == x);
      CHECK(t.frobenius(t.mul(x, y)) == t.mul(t.frobenius(x), t.frobenius(y)));
      CHECK(t.frobenius(t.add(x, y)) == t.add(t.frobenius(x), t.frobenius(y)));
      CHECK(t.trace(t.add(x, y)) == (t.trace(x) + t.trace(y)) % 3);
      if (x.index) {
        CHECK(t.mul(x, t.inv(x)) == t.one());
        CHECK(t.pow(x, static_cast<unsigned long>(t.q() - 1)) == t.one());
      }
    }
  }
}

TEST_CASE("trace is balanced and squares are half of F_q^*") {
  for (int r = 1; r <= 6; ++r) {
    const FieldTable t = FieldTable::build(r);
    int counts[3] = {0, 0, 0};
    int squares = 0;
    std::set<std::uint32_t> images;
    for (std::uint32_t v = 0; v < static_cast<std::uint32_t>(t.q()); ++v) {
      counts[t.trace({v})] += 1;
      if (t.is_square({v})) ++squares;
      if (v) images.insert(t.mul({v}, {v}).index);
      CHECK(r % t.orbit_size({v}) == 0);
    }
    CHECK(counts[0] == t.q() / 3);
    CHECK(counts[1] == t.q() / 3);
    CHECK(counts[2] == t.q() / 3);
    CHECK(squares == (t.q() - 1) / 2);
    CHECK(images.size() == static_cast<std::size_t>(squares));
    CHECK_FALSE(t.is_square(t.zero()));
  }
}

TEST_CASE("prime subfield and integer scaling") {
  const FieldTable t = FieldTable::build(3);
  CHECK(t.from_int(-1) == FieldElement{2});
  CHECK(t.from_int(5) == FieldElement{2});
  const FieldElement x{17};
  CHECK(t.scale(2, x) == t.add(x, x));
  CHECK(t.scale(-1, x) == t.neg(x));
  CHECK(t.scale(3, x) == t.zero());
  CHECK(t.trace(t.one()) == 0);  // tr 1 = r = 3 = 0
  CHECK(canonical_char(t, t.one()) == EisensteinInt::root(0));
}

TEST_CASE("field spec parsing") {
  const auto plain = parse_field_spec("3^4");
  CHECK(plain.r == 4);
  CHECK_FALSE(plain.modulus.has_value());
  const auto with_mod = parse_field_spec("3^2/1,0,1");
  REQUIRE(with_mod.modulus.has_value());
  CHECK(*with_mod.modulus == std::vector<int>{1, 0, 1});

  const FieldTable t = FieldTable::from_spec("3^2/1,0,1");
  CHECK(t.q() == 9);
  CHECK(t.params().spec() == "3^2/1,0,1");
  CHECK(FieldTable::build(2).params().spec() == "3^2/1,2,2");
  CHECK(poly_to_string({2, 2, 1}) == "x^2+2x+2");

  CHECK_THROWS_AS(parse_field_spec("2^3"), ParameterError);
  CHECK_THROWS_AS(parse_field_spec("3^"), ParameterError);
  CHECK_THROWS_AS(parse_field_spec("3^2/1,3,1"), ParameterError);
  CHECK_THROWS_AS(FieldTable::from_spec("3^0"), ParameterError);
  CHECK_THROWS_AS(FieldTable::from_spec("3^7"), ParameterError);
  CHECK_THROWS_AS(FieldTable::from_spec("3^2/2,0,1"), ParameterError);  // not monic
  CHECK_THROWS_AS(FieldTable::from_spec("3^2/1,0"), ParameterError);   // wrong degree
  CHECK_THROWS_AS(FieldTable::from_spec("3^2/1,0,2"), ConstructionError);  // x^2 - 1
  CHECK_THROWS_AS(FieldTable::from_spec("3^3/1,0,0,0"), ConstructionError);
}

TEST_CASE("irreducibility by trial division") {
  CHECK_FALSE(find_factor_f3({1, 0, 1}).has_value());
  const auto f = find_factor_f3({2, 0, 1});
  REQUIRE(f.has_value());
  CHECK(f->size() == 2);
  for (int r = 1; r <= 6; ++r) CHECK_FALSE(find_factor_f3(default_modulus(r)).has_value());
  // (x^2+1)^2 has no linear factor
  CHECK(find_factor_f3({1, 0, 2, 0, 1}).has_value());
}

TEST_CASE("error paths") {
  const FieldTable t = FieldTable::build(2);
  CHECK_THROWS_AS(t.inv(t.zero()), ParameterError);
  CHECK_THROWS_AS(t.element(9), ParameterError);
  CHECK(t.element(8).index == 8);
}
