#include <doctest.h>

#include <random>

#include "kloos/weight_dist.hpp"
#include "oracles.hpp"

using namespace kloos;

namespace {

std::vector<CodeSpec> families(bool include_n4) {
  std::vector<CodeSpec> out;
  for (int n : {1, 3}) {
    for (int i : {1, 2}) out.push_back(CodeSpec::o_code(Sign::minus, n, i));
    out.push_back(CodeSpec::sp_code(Sign::minus, n));
  }
  std::vector<int> evens{2};
  if (include_n4) evens.push_back(4);
  for (int n : evens) {
    for (int i : {1, 2}) out.push_back(CodeSpec::o_code(Sign::plus, n, i));
    out.push_back(CodeSpec::sp_code(Sign::plus, n));
  }
  return out;
}

// Sp(4, q) order
BigInt sp4_order(long q) { return big_pow(q, 4) * (q * q - 1) * (big_pow(q, 4) - 1); }

}  // namespace

TEST_CASE("profile masses equal the code length") {
  for (int r = 1; r <= 3; ++r) {
    const FieldTable t = FieldTable::build(r);
    for (const CodeSpec& spec : families(true)) {
      CAPTURE(describe(spec));
      CAPTURE(t.q());
      const CellProfile p = cell_profile(t, spec);
      const MassDiagnostic d = mass_diagnostic(p, spec);
      CHECK(d.consistent);
      for (const BigInt& s : p.sizes) CHECK(s >= 0);
    }
  }
}

TEST_CASE("the symplectic plus profile as printed has the mass of Sp(4,q)") {
  for (int r = 1; r <= 2; ++r) {
    const FieldTable t = FieldTable::build(r);
    const CellProfile printed = sp_plus_profile_printed(t);
    CHECK(printed.total() == sp4_order(t.q()));
    for (int n : {2, 4}) CHECK_FALSE(mass_diagnostic(printed, CodeSpec::sp_code(Sign::plus, n)).consistent);
  }
}

TEST_CASE("small-profile weight counts against exhaustive enumeration") {
  std::mt19937 rng(7);
  for (int r = 1; r <= 2; ++r) {
    const FieldTable t = FieldTable::build(r);
    const oracle::PolyField f(default_modulus(r));
    for (int trial = 0; trial < 12; ++trial) {
      // random coordinate multiset of length <= 8
      std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(t.q()) - 1);
      std::uniform_int_distribution<int> len(1, 8);
      std::vector<std::uint32_t> coords(static_cast<std::size_t>(len(rng)));
      for (auto& c : coords) c = pick(rng);
      CellProfile p{t.q(), std::vector<BigInt>(static_cast<std::size_t>(t.q()), BigInt(0))};
      for (auto c : coords) p.sizes[c] += 1;

      const auto brute = oracle::kernel_weights(f, coords);
      const WeightCounts wc = weight_counts(t, p, 8);
      for (int j = 0; j <= 8; ++j) {
        CAPTURE(j);
        const long want = brute.count(j) ? brute.at(j) : 0;
        CHECK(wc.at(j) == want);
      }
    }
  }
}

TEST_CASE("weight counts: trivial terms") {
  const FieldTable t = FieldTable::build(2);
  for (const CodeSpec& spec : families(false)) {
    const CellProfile p = cell_profile(t, spec);
    const WeightCounts wc = weight_counts(t, p, 3);
    CHECK(wc.at(0) == 1);
    CHECK(wc.at(1) == 2 * p.at(t.zero()));
    CHECK(wc.j_max() == 3);
  }
  const CellProfile p = cell_profile(t, CodeSpec::o_code(Sign::minus, 1, 1));
  CHECK_THROWS_AS(weight_counts(t, p, 13), ParameterError);
  CHECK_THROWS_AS(weight_counts(FieldTable::build(1), p, 2), ParameterError);
}

TEST_CASE("first cells of the smallest codes") {
  const FieldTable t = FieldTable::build(1);
  const CellProfile o1 = cell_profile(t, CodeSpec::o_code(Sign::minus, 1, 1));
  CHECK(o1.sizes == std::vector<BigInt>{3, 0, 3});
  const CellProfile o2 = cell_profile(t, CodeSpec::o_code(Sign::minus, 1, 2));
  CHECK(o2.sizes == std::vector<BigInt>{3, 3, 0});
  // beta^2 - 1 = 2 is a nonsquare, so the Sp-minus beta = 0 cell is empty
  const CellProfile sp = cell_profile(t, CodeSpec::sp_code(Sign::minus, 1));
  CHECK(sp.at(t.zero()) == 0);
  CHECK(weight_counts(t, sp, 1).at(1) == 0);
  // twisting by rho negates the trace for the minus family
  for (int r = 1; r <= 3; ++r) {
    const FieldTable f = FieldTable::build(r);
    for (int n : {1, 3}) {
      const CellProfile a = cell_profile(f, CodeSpec::o_code(Sign::minus, n, 1));
      const CellProfile b = cell_profile(f, CodeSpec::o_code(Sign::minus, n, 2));
      for (std::uint32_t v = 0; v < static_cast<std::uint32_t>(f.q()); ++v) CHECK(a.at({v}) == b.at(f.neg({v})));
    }
  }
}

TEST_CASE("dual weights from Kloosterman sums agree with counting cells") {
  // weight of c(a) = number of coordinates with tr(a beta) != 0
  for (int r = 1; r <= 3; ++r) {
    const FieldTable t = FieldTable::build(r);
    for (const CodeSpec& spec : families(true)) {
      if (spec.family != CodeFamily::orthogonal) continue;
      const CellProfile p = cell_profile(t, spec);
      for (std::uint32_t a = 1; a < static_cast<std::uint32_t>(t.q()); ++a) {
        BigInt w = 0;
        for (std::uint32_t b = 0; b < static_cast<std::uint32_t>(t.q()); ++b) {
          if (t.trace(t.mul({a}, {b})) != 0) w += p.at({b});
        }
        CAPTURE(describe(spec));
        CAPTURE(a);
        CHECK(dual_weight(t, spec, {a}) == w);
      }
    }
  }
  CHECK(dual_weight(FieldTable::build(1), CodeSpec::o_code(Sign::plus, 2, 1), {1}) == 1053);
}

TEST_CASE("dual distribution and errors") {
  const FieldTable t = FieldTable::build(1);
  const CodeSpec spec = CodeSpec::o_code(Sign::minus, 1, 1);
  const auto dist = dual_distribution(t, spec);
  CHECK(dist == std::map<BigInt, BigInt>{{0, 1}, {3, 2}});
  BigInt mass = 0;
  for (const auto& [w, c] : dual_distribution(FieldTable::build(2), spec)) {
    CHECK(w >= 0);
    CHECK(w <= 72);
    mass += c;
  }
  CHECK(mass == 9);
  CHECK_THROWS_AS(dual_weight(t, spec, {0}), ParameterError);
  CHECK_THROWS_AS(dual_weight(t, CodeSpec::sp_code(Sign::minus, 1), {1}), ParameterError);
  CHECK_THROWS_AS(cell_profile(t, CodeSpec::o_code(Sign::minus, 2, 1)), ParameterError);
  CHECK(describe(spec) == "O(minus, n=1, i=1)");
  CHECK(describe(CodeSpec::sp_code(Sign::plus, 2)) == "Sp(plus, n=2)");
}
