#include <doctest.h>

#include "kloos/recursion.hpp"

using namespace kloos;

namespace {

using Dist = std::map<long, BigInt>;

// Weight distribution of the F_3-span of the rows.
Dist span_weights(const std::vector<std::vector<int>>& rows) {
  const std::size_t n = rows.front().size();
  Dist hist;
  std::vector<int> c(rows.size(), 0);
  while (true) {
    int w = 0;
    for (std::size_t j = 0; j < n; ++j) {
      int s = 0;
      for (std::size_t k = 0; k < rows.size(); ++k) s += c[k] * rows[k][j];
      if (s % 3) ++w;
    }
    hist[w] += 1;
    std::size_t k = 0;
    while (k < c.size() && ++c[k] == 3) c[k++] = 0;
    if (k == c.size()) break;
  }
  return hist;
}

}  // namespace

TEST_CASE("Pless identities on textbook ternary codes") {
  const Dist tetracode = span_weights({{1, 0, 1, 1}, {0, 1, 1, 2}});
  CHECK(tetracode == Dist{{0, 1}, {3, 8}});
  const Dist repetition = span_weights({{1, 1, 1}});
  const Dist zero_sum = span_weights({{1, 2, 0}, {0, 1, 2}});
  for (int h = 0; h <= 6; ++h) {
    CAPTURE(h);
    CHECK(pless_check(tetracode, tetracode, 2, 4, h, 3));
    CHECK(pless_check(repetition, zero_sum, 1, 3, h, 3));
    CHECK(pless_check(zero_sum, repetition, 2, 3, h, 3));
  }
  // a wrong dual must be caught for some h
  const Dist wrong{{0, 1}, {1, 2}};
  bool any_false = false;
  for (int h = 1; h <= 4; ++h) any_false = any_false || !pless_check(zero_sum, wrong, 2, 3, h, 3);
  CHECK(any_false);
  CHECK_THROWS_AS(pless_check(tetracode, repetition, 2, 4, 1, 3), ParameterError);
  CHECK_THROWS_AS(pless_check(tetracode, tetracode, 5, 4, 1, 3), ParameterError);
  CHECK_THROWS_AS(pless_rhs({1}, 4, 2, 2, 3), ParameterError);
}

TEST_CASE("recursion at h = 1 for the smallest family") {
  const FieldTable t = FieldTable::build(1);
  const RecursionReport rep = t12sk_recursive_odd(1, t, 1, 1);
  CHECK(rep.lhs == -3);
  CHECK(rep.rhs == -3);
  CHECK(rep.t12sk_solved == -2);
  CHECK(rep.t12sk_direct == -2);
  CHECK(rep.match);
  CHECK(rep.routes_agree);
  REQUIRE_FALSE(rep.trace.empty());
  CHECK(rep.trace.front().name == "coefficient");
  CHECK(rep.trace.front().value == BigRational(3, 2));
}

TEST_CASE("odd and even chains solve to the direct moments") {
  for (int r = 1; r <= 2; ++r) {
    const FieldTable t = FieldTable::build(r);
    for (int n : {1, 3, 5}) {
      for (int i : {1, 2}) {
        for (const RecursionReport& rep : recursion_chain(Sign::minus, n, t, 8, i)) {
          CAPTURE(n);
          CAPTURE(rep.h);
          CHECK(rep.match);
          CHECK(rep.routes_agree);
          CHECK(rep.t12sk_direct == moment(t, MomentKind::T12SK, rep.h));
        }
      }
    }
    for (int n : {2, 4}) {
      for (int i : {1, 2}) {
        for (const RecursionReport& rep : recursion_chain(Sign::plus, n, t, 5, i)) {
          CAPTURE(n);
          CAPTURE(rep.h);
          CHECK(rep.match);
          CHECK(rep.routes_agree);
          CHECK(rep.t12sk_direct == moment(t, MomentKind::T12SK, 2 * rep.h));
        }
      }
    }
  }
}

TEST_CASE("direct lower-order moments give the same right-hand sides") {
  const FieldTable t = FieldTable::build(2);
  const auto solved = recursion_chain(Sign::minus, 3, t, 6, 1, LowerOrder::solved);
  const auto direct = recursion_chain(Sign::minus, 3, t, 6, 1, LowerOrder::direct);
  REQUIRE(solved.size() == direct.size());
  for (std::size_t k = 0; k < solved.size(); ++k) CHECK(solved[k].rhs == direct[k].rhs);
}

TEST_CASE("recursion preconditions") {
  const FieldTable t = FieldTable::build(1);
  CHECK_THROWS_AS(recursion_chain(Sign::minus, 1, t, 9, 1), ParameterError);
  CHECK_THROWS_AS(recursion_chain(Sign::plus, 2, t, 7, 1), ParameterError);
  CHECK_THROWS_AS(recursion_chain(Sign::minus, 1, t, 0, 1), ParameterError);
  CHECK_THROWS_AS(recursion_chain(Sign::minus, 2, t, 1, 1), ParameterError);
  CHECK_THROWS_AS(t12sk_recursive_odd(2, t, 1, 1), ParameterError);
  CHECK_THROWS_AS(t12sk_recursive_even(1, t, 1, 1), ParameterError);
}

TEST_CASE("SK identities do not depend on i") {
  for (int r = 1; r <= 2; ++r) {
    const FieldTable t = FieldTable::build(r);
    for (int h = 1; h <= 4; ++h) {
      for (auto [sign, n] : std::vector<std::pair<Sign, int>>{{Sign::minus, 1}, {Sign::minus, 3}, {Sign::plus, 2}}) {
        const auto a = sk_identity_report(sign, n, t, h, 1);
        const auto b = sk_identity_report(sign, n, t, h, 2);
        CHECK(a.match);
        CHECK(a.lhs == b.lhs);
        CHECK(a.rhs == b.rhs);
      }
    }
  }
  CHECK(sk_identity(Sign::plus, 4, FieldTable::build(1), 3, 1));
  CHECK_THROWS_AS(sk_identity(Sign::minus, 1, FieldTable::build(1), 9, 1), ParameterError);
}

TEST_CASE("closed-form dual moments satisfy Pless") {
  for (int r = 1; r <= 3; ++r) {
    const FieldTable t = FieldTable::build(r);
    for (int h = 0; h <= 5; ++h) {
      CHECK(pless_dual_moment_check(t, CodeSpec::o_code(Sign::minus, 1, 1), h));
      CHECK(pless_dual_moment_check(t, CodeSpec::o_code(Sign::minus, 3, 2), h));
      CHECK(pless_dual_moment_check(t, CodeSpec::o_code(Sign::plus, 2, 1), h));
    }
  }
  CHECK_THROWS_AS(pless_dual_moment_check(FieldTable::build(1), CodeSpec::o_code(Sign::minus, 1, 1), 13),
                  ParameterError);
}
