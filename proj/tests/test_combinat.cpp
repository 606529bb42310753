#include <doctest.h>

#include "kloos/combinat.hpp"
#include "kloos/eisenstein.hpp"

using namespace kloos;

namespace {

BigInt pascal(long n, long k) {
  if (k < 0 || k > n) return 0;
  std::vector<BigInt> row{1};
  for (long i = 1; i <= n; ++i) {
    std::vector<BigInt> next(static_cast<std::size_t>(i) + 1, BigInt(1));
    for (long j = 1; j < i; ++j) next[static_cast<std::size_t>(j)] = row[static_cast<std::size_t>(j - 1)] + row[static_cast<std::size_t>(j)];
    row = std::move(next);
  }
  return row[static_cast<std::size_t>(k)];
}

// |O(2n+1,q)| = 2 q^{n^2} prod_{i=1}^n (q^{2i} - 1)
BigInt orthogonal_order(int n, long q) {
  BigInt out = 2 * big_pow(q, static_cast<unsigned long>(n * n));
  for (int i = 1; i <= n; ++i) out *= big_pow(q, static_cast<unsigned long>(2 * i)) - 1;
  return out;
}

}  // namespace

TEST_CASE("Eisenstein integers") {
  const EisensteinInt w = EisensteinInt::root(1);
  const EisensteinInt one(BigInt(1));
  CHECK(w * w == EisensteinInt::root(2));
  CHECK(w * w * w == one);
  CHECK(one + w + w * w == EisensteinInt());
  CHECK(w.conjugate() == EisensteinInt::root(2));
  CHECK(EisensteinInt::from_counts(3, 0, 3) == EisensteinInt(BigInt(0), BigInt(-3)));
  CHECK(EisensteinInt::from_counts(2, 2, 2) == EisensteinInt());
  CHECK(pow(w, 7) == w);
  CHECK((w * EisensteinInt(BigInt(5), BigInt(2))).twice_real() == (EisensteinInt(BigInt(5), BigInt(2)) * w).twice_real());
  CHECK(EisensteinInt(BigInt(4), BigInt(1)).twice_real() == 7);
  CHECK(EisensteinInt(BigInt(-2), BigInt(0)).is_rational());
}

TEST_CASE("Stirling numbers satisfy the triangular recurrence") {
  for (int h = 1; h <= 12; ++h) {
    for (int t = 1; t <= h; ++t) {
      CHECK(stirling2(h, t) == t * stirling2(h - 1, t) + stirling2(h - 1, t - 1));
    }
    CHECK(stirling2(h, h + 1) == 0);
  }
  CHECK(stirling2(0, 0) == 1);
  CHECK(stirling2(5, 0) == 0);
  CHECK(stirling2(6, 3) == 90);
  CHECK_THROWS_AS(stirling2(-1, 0), ParameterError);
}

TEST_CASE("Gaussian binomials") {
  for (long q : {3L, 9L}) {
    for (int n = 1; n <= 7; ++n) {
      for (int r = 1; r < n; ++r) {
        // [n, r] = [n-1, r-1] + q^r [n-1, r]
        CHECK(qbinom(n, r, q) == qbinom(n - 1, r - 1, q) + big_pow(q, static_cast<unsigned long>(r)) * qbinom(n - 1, r, q));
      }
      CHECK(qbinom(n, 0, q) == 1);
      CHECK(qbinom(n, n, q) == 1);
      CHECK(qbinom(n, n + 1, q) == 0);
      CHECK(qbinom(n, -1, q) == 0);
    }
  }
  CHECK(qbinom(2, 1, 3) == 4);
}

TEST_CASE("binomials and multinomials for huge tops") {
  for (long n = 0; n <= 20; ++n) {
    for (int k = 0; k <= 8; ++k) CHECK(binom_small(n, k) == pascal(n, k));
  }
  const BigInt huge = big_pow(3, 40);
  CHECK(binom_small(huge, 2) == huge * (huge - 1) / 2);
  CHECK(binom_small(-1, 2) == 0);
  CHECK(multinom3(6, 2, 3) == 60);
  CHECK(multinom3(huge, 1, 1) == huge * (huge - 1));
  CHECK(multinom3(4, 3, 2) == 0);
  CHECK(factorial(10) == 3628800);
}

TEST_CASE("coset constants at small parameters") {
  const CosetConstants m13 = constants(Sign::minus, 1, 3);
  CHECK(m13.A == 3);
  CHECK(m13.B == 2);
  CHECK(m13.N == 6);
  const CosetConstants p23 = constants(Sign::plus, 2, 3);
  CHECK(p23.A == 81);
  CHECK(p23.B == 16);
  CHECK(p23.N == 1296);
  for (long q : {3L, 9L, 27L}) {
    for (int n : {1, 3, 5}) CHECK(constants(Sign::minus, n, q).N == constants(Sign::minus, n, q).A * constants(Sign::minus, n, q).B);
    for (int n : {2, 4}) CHECK(constants(Sign::plus, n, q).N == constants(Sign::plus, n, q).A * constants(Sign::plus, n, q).B);
  }
  // the two double cosets of a family agree with the Bruhat cell sizes
  CHECK(constants(Sign::minus, 3, 9).N == bruhat_sizes(3, 9, 2).double_coset);
  CHECK(constants(Sign::plus, 4, 3).N == bruhat_sizes(4, 3, 2).double_coset);
}

TEST_CASE("Bruhat cells tile the orthogonal group") {
  for (long q : {3L, 9L, 27L}) {
    for (int n = 1; n <= 4; ++n) {
      BigInt total = 0;
      const BigInt q_order = gl_order(n, q) * big_pow(q, static_cast<unsigned long>(n * (n + 1) / 2));
      for (int r = 0; r <= n; ++r) {
        const BruhatSizes b = bruhat_sizes(n, q, r);
        CHECK(b.double_coset == b.cosets * q_order);
        total += 2 * b.double_coset;
      }
      CAPTURE(n);
      CAPTURE(q);
      CHECK(total == orthogonal_order(n, q));
    }
  }
}

TEST_CASE("GL orders") {
  CHECK(gl_order(1, 3) == 2);
  CHECK(gl_order(2, 3) == 48);
  CHECK(gl_order(3, 3) == 11232);
  CHECK(gl_order(2, 9) == 80 * 72);
}

TEST_CASE("family validation") {
  CHECK_NOTHROW(CosetFamily{Sign::minus, 3, 2, 9}.validate());
  CHECK_THROWS_AS((CosetFamily{Sign::minus, 2, 1, 3}.validate()), ParameterError);
  CHECK_THROWS_AS((CosetFamily{Sign::plus, 1, 1, 3}.validate()), ParameterError);
  CHECK_THROWS_AS((CosetFamily{Sign::minus, 1, 3, 3}.validate()), ParameterError);
  CHECK_THROWS_AS((CosetFamily{Sign::minus, 0, 1, 3}.validate()), ParameterError);
  CHECK(parse_sign("-") == Sign::minus);
  CHECK(parse_sign("plus") == Sign::plus);
  CHECK_THROWS_AS(parse_sign("x"), ParameterError);
}
