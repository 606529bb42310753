#include <doctest.h>

#include <set>

#include "kloos/group_oracle.hpp"
#include "kloos/weight_dist.hpp"

using namespace kloos;

TEST_CASE("matrix helpers") {
  const FieldTable t = FieldTable::build(2);
  MatrixGF a = MatrixGF::identity(3);
  a.set(0, 1, {5});
  a.set(2, 0, {7});
  const auto inv = inverse(t, a);
  REQUIRE(inv.has_value());
  CHECK(multiply(t, a, *inv) == MatrixGF::identity(3));
  CHECK(multiply(t, *inv, a) == MatrixGF::identity(3));
  CHECK(transpose(transpose(a)) == a);
  MatrixGF singular = MatrixGF::zero(2);
  singular.set(0, 0, {1});
  CHECK_FALSE(inverse(t, singular).has_value());
  CHECK(matrix_trace(t, MatrixGF::identity(3)) == t.zero());  // 3 = 0
  for (int n = 1; n <= 2; ++n) {
    CHECK(is_orthogonal(t, gram_matrix(n)));
    CHECK(is_orthogonal(t, rho_matrix(n)));
    for (int r = 0; r <= n; ++r) CHECK(is_orthogonal(t, sigma_matrix(n, r)));
  }
  CHECK_THROWS_AS(sigma_matrix(1, 2), ParameterError);
}

TEST_CASE("Q is a subgroup of the expected order") {
  const FieldTable f3 = FieldTable::build(1);
  const FieldTable f9 = FieldTable::build(2);
  CHECK(build_Q(1, f3).size() == 6);
  CHECK(build_Q(1, f9).size() == 72);
  const auto q5 = build_Q(2, f3);
  CHECK(q5.size() == 1296);
  for (const MatrixGF& w : q5) CHECK(block_relations_hold(f3, w));

  const auto q3 = build_Q(1, f9);
  const std::set<MatrixGF> set(q3.begin(), q3.end());
  for (const MatrixGF& x : q3) {
    CHECK(set.count(*inverse(f9, x)));
    for (const MatrixGF& y : q3) REQUIRE(set.count(multiply(f9, x, y)));
  }
  CHECK(enumerate_gl(2, f3).size() == 48);
  CHECK_THROWS_AS(build_Q(3, f3), ParameterError);
  CHECK_THROWS_AS(build_Q(2, f9), ParameterError);
  CHECK_THROWS_AS(build_Q(1, FieldTable::build(3)), ParameterError);
}

TEST_CASE("block relations reject a non-orthogonal matrix") {
  const FieldTable t = FieldTable::build(1);
  MatrixGF w = MatrixGF::identity(3);
  CHECK(block_relations_hold(t, w));
  w.set(0, 0, {2});  // tAD = 2
  CHECK_FALSE(block_relations_hold(t, w));
  CHECK(block_relations_hold(t, gram_matrix(1)));
  w = gram_matrix(1);
  w.set(2, 2, {2});
  CHECK(block_relations_hold(t, w));
  w.set(0, 2, {1});
  CHECK_FALSE(block_relations_hold(t, w));
  CHECK_FALSE(is_orthogonal(t, w));
}

TEST_CASE("smallest double cosets") {
  const FieldTable t = FieldTable::build(1);
  const CosetEnumeration e1 = enumerate_double_coset({Sign::minus, 1, 1, 3}, t);
  CHECK(e1.elements.size() == 6);
  CHECK(e1.trace_histogram == std::vector<std::uint64_t>{3, 0, 3});
  const CosetEnumeration e2 = enumerate_double_coset({Sign::minus, 1, 2, 3}, t);
  CHECK(e2.trace_histogram == std::vector<std::uint64_t>{3, 3, 0});

  // a = 1: lambda(1) A K(1) = -3w and lambda(-1) A K(1) = -3w^2
  CHECK(coset_exp_sum(e1, t, {1}) == EisensteinInt(BigInt(0), BigInt(-3)));
  CHECK(coset_exp_sum(e2, t, {1}) == EisensteinInt(BigInt(3), BigInt(3)));
  CHECK_THROWS_AS(coset_exp_sum(e1, t, {0}), ParameterError);

  const CosetEnumeration p = enumerate_double_coset({Sign::plus, 2, 1, 3}, t);
  CHECK(p.elements.size() == 1296);
  CHECK(coset_exp_sum(p, t, {1}) == EisensteinInt(BigInt(0), BigInt(81 * 7)));
  const CellProfile profile = cell_profile(t, CodeSpec::o_code(Sign::plus, 2, 1));
  for (std::uint32_t v = 0; v < 3; ++v) CHECK(profile.at({v}) == p.count({v}));

  CHECK_THROWS_AS(enumerate_double_coset({Sign::minus, 3, 1, 3}, t), ParameterError);
  CHECK_THROWS_AS(enumerate_double_coset({Sign::minus, 1, 1, 9}, t), ParameterError);
}

TEST_CASE("O(3,q) by exhaustive search") {
  const FieldTable f3 = FieldTable::build(1);
  const auto o3 = enumerate_O3(f3);
  CHECK(o3.size() == 48);
  const std::set<MatrixGF> group(o3.begin(), o3.end());
  for (int i : {1, 2}) {
    for (const MatrixGF& w : enumerate_double_coset({Sign::minus, 1, i, 3}, f3).elements) CHECK(group.count(w));
  }
  for (const MatrixGF& w : o3) CHECK(block_relations_hold(f3, w));

  const FieldTable f9 = FieldTable::build(2);
  const auto single = enumerate_O3(f9, 1);
  CHECK(single.size() == 1440);
  CHECK(enumerate_O3(f9, 3) == single);
  CHECK_THROWS_AS(enumerate_O3(FieldTable::build(3)), ParameterError);
}

TEST_CASE("Bruhat quotient sizes") {
  for (int r = 1; r <= 2; ++r) {
    const FieldTable t = FieldTable::build(r);
    for (int k = 0; k <= 1; ++k) CHECK(bruhat_quotient_size(1, k, t) == bruhat_sizes(1, t.q(), k).cosets);
  }
  CHECK_THROWS_AS(bruhat_quotient_size(1, 2, FieldTable::build(1)), ParameterError);
}

TEST_CASE("explicit codes") {
  const FieldTable f3 = FieldTable::build(1);
  const ExplicitCode c = explicit_code({Sign::minus, 1, 1, 3}, f3);
  CHECK(c.length() == 6);
  REQUIRE(c.kernel_words.has_value());
  CHECK(c.kernel_words->size() == 243);
  const auto kernel = c.kernel_weight_distribution();
  CHECK(kernel.at(0) == 1);
  CHECK(kernel.at(1) == 6);
  std::multiset<int> dual_weights;
  for (const Word& w : c.dual_words) dual_weights.insert(hamming_weight(w));
  CHECK(dual_weights == std::multiset<int>{0, 3, 3});
  CHECK(c.delsarte_consistent);
  CHECK(c.injective);
  CHECK(c.dual_rank == 1);

  const FieldTable f9 = FieldTable::build(2);
  const ExplicitCode c9 = explicit_code({Sign::minus, 1, 1, 9}, f9);
  CHECK(c9.dual_words.size() == 9);
  CHECK(c9.injective);
  CHECK(c9.delsarte_consistent);
  CHECK_FALSE(c9.kernel_words.has_value());
  CHECK_THROWS_AS(c9.kernel_weight_distribution(), ParameterError);
}

TEST_CASE("brute-force low weights match the cell-profile counts") {
  const FieldTable f9 = FieldTable::build(2);
  const ExplicitCode c9 = explicit_code({Sign::minus, 1, 2, 9}, f9);
  const auto brute9 = brute_force_low_weights(c9.coordinates, f9, 4);
  const WeightCounts wc9 = weight_counts(f9, cell_profile(f9, CodeSpec::o_code(Sign::minus, 1, 2)), 4);
  CHECK(brute9 == wc9.prefix);

  const FieldTable f3 = FieldTable::build(1);
  const ExplicitCode c5 = explicit_code({Sign::plus, 2, 2, 3}, f3);
  CHECK(c5.length() == 1296);
  const auto brute5 = brute_force_low_weights(c5.coordinates, f3, 2);
  const WeightCounts wc5 = weight_counts(f3, cell_profile(f3, CodeSpec::o_code(Sign::plus, 2, 2)), 2);
  CHECK(brute5 == wc5.prefix);

  CHECK_THROWS_AS(brute_force_low_weights(c5.coordinates, f3, 5), ParameterError);
  CHECK_THROWS_AS(brute_force_low_weights(c5.coordinates, f3, -1), ParameterError);
}
