#pragma once

// Kloosterman sums and their power moments over F_{3^r}, all exact.

#include <cstdint>
#include <string>
#include <vector>

#include "kloos/finite_field.hpp"

namespace kloos {

enum class MomentKind { MK, SK, T0SK, T12SK };

std::string to_string(MomentKind k);
MomentKind parse_moment_kind(const std::string& text);

/// delta(m, q; beta) for every beta, indexed by element index.
struct DeltaTable {
  int m = 0;
  std::vector<std::uint64_t> values;

  std::uint64_t at(FieldElement beta) const { return values[beta.index]; }
};

/// K(lambda; a) for a != 0.
BigInt kloosterman(const FieldTable& t, FieldElement a);

/// K(lambda; a) for every a (entry 0 unused, set to 0). O(q^2).
std::vector<BigInt> kloosterman_all(const FieldTable& t);

/// GL(deg, q) Kloosterman sum through the three-term recursion in deg.
BigInt kloosterman_gl(const FieldTable& t, int deg, FieldElement a);

/// Counts of m-tuples in (F_q^*)^m with sum(alpha + 1/alpha) = beta, by
/// m-fold convolution. Requires 0 <= m <= 6.
DeltaTable delta_table(const FieldTable& t, int m);

/// Same counts by direct tuple enumeration; m <= 2 and q <= 9 only.
DeltaTable delta_table_by_tuples(const FieldTable& t, int m);

/// delta(1, q; beta) from the square class of beta^2 - 1.
int delta1_via_squares(const FieldTable& t, FieldElement beta);

/// MK^h, SK^h, T0SK^h or T12SK^h by direct summation; 0 <= h <= 12.
BigInt moment(const FieldTable& t, MomentKind kind, int h);

/// Same, reusing a precomputed kloosterman_all() table.
BigInt moment(const FieldTable& t, const std::vector<BigInt>& kl, MomentKind kind, int h);

/// M_h = #{alpha in (F_q^*)^h : sum alpha = 1 = sum 1/alpha}, by a joint
/// convolution over (sum alpha, sum 1/alpha). M_0 = 0.
BigInt salie_count(const FieldTable& t, int h);

/// MK^h == q^2 M_{h-1} - (q-1)^{h-1} + 2(-1)^{h-1}, for 1 <= h <= 5.
bool salie_check(const FieldTable& t, int h);

/// sum over nonsingular symmetric r x r B and h in F_q^r of lambda(h^T B h).
/// Brute force; needs r <= 2 and q <= 9.
BigInt a_r_sum(const FieldTable& t, int r);
/// Closed form: q^{r(r+2)/4} prod_{j<=r/2} (q^{2j-1} - 1) for even r, else 0.
BigInt a_r_formula(long q, int r);

/// sum_{a != 0} lambda(-a beta) K(lambda; a^2)^m == q delta(m,q;beta) - (q-1)^m.
bool incomplete_moment_identity(const FieldTable& t, int m, FieldElement beta);

/// sum_beta delta(m, q; beta) lambda(a beta) == K(lambda; a^2)^m.
bool char_delta_identity(const FieldTable& t, int m, FieldElement a);

}  // namespace kloos
