#pragma once

// Recursive formulas for the power moments T12SK^h of Kloosterman sums with
// trace-nonzero square arguments, evaluated in exact rational arithmetic and
// checked against the directly summed moments.

#include <map>
#include <string>
#include <vector>

#include "kloos/weight_dist.hpp"

namespace kloos {

struct NamedTerm {
  std::string name;
  BigRational value;
};

struct RecursionReport {
  Sign sign = Sign::minus;
  int n = 1;
  int i = 1;
  long q = 3;
  /// Odd n: the unknown is T12SK^h. Even n: the unknown is T12SK^{2h}.
  int h = 1;

  BigRational lhs;  // coefficient * directly computed moment
  BigRational rhs;  // right-hand side from weight counts and lower moments
  BigRational derivation_rhs;  // same quantity via Pless sums of both codes
  /// rhs / coefficient; integral whenever match holds.
  BigRational t12sk_solved;
  BigInt t12sk_direct;

  bool match = false;
  bool routes_agree = false;
  std::vector<NamedTerm> trace;
};

/// Where the lower-order T12SK values on the right-hand side come from.
enum class LowerOrder {
  solved,  // the chain's own earlier outputs
  direct,  // independently summed moments (localises a failure to one h)
};

/// Evaluates the recursion for h = 1..h_max. Minus sign needs odd n and
/// h_max <= 8; plus sign needs even n and h_max <= 6.
std::vector<RecursionReport> recursion_chain(Sign sign, int n, const FieldTable& t, int h_max, int i,
                                             LowerOrder lower = LowerOrder::solved);

RecursionReport t12sk_recursive_odd(int n, const FieldTable& t, int h, int i);
RecursionReport t12sk_recursive_even(int n, const FieldTable& t, int h, int i);

/// General Pless right-hand side
///   sum_{j<=min(n,h)} (-1)^j B_j^perp sum_{t=j}^h t! S(h,t) Q^{k-t} (Q-1)^{t-j} C(n-j, n-t)
/// with alphabet size Q. dual_counts must cover j = 0..min(n,h).
BigRational pless_rhs(const std::vector<BigInt>& dual_counts, const BigInt& length, long k, int h, long alphabet);

/// sum_j j^h B_j == pless_rhs(B^perp) for complete distributions (weight ->
/// count). Throws ParameterError if the masses are not alphabet^k and
/// alphabet^{n-k}.
bool pless_check(const std::map<long, BigInt>& code_weights, const std::map<long, BigInt>& dual_weights, long dim_k,
                 long length_n, int h, long alphabet);

struct SkIdentityReport {
  BigRational lhs;
  BigRational rhs;
  bool match = false;
};

/// Symplectic-side identity linking SK moments to the symplectic code
/// weights. i selects N_i, which is the same for both i.
SkIdentityReport sk_identity_report(Sign sign, int n, const FieldTable& t, int h, int i);
bool sk_identity(Sign sign, int n, const FieldTable& t, int h, int i);

/// sum_{a != 0} w(c(a))^h from the closed-form dual weights equals the Pless
/// right-hand side built from the code's own weight counts.
bool pless_dual_moment_check(const FieldTable& t, const CodeSpec& spec, int h);

}  // namespace kloos
