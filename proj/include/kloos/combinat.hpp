#pragma once

#include <string>

#include "kloos/common.hpp"

namespace kloos {

enum class Sign { minus, plus };

std::string to_string(Sign s);
/// Accepts "minus"/"-" and "plus"/"+"; throws ParameterError otherwise.
Sign parse_sign(const std::string& text);

/// One of the four double cosets DC_i^-(n,q) (n odd) or DC_i^+(n,q) (n even)
/// inside O(2n+1,q).
struct CosetFamily {
  Sign sign = Sign::minus;
  int n = 1;
  int i = 1;
  long q = 3;

  /// Throws ParameterError on a parity/range violation.
  void validate() const;
};

/// Stirling numbers of the second kind from the alternating-sum formula.
/// Returns 0 for t > h.
BigInt stirling2(int h, int t);

/// Gaussian binomial [n, r]_q; 0 when r < 0 or r > n.
BigInt qbinom(int n, int r, long q);

/// Ordinary binomial C(c, k) for huge c and small k, as a falling factorial.
/// 0 when k > c or c < 0.
BigInt binom_small(const BigInt& c, int k);

/// c! / (a! b! (c-a-b)!), or 0 when a + b > c. c may be astronomically large;
/// evaluated as a falling factorial.
BigInt multinom3(const BigInt& c, int a, int b);

BigInt factorial(int k);

struct CosetConstants {
  BigInt A;
  BigInt B;
  BigInt N;  // A * B, the size of the double coset
};

/// A^{-+}(n,q), B^{-+}(n,q) and N = A*B for fam.sign / fam.n / fam.q.
CosetConstants constants(const CosetFamily& fam);
CosetConstants constants(Sign sign, int n, long q);

struct BruhatSizes {
  BigInt cosets;        // |B_r \ Q(2n+1,q)|
  BigInt double_coset;  // |Q sigma_r Q| = |rho Q sigma_r Q|
};

BruhatSizes bruhat_sizes(int n, long q, int r);

/// |GL(n,q)|
BigInt gl_order(int n, long q);

}  // namespace kloos
