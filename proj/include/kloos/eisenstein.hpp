#pragma once

#include <array>
#include <string>

#include "kloos/common.hpp"

namespace kloos {

/// a + b*w in Z[w], w a primitive cube root of unity (w^2 = -1 - w).
/// All cube-root character sums are accumulated here; nothing in the
/// library ever touches complex floating point.
class EisensteinInt {
 public:
  EisensteinInt() = default;
  EisensteinInt(BigInt a, BigInt b) : a_(std::move(a)), b_(std::move(b)) {}
  explicit EisensteinInt(const BigInt& a) : a_(a), b_(0) {}

  /// w^k for k in {0,1,2}.
  static EisensteinInt root(int k);

  /// n0 + n1*w + n2*w^2 for a histogram of exponents.
  static EisensteinInt from_counts(const BigInt& n0, const BigInt& n1, const BigInt& n2);
  static EisensteinInt from_counts(const std::array<BigInt, 3>& n) {
    return from_counts(n[0], n[1], n[2]);
  }

  const BigInt& a() const { return a_; }
  const BigInt& b() const { return b_; }

  bool is_rational() const { return b_ == 0; }
  EisensteinInt conjugate() const { return {a_ - b_, -b_}; }

  /// Twice the real part, which is always an integer: 2a - b.
  BigInt twice_real() const { return 2 * a_ - b_; }

  EisensteinInt& operator+=(const EisensteinInt& o);
  EisensteinInt& operator-=(const EisensteinInt& o);
  EisensteinInt& operator*=(const EisensteinInt& o);

  friend EisensteinInt operator+(EisensteinInt x, const EisensteinInt& y) { return x += y; }
  friend EisensteinInt operator-(EisensteinInt x, const EisensteinInt& y) { return x -= y; }
  friend EisensteinInt operator*(EisensteinInt x, const EisensteinInt& y) { return x *= y; }
  friend EisensteinInt operator-(const EisensteinInt& x) { return {-x.a_, -x.b_}; }
  friend bool operator==(const EisensteinInt& x, const EisensteinInt& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }

  std::string str() const;

 private:
  BigInt a_ = 0;
  BigInt b_ = 0;
};

EisensteinInt pow(EisensteinInt base, unsigned exp);

}  // namespace kloos
