#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kloos {

using BigInt = mpz_class;

/// Exact rational; gmp keeps it canonical (reduced, positive denominator)
/// as long as every constructor path goes through make_rational().
using BigRational = mpq_class;

/// Input outside a documented precondition (bad r, parity, range, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A field/modulus that cannot be built (e.g. reducible modulus).
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal invariant that must hold for every valid input failed.
/// Seeing one means a transcription or arithmetic bug.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline BigInt big_pow(const BigInt& base, unsigned long exp) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

inline BigInt big_pow(long base, unsigned long exp) {
  return big_pow(BigInt(base), exp);
}

/// num / den, throwing ConsistencyError if the division is not exact.
inline BigInt exact_div(const BigInt& num, const BigInt& den, const char* what) {
  if (den == 0) throw ConsistencyError(std::string("division by zero in ") + what);
  if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) {
    throw ConsistencyError(std::string("non-integral quotient in ") + what + ": " +
                           num.get_str() + " / " + den.get_str());
  }
  BigInt out;
  mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

inline BigRational make_rational(const BigInt& num, const BigInt& den = 1) {
  BigRational out(num, den);
  out.canonicalize();
  return out;
}

/// 2^e as a rational for any signed exponent.
inline BigRational pow2(long e) {
  if (e >= 0) return make_rational(big_pow(2, static_cast<unsigned long>(e)));
  return make_rational(1, big_pow(2, static_cast<unsigned long>(-e)));
}

inline BigRational pow3(long e) {
  if (e >= 0) return make_rational(big_pow(3, static_cast<unsigned long>(e)));
  return make_rational(1, big_pow(3, static_cast<unsigned long>(-e)));
}

inline bool is_integer(const BigRational& x) { return x.get_den() == 1; }

inline std::string to_string(const BigInt& x) { return x.get_str(); }
inline std::string to_string(const BigRational& x) { return x.get_str(); }

}  // namespace kloos
