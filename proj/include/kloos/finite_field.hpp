#pragma once

// Table-driven arithmetic in F_{3^r}, r <= 6.
//
// Elements are identified by the base-3 integer of their coefficient vector
// in the polynomial basis 1, x, ..., x^{r-1}: index = sum c_k 3^k. The prime
// subfield F_3 is therefore {0, 1, 2} with its natural arithmetic.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kloos/eisenstein.hpp"

namespace kloos {

struct FieldElement {
  std::uint32_t index = 0;

  friend auto operator<=>(const FieldElement&, const FieldElement&) = default;
};

struct FieldParams {
  int r = 1;
  int q = 3;
  /// modulus[k] is the coefficient of x^k, k = 0..r; modulus[r] == 1.
  std::vector<int> modulus;

  /// "3^r/c_r,...,c_0" (most significant coefficient first).
  std::string spec() const;
};

/// Built-in default modulus for 1 <= r <= 6 (low-to-high coefficients).
std::vector<int> default_modulus(int r);

/// Parses "3^r" or "3^r/c_r,...,c_0". Throws ParameterError on bad syntax.
struct ParsedFieldSpec {
  int r;
  std::optional<std::vector<int>> modulus;
};
ParsedFieldSpec parse_field_spec(const std::string& text);

/// Human-readable polynomial, e.g. "x^2+2x+2".
std::string poly_to_string(const std::vector<int>& low_to_high);

class FieldTable {
 public:
  /// Builds all tables. modulus (low-to-high, length r+1, monic) defaults to
  /// default_modulus(r). Throws ParameterError for r outside [1, 6] or a
  /// malformed modulus, ConstructionError for a reducible one.
  static FieldTable build(int r, std::optional<std::vector<int>> modulus = std::nullopt);
  static FieldTable from_spec(const std::string& text);

  const FieldParams& params() const { return params_; }
  int q() const { return params_.q; }
  int r() const { return params_.r; }

  FieldElement zero() const { return {0}; }
  FieldElement one() const { return {1}; }
  /// Image of an integer in the prime subfield.
  FieldElement from_int(long k) const {
    return {static_cast<std::uint32_t>(((k % 3) + 3) % 3)};
  }
  FieldElement element(std::uint32_t index) const;

  FieldElement add(FieldElement x, FieldElement y) const { return {add_[x.index * q_ + y.index]}; }
  FieldElement sub(FieldElement x, FieldElement y) const { return add(x, neg(y)); }
  FieldElement neg(FieldElement x) const { return {neg_[x.index]}; }
  FieldElement mul(FieldElement x, FieldElement y) const { return {mul_[x.index * q_ + y.index]}; }
  /// Throws ParameterError for x = 0.
  FieldElement inv(FieldElement x) const;
  FieldElement pow(FieldElement x, unsigned long e) const;
  FieldElement frobenius(FieldElement x) const { return {frob_[x.index]}; }
  /// k * x for an integer k (repeated addition in characteristic 3).
  FieldElement scale(long k, FieldElement x) const;

  /// Absolute trace to F_3, as 0, 1 or 2.
  int trace(FieldElement x) const { return trace_[x.index]; }
  /// Nonzero square test; false for 0.
  bool is_square(FieldElement x) const { return square_[x.index] != 0; }

  /// Coefficient k (0 <= k < r) of x in the polynomial basis.
  int coefficient(FieldElement x, int k) const;

  /// Size of the Frobenius orbit of x (divides r).
  int orbit_size(FieldElement x) const;

 private:
  FieldTable() = default;

  FieldParams params_;
  std::uint32_t q_ = 0;
  std::vector<std::uint16_t> add_;
  std::vector<std::uint16_t> mul_;
  std::vector<std::uint16_t> neg_;
  std::vector<std::uint16_t> inv_;
  std::vector<std::uint16_t> frob_;
  std::vector<std::uint8_t> trace_;
  std::vector<std::uint8_t> square_;
};

/// The canonical additive character lambda(x) = w^{tr x}.
EisensteinInt canonical_char(const FieldTable& t, FieldElement x);

/// Irreducibility over F_3 by trial division against all monic polynomials
/// of degree 1..deg/2. Returns a factor if reducible.
std::optional<std::vector<int>> find_factor_f3(const std::vector<int>& low_to_high);

}  // namespace kloos
