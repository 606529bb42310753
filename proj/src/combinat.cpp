#include "kloos/combinat.hpp"

namespace kloos {

std::string to_string(Sign s) { return s == Sign::minus ? "minus" : "plus"; }

Sign parse_sign(const std::string& text) {
  if (text == "minus" || text == "-") return Sign::minus;
  if (text == "plus" || text == "+") return Sign::plus;
  throw ParameterError("sign must be 'minus' or 'plus', got '" + text + "'");
}

void CosetFamily::validate() const {
  if (n < 1) throw ParameterError("n must be positive");
  if (sign == Sign::minus && n % 2 == 0) throw ParameterError("minus families need odd n, got " + std::to_string(n));
  if (sign == Sign::plus && n % 2 != 0) throw ParameterError("plus families need even n, got " + std::to_string(n));
  if (i != 1 && i != 2) throw ParameterError("i must be 1 or 2");
  if (q < 3) throw ParameterError("q must be a power of 3");
}

BigInt factorial(int k) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(k));
  return out;
}

BigInt stirling2(int h, int t) {
  if (h < 0 || t < 0) throw ParameterError("stirling2 arguments must be nonnegative");
  if (t > h) return 0;
  BigInt sum = 0;
  for (int j = 0; j <= t; ++j) {
    BigInt term = binom_small(t, j) * big_pow(j, static_cast<unsigned long>(h));
    if ((t - j) % 2) {
      sum -= term;
    } else {
      sum += term;
    }
  }
  return exact_div(sum, factorial(t), "stirling2");
}

BigInt qbinom(int n, int r, long q) {
  if (r < 0 || r > n) return 0;
  BigInt num = 1;
  BigInt den = 1;
  for (int j = 0; j < r; ++j) {
    num *= big_pow(q, static_cast<unsigned long>(n - j)) - 1;
    den *= big_pow(q, static_cast<unsigned long>(r - j)) - 1;
  }
  return exact_div(num, den, "qbinom");
}

BigInt binom_small(const BigInt& c, int k) {
  if (k < 0 || c < 0 || c < k) return 0;
  BigInt num = 1;
  for (int m = 0; m < k; ++m) num *= c - m;
  return exact_div(num, factorial(k), "binom_small");
}

BigInt multinom3(const BigInt& c, int a, int b) {
  if (a < 0 || b < 0) throw ParameterError("multinom3 lower arguments must be nonnegative");
  if (c < a + b) return 0;
  BigInt num = 1;
  for (int m = 0; m < a + b; ++m) num *= c - m;
  return exact_div(num, factorial(a) * factorial(b), "multinom3");
}

namespace {

unsigned long quarter_exponent(long numerator, const char* what) {
  if (numerator < 0 || numerator % 4 != 0) {
    throw ConsistencyError(std::string("non-integral q-exponent in ") + what);
  }
  return static_cast<unsigned long>(numerator / 4);
}

}  // namespace

CosetConstants constants(Sign sign, int n, long q) {
  CosetFamily fam{sign, n, 1, q};
  fam.validate();
  CosetConstants out;
  const long nn = n;
  if (sign == Sign::minus) {
    BigInt a = big_pow(q, quarter_exponent(5 * nn * nn - 1, "A^-")) * qbinom(n, 1, q);
    BigInt b = big_pow(q, quarter_exponent((nn - 1) * (nn - 1), "B^-")) * (big_pow(q, static_cast<unsigned long>(n)) - 1);
    for (int j = 1; j <= (n - 1) / 2; ++j) {
      a *= big_pow(q, static_cast<unsigned long>(2 * j - 1)) - 1;
      b *= big_pow(q, static_cast<unsigned long>(2 * j)) - 1;
    }
    out.A = a;
    out.B = b;
  } else {
    BigInt a = big_pow(q, quarter_exponent(5 * nn * nn - 2 * nn, "A^+")) * qbinom(n, 2, q);
    BigInt b = big_pow(q, quarter_exponent((nn - 2) * (nn - 2), "B^+")) *
               (big_pow(q, static_cast<unsigned long>(n)) - 1) *
               (big_pow(q, static_cast<unsigned long>(n - 1)) - 1);
    for (int j = 1; j <= (n - 2) / 2; ++j) {
      a *= big_pow(q, static_cast<unsigned long>(2 * j - 1)) - 1;
      b *= big_pow(q, static_cast<unsigned long>(2 * j)) - 1;
    }
    out.A = a;
    out.B = b;
  }
  out.N = out.A * out.B;
  return out;
}

CosetConstants constants(const CosetFamily& fam) {
  fam.validate();
  return constants(fam.sign, fam.n, fam.q);
}

BigInt gl_order(int n, long q) {
  BigInt out = 1;
  for (int j = 0; j < n; ++j) {
    out *= big_pow(q, static_cast<unsigned long>(n)) - big_pow(q, static_cast<unsigned long>(j));
  }
  return out;
}

BruhatSizes bruhat_sizes(int n, long q, int r) {
  if (n < 1) throw ParameterError("bruhat_sizes: n must be positive");
  if (r < 0 || r > n) throw ParameterError("bruhat_sizes: need 0 <= r <= n");
  BruhatSizes out;
  const auto rr = static_cast<unsigned long>(r);
  out.cosets = big_pow(q, rr * (rr + 1) / 2) * qbinom(n, r, q);
  BigInt dc = big_pow(q, static_cast<unsigned long>(n) * static_cast<unsigned long>(n));
  for (int j = 1; j <= n; ++j) dc *= big_pow(q, static_cast<unsigned long>(j)) - 1;
  const unsigned long r_choose_2 = r > 0 ? rr * (rr - 1) / 2 : 0;
  dc *= big_pow(q, r_choose_2) * big_pow(q, rr) * qbinom(n, r, q);
  out.double_coset = dc;
  return out;
}

}  // namespace kloos
