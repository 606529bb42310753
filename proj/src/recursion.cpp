#include "kloos/recursion.hpp"

#include <algorithm>

namespace kloos {

namespace {

BigRational rat(const BigInt& x) { return make_rational(x); }

BigRational rat_pow(const BigRational& base, unsigned long e) {
  BigRational out = 1;
  for (unsigned long k = 0; k < e; ++k) out *= base;
  return out;
}

BigRational int_pow_signed(long base, long e) {
  if (e >= 0) return rat(big_pow(base, static_cast<unsigned long>(e)));
  return make_rational(1, big_pow(base, static_cast<unsigned long>(-e)));
}

// (-1)^{j+1} + 2^{-j}
BigRational leading_coefficient(int j) { return BigRational(j % 2 ? 1 : -1) + pow2(-j); }

BigInt sign_pow(int j) { return j % 2 ? -1 : 1; }

// Everything one (sign, n, i, q) chain needs, computed once.
struct Pipeline {
  Sign sign;
  int n;
  int i;
  const FieldTable& t;
  long q;
  CosetConstants k;
  WeightCounts coset_counts;  // C_{i,j}
  WeightCounts sp_counts;     // C_j
  std::vector<BigInt> kl;

  Pipeline(Sign s, int n_, int i_, const FieldTable& field, int j_max)
      : sign(s), n(n_), i(i_), t(field), q(field.q()), k(constants(s, n_, field.q())) {
    const CodeSpec o = CodeSpec::o_code(s, n_, i_);
    const CodeSpec sp = CodeSpec::sp_code(s, n_);
    coset_counts = weight_counts(t, cell_profile(t, o), j_max);
    sp_counts = weight_counts(t, cell_profile(t, sp), j_max);
    kl = kloosterman_all(t);
  }

  // B - q^2 + q for plus, B for minus
  BigInt shifted_b() const { return sign == Sign::minus ? k.B : k.B - q * q + q; }

  int j_limit(int h) const {
    if (k.N < h) return static_cast<int>(k.N.get_si());
    return h;
  }
};

// q A^{-h} sum_j (-1)^j (C_{i,j} - C_j) sum_t t! S(h,t) 3^{h-t} 2^{t-h-j} C(N-j, N-t)
BigRational printed_difference_sum(const Pipeline& p, int h, std::vector<NamedTerm>* trace) {
  BigRational total = 0;
  for (int j = 0; j <= p.j_limit(h); ++j) {
    BigRational inner = 0;
    for (int s = j; s <= h; ++s) {
      inner += rat(factorial(s) * stirling2(h, s)) * pow3(h - s) * pow2(s - h - j) *
               rat(binom_small(p.k.N - j, s - j));
    }
    const BigRational term = rat(sign_pow(j) * (p.coset_counts.at(j) - p.sp_counts.at(j))) * inner;
    if (trace) trace->push_back({"difference_term[j=" + std::to_string(j) + "]", term});
    total += term;
  }
  return BigRational(p.q) * total / rat(big_pow(p.k.A, static_cast<unsigned long>(h)));
}

// Coefficient of the lower-order moment with index j (T12SK^j for minus,
// T12SK^{2j} for plus) in the moment expansion of sum_a w(c(a))^h, divided
// by (2/3)^h A^h.
BigRational expansion_coefficient(const Pipeline& p, int h, int j) {
  const BigInt choose = binom_small(h, j);
  const auto e = static_cast<unsigned long>(h - j);
  if (p.sign == Sign::minus) {
    return leading_coefficient(j) * rat(choose * big_pow(p.k.B, e));
  }
  const BigRational b1 = rat(p.k.B - p.q * p.q + p.q);
  const BigRational b2 = rat(p.k.B) + make_rational(p.q * p.q - p.q, 2);
  return rat(choose) * (BigRational(j % 2 ? 1 : -1) * rat_pow(b1, e) + pow2(-j) * rat_pow(b2, e));
}

RecursionReport evaluate_level(const Pipeline& p, int h, const std::vector<BigRational>& lower, const BigInt& direct) {
  RecursionReport rep;
  rep.sign = p.sign;
  rep.n = p.n;
  rep.i = p.i;
  rep.q = p.q;
  rep.h = h;
  rep.t12sk_direct = direct;

  const BigRational coef_h = leading_coefficient(h);
  const int j0 = p.sign == Sign::minus ? 1 : 0;

  BigRational first = 0;
  for (int j = j0; j < h; ++j) first -= expansion_coefficient(p, h, j) * lower[static_cast<std::size_t>(j)];
  const BigRational second = printed_difference_sum(p, h, &rep.trace);

  rep.trace.insert(rep.trace.begin(), {"difference_sum", second});
  rep.trace.insert(rep.trace.begin(), {"first_sum", first});
  rep.trace.insert(rep.trace.begin(), {"coefficient", coef_h});

  rep.rhs = first + second;
  rep.lhs = coef_h * rat(direct);
  rep.t12sk_solved = rep.rhs / coef_h;

  // Same right-hand side assembled from the two Pless sums.
  const std::vector<BigInt>& ci = p.coset_counts.prefix;
  const std::vector<BigInt>& cs = p.sp_counts.prefix;
  const BigRational pless_o = pless_rhs(ci, p.k.N, p.t.r(), h, 3);
  const BigRational pless_sp = pless_rhs(cs, p.k.N, p.t.r(), h, 3);
  const BigRational scale = rat_pow(make_rational(2, 3), static_cast<unsigned long>(h)) *
                            rat(big_pow(p.k.A, static_cast<unsigned long>(h)));
  rep.derivation_rhs = (pless_o - pless_sp) / scale + first;
  rep.trace.push_back({"pless_rhs_coset_code", pless_o});
  rep.trace.push_back({"pless_rhs_sp_code", pless_sp});

  // coefficient of the unknown in the expansion must be the leading one
  if (expansion_coefficient(p, h, h) != coef_h) {
    throw ConsistencyError("expansion coefficient at j = h disagrees with the leading coefficient");
  }

  rep.routes_agree = rep.derivation_rhs == rep.rhs;
  rep.match = rep.lhs == rep.rhs && is_integer(rep.t12sk_solved) && rep.t12sk_solved == rat(direct);
  return rep;
}

}  // namespace

BigRational pless_rhs(const std::vector<BigInt>& dual_counts, const BigInt& length, long k, int h, long alphabet) {
  if (h < 0) throw ParameterError("pless_rhs: h must be nonnegative");
  const int j_top = length < h ? static_cast<int>(length.get_si()) : h;
  if (static_cast<int>(dual_counts.size()) <= j_top) {
    throw ParameterError("pless_rhs: dual weight counts do not reach j = " + std::to_string(j_top));
  }
  BigRational total = 0;
  for (int j = 0; j <= j_top; ++j) {
    if (dual_counts[static_cast<std::size_t>(j)] == 0) continue;
    BigRational inner = 0;
    for (int s = j; s <= h; ++s) {
      inner += rat(factorial(s) * stirling2(h, s)) * int_pow_signed(alphabet, k - s) *
               rat(big_pow(alphabet - 1, static_cast<unsigned long>(s - j)) * binom_small(length - j, s - j));
    }
    total += rat(sign_pow(j) * dual_counts[static_cast<std::size_t>(j)]) * inner;
  }
  return total;
}

bool pless_check(const std::map<long, BigInt>& code_weights, const std::map<long, BigInt>& dual_weights, long dim_k,
                 long length_n, int h, long alphabet) {
  if (dim_k < 0 || dim_k > length_n) throw ParameterError("pless_check: need 0 <= k <= n");
  BigInt mass = 0;
  BigInt dual_mass = 0;
  for (const auto& [w, c] : code_weights) {
    if (w < 0 || w > length_n) throw ParameterError("pless_check: code weight out of range");
    mass += c;
  }
  for (const auto& [w, c] : dual_weights) {
    if (w < 0 || w > length_n) throw ParameterError("pless_check: dual weight out of range");
    dual_mass += c;
  }
  if (mass != big_pow(alphabet, static_cast<unsigned long>(dim_k)) ||
      dual_mass != big_pow(alphabet, static_cast<unsigned long>(length_n - dim_k))) {
    throw ParameterError("pless_check: weight distributions have inconsistent masses");
  }

  BigInt lhs = 0;
  for (const auto& [w, c] : code_weights) lhs += big_pow(w, static_cast<unsigned long>(h)) * c;

  std::vector<BigInt> dual(static_cast<std::size_t>(std::min<long>(length_n, h)) + 1, BigInt(0));
  for (const auto& [w, c] : dual_weights) {
    if (w < static_cast<long>(dual.size())) dual[static_cast<std::size_t>(w)] = c;
  }
  return rat(lhs) == pless_rhs(dual, length_n, dim_k, h, alphabet);
}

std::vector<RecursionReport> recursion_chain(Sign sign, int n, const FieldTable& t, int h_max, int i,
                                             LowerOrder lower_mode) {
  CosetFamily{sign, n, i, t.q()}.validate();
  const int h_cap = sign == Sign::minus ? 8 : 6;
  if (h_max < 1 || h_max > h_cap) {
    throw ParameterError("recursion: need 1 <= h <= " + std::to_string(h_cap) + " for the " + to_string(sign) +
                         " family");
  }
  const Pipeline p(sign, n, i, t, h_max);
  const int step = sign == Sign::minus ? 1 : 2;

  // lower[j] holds T12SK^{step*j}; index 0 is only read by the plus family
  std::vector<BigRational> lower(static_cast<std::size_t>(h_max) + 1, BigRational(0));
  lower[0] = rat(moment(t, p.kl, MomentKind::T12SK, 0));

  std::vector<RecursionReport> out;
  for (int h = 1; h <= h_max; ++h) {
    const BigInt direct = moment(t, p.kl, MomentKind::T12SK, step * h);
    if (lower_mode == LowerOrder::direct) {
      for (int j = 1; j < h; ++j) lower[static_cast<std::size_t>(j)] = rat(moment(t, p.kl, MomentKind::T12SK, step * j));
    }
    RecursionReport rep = evaluate_level(p, h, lower, direct);
    lower[static_cast<std::size_t>(h)] = rep.t12sk_solved;
    out.push_back(std::move(rep));
  }
  return out;
}

RecursionReport t12sk_recursive_odd(int n, const FieldTable& t, int h, int i) {
  if (n % 2 == 0) throw ParameterError("t12sk_recursive_odd needs odd n");
  return recursion_chain(Sign::minus, n, t, h, i).back();
}

RecursionReport t12sk_recursive_even(int n, const FieldTable& t, int h, int i) {
  if (n % 2 != 0) throw ParameterError("t12sk_recursive_even needs even n");
  return recursion_chain(Sign::plus, n, t, h, i).back();
}

SkIdentityReport sk_identity_report(Sign sign, int n, const FieldTable& t, int h, int i) {
  CosetFamily{sign, n, i, t.q()}.validate();
  if (h < 1 || h > (sign == Sign::minus ? 8 : 6)) throw ParameterError("sk_identity: h out of range");
  const long q = t.q();
  const CosetConstants k = constants(sign, n, q);
  const auto kl = kloosterman_all(t);
  const BigInt b = sign == Sign::minus ? k.B : k.B - q * q + q;
  const int step = sign == Sign::minus ? 1 : 2;

  BigRational sum = 0;
  for (int j = 0; j <= h; ++j) {
    sum += rat(sign_pow(j) * binom_small(h, j) * big_pow(b, static_cast<unsigned long>(h - j)) *
               moment(t, kl, MomentKind::SK, step * j));
  }
  SkIdentityReport rep;
  rep.lhs = BigRational(2) * rat_pow(make_rational(2, 3), static_cast<unsigned long>(h)) *
            rat(big_pow(k.A, static_cast<unsigned long>(h))) * sum;
  const WeightCounts c = weight_counts(t, cell_profile(t, CodeSpec::sp_code(sign, n)), h);
  rep.rhs = pless_rhs(c.prefix, k.N, t.r(), h, 3);
  rep.match = rep.lhs == rep.rhs;
  return rep;
}

bool sk_identity(Sign sign, int n, const FieldTable& t, int h, int i) {
  return sk_identity_report(sign, n, t, h, i).match;
}

bool pless_dual_moment_check(const FieldTable& t, const CodeSpec& spec, int h) {
  if (h < 0 || h > 12) throw ParameterError("pless_dual_moment_check: need 0 <= h <= 12");
  const CosetConstants k = constants(spec.sign, spec.n, t.q());
  BigInt lhs = h == 0 ? 1 : 0;  // the zero codeword
  for (std::uint32_t v = 1; v < static_cast<std::uint32_t>(t.q()); ++v) {
    lhs += big_pow(dual_weight(t, spec, {v}), static_cast<unsigned long>(h));
  }
  const WeightCounts c = weight_counts(t, cell_profile(t, spec), h);
  return rat(lhs) == pless_rhs(c.prefix, k.N, t.r(), h, 3);
}

}  // namespace kloos
