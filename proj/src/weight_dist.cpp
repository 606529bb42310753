#include "kloos/weight_dist.hpp"

#include <mutex>
#include <string>
#include <unordered_map>

namespace kloos {

void CodeSpec::validate() const {
  CosetFamily{sign, n, family == CodeFamily::orthogonal ? i : 1, 3}.validate();
}

std::string describe(const CodeSpec& spec) {
  std::string out = spec.family == CodeFamily::orthogonal ? "O" : "Sp";
  out += "(" + to_string(spec.sign) + ", n=" + std::to_string(spec.n);
  if (spec.family == CodeFamily::orthogonal) out += ", i=" + std::to_string(spec.i);
  return out + ")";
}

BigInt CellProfile::total() const {
  BigInt s = 0;
  for (const auto& v : sizes) s += v;
  return s;
}

const DeltaTable& cached_delta2(const FieldTable& t) {
  static std::mutex mu;
  static std::unordered_map<std::string, DeltaTable> cache;
  const std::string key = t.params().spec();
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, delta_table(t, 2)).first;
  return it->second;
}

namespace {

enum class SquareClass { zero, square, nonsquare };

SquareClass classify(const FieldTable& t, FieldElement x) {
  if (x.index == 0) return SquareClass::zero;
  return t.is_square(x) ? SquareClass::square : SquareClass::nonsquare;
}

BigInt delta_big(const DeltaTable& d, FieldElement beta) {
  return BigInt(static_cast<unsigned long>(d.at(beta)));
}

// Cells of the minus-sign codes: q^{-1} A (B + c) with c = 1, q+1 or 1-q by
// the square class of disc(beta).
template <class Disc>
CellProfile minus_profile(const FieldTable& t, const CosetConstants& k, Disc&& disc) {
  const long q = t.q();
  const BigInt scale = exact_div(k.A, q, "q^{-1} A^-");
  CellProfile p{q, {}};
  p.sizes.reserve(static_cast<std::size_t>(q));
  for (std::uint32_t v = 0; v < static_cast<std::uint32_t>(q); ++v) {
    BigInt c;
    switch (classify(t, disc(FieldElement{v}))) {
      case SquareClass::zero:
        c = 1;
        break;
      case SquareClass::square:
        c = q + 1;
        break;
      case SquareClass::nonsquare:
        c = 1 - q;
        break;
    }
    p.sizes.push_back(scale * (k.B + c));
  }
  return p;
}

// Cells of the plus-sign codes: q^{-1} A (B + q delta(2,q;beta - shift) + x),
// x = (q-1)^3 at beta = shift and -2q^2 + 3q - 1 elsewhere.
CellProfile plus_profile(const FieldTable& t, const CosetConstants& k, FieldElement shift) {
  const long q = t.q();
  const DeltaTable& d2 = cached_delta2(t);
  const BigInt scale = exact_div(k.A, q, "q^{-1} A^+");
  const BigInt special = big_pow(q - 1, 3);
  const BigInt generic = BigInt(-2 * q * q + 3 * q - 1);
  CellProfile p{q, {}};
  p.sizes.reserve(static_cast<std::size_t>(q));
  for (std::uint32_t v = 0; v < static_cast<std::uint32_t>(q); ++v) {
    const FieldElement beta{v};
    const FieldElement arg = t.sub(beta, shift);
    const BigInt& x = arg.index == 0 ? special : generic;
    p.sizes.push_back(scale * (k.B + BigInt(q) * delta_big(d2, arg) + x));
  }
  return p;
}

}  // namespace

CellProfile cell_profile(const FieldTable& t, const CodeSpec& spec) {
  spec.validate();
  const CosetConstants k = constants(spec.sign, spec.n, t.q());
  const FieldElement one = t.one();
  const FieldElement two = t.from_int(2);

  if (spec.family == CodeFamily::orthogonal) {
    if (spec.sign == Sign::minus) {
      // beta^2 -+ 2 beta, i.e. (beta -+ 1)^2 - 1
      const bool first = spec.i == 1;
      return minus_profile(t, k, [&](FieldElement beta) {
        const FieldElement lin = t.mul(two, beta);
        const FieldElement sq = t.mul(beta, beta);
        return first ? t.sub(sq, lin) : t.add(sq, lin);
      });
    }
    return plus_profile(t, k, spec.i == 1 ? one : t.neg(one));
  }

  if (spec.sign == Sign::minus) {
    return minus_profile(t, k, [&](FieldElement beta) { return t.sub(t.mul(beta, beta), one); });
  }
  return plus_profile(t, k, t.zero());
}

CellProfile sp_plus_profile_printed(const FieldTable& t) {
  const long q = t.q();
  const DeltaTable& d2 = cached_delta2(t);
  const BigInt q4 = big_pow(q, 4);
  const BigInt zero_term = big_pow(q, 5) - q * q - 3 * q + 3;
  const BigInt other_term = big_pow(q, 5) - big_pow(q, 3) - q * q - 2 * q + 3;
  CellProfile p{q, {}};
  for (std::uint32_t v = 0; v < static_cast<std::uint32_t>(q); ++v) {
    const BigInt& c = v == 0 ? zero_term : other_term;
    p.sizes.push_back(q4 * (delta_big(d2, {v}) + c));
  }
  return p;
}

MassDiagnostic mass_diagnostic(const CellProfile& profile, const CodeSpec& spec) {
  MassDiagnostic d;
  d.profile_mass = profile.total();
  d.code_length = constants(spec.sign, spec.n, profile.q).N;
  d.consistent = d.profile_mass == d.code_length;
  return d;
}

WeightCounts weight_counts(const FieldTable& t, const CellProfile& profile, int j_max) {
  if (j_max < 0 || j_max > 12) throw ParameterError("weight_counts: need 0 <= j_max <= 12");
  if (profile.sizes.size() != static_cast<std::size_t>(t.q())) {
    throw ParameterError("weight_counts: profile does not match the field");
  }
  const std::size_t q = static_cast<std::size_t>(t.q());
  const std::size_t W = static_cast<std::size_t>(j_max) + 1;
  // dp[w * q + d]: selections of total weight w with running sum d
  std::vector<BigInt> dp(W * q, BigInt(0));
  dp[0] = 1;

  struct Move {
    int weight;
    FieldElement shift;
    BigInt coef;
  };

  for (std::uint32_t b = 0; b < q; ++b) {
    const BigInt& size = profile.sizes[b];
    if (size < 0) throw ConsistencyError("negative cell size in profile");
    if (size == 0) continue;
    std::vector<Move> moves;
    for (int nu = 0; nu <= j_max; ++nu) {
      for (int mu = 0; nu + mu <= j_max; ++mu) {
        if (nu + mu == 0) continue;
        BigInt coef = multinom3(size, nu, mu);
        if (coef == 0) continue;
        moves.push_back({nu + mu, t.scale(nu - mu, FieldElement{b}), std::move(coef)});
      }
    }
    std::vector<BigInt> next = dp;  // the (0,0) choice
    for (std::size_t w = 0; w < W; ++w) {
      for (std::uint32_t d = 0; d < q; ++d) {
        const BigInt& cur = dp[w * q + d];
        if (cur == 0) continue;
        for (const Move& mv : moves) {
          const std::size_t w2 = w + static_cast<std::size_t>(mv.weight);
          if (w2 >= W) continue;
          next[w2 * q + t.add({d}, mv.shift).index] += cur * mv.coef;
        }
      }
    }
    dp = std::move(next);
  }

  WeightCounts out;
  out.prefix.reserve(W);
  for (std::size_t w = 0; w < W; ++w) out.prefix.push_back(dp[w * q]);
  return out;
}

BigInt dual_weight(const FieldTable& t, const CodeSpec& spec, FieldElement a) {
  if (spec.family != CodeFamily::orthogonal) throw ParameterError("dual_weight is defined for orthogonal-group codes");
  spec.validate();
  if (a.index == 0) throw ParameterError("dual_weight: a must be nonzero");
  const long q = t.q();
  const CosetConstants k = constants(spec.sign, spec.n, q);
  const BigInt kl = kloosterman(t, t.mul(a, a));
  // Re lambda(a) = 1 if tr a = 0, else -1/2
  const BigRational re = t.trace(a) == 0 ? make_rational(1) : make_rational(-1, 2);
  const BigInt inner = spec.sign == Sign::minus ? kl : kl * kl + q * q - q;
  const BigRational w = make_rational(2, 3) * make_rational(k.A) * (make_rational(k.B) - re * make_rational(inner));
  if (!is_integer(w)) throw ConsistencyError("dual weight is not an integer: " + w.get_str());
  const BigInt out = w.get_num();
  if (out < 0 || out > k.N) throw ConsistencyError("dual weight outside [0, N]: " + out.get_str());
  return out;
}

std::map<BigInt, BigInt> dual_distribution(const FieldTable& t, const CodeSpec& spec) {
  std::map<BigInt, BigInt> hist;
  hist[BigInt(0)] += 1;
  for (std::uint32_t v = 1; v < static_cast<std::uint32_t>(t.q()); ++v) hist[dual_weight(t, spec, {v})] += 1;
  return hist;
}

}  // namespace kloos
