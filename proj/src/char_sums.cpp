#include "kloos/char_sums.hpp"

#include <array>

namespace kloos {

std::string to_string(MomentKind k) {
  switch (k) {
    case MomentKind::MK:
      return "MK";
    case MomentKind::SK:
      return "SK";
    case MomentKind::T0SK:
      return "T0SK";
    case MomentKind::T12SK:
      return "T12SK";
  }
  return "?";
}

MomentKind parse_moment_kind(const std::string& text) {
  if (text == "MK") return MomentKind::MK;
  if (text == "SK") return MomentKind::SK;
  if (text == "T0SK") return MomentKind::T0SK;
  if (text == "T12SK") return MomentKind::T12SK;
  throw ParameterError("moment kind must be one of MK, SK, T0SK, T12SK; got '" + text + "'");
}

namespace {

void require_nonzero(FieldElement a, const char* what) {
  if (a.index == 0) throw ParameterError(std::string(what) + ": argument a must be nonzero");
}

BigInt rational_part(const EisensteinInt& z, const char* what) {
  if (!z.is_rational()) {
    throw ConsistencyError(std::string(what) + " has a nonzero w-component: " + z.str());
  }
  return z.a();
}

}  // namespace

BigInt kloosterman(const FieldTable& t, FieldElement a) {
  require_nonzero(a, "kloosterman");
  std::array<BigInt, 3> counts{0, 0, 0};
  for (std::uint32_t v = 1; v < static_cast<std::uint32_t>(t.q()); ++v) {
    const FieldElement alpha{v};
    counts[static_cast<std::size_t>(t.trace(t.add(alpha, t.mul(a, t.inv(alpha)))))] += 1;
  }
  return rational_part(EisensteinInt::from_counts(counts), "Kloosterman sum");
}

std::vector<BigInt> kloosterman_all(const FieldTable& t) {
  std::vector<BigInt> out(static_cast<std::size_t>(t.q()), BigInt(0));
  for (std::uint32_t v = 1; v < static_cast<std::uint32_t>(t.q()); ++v) out[v] = kloosterman(t, {v});
  return out;
}

BigInt kloosterman_gl(const FieldTable& t, int deg, FieldElement a) {
  require_nonzero(a, "kloosterman_gl");
  if (deg < 0) throw ParameterError("kloosterman_gl: degree must be nonnegative");
  const BigInt k1 = kloosterman(t, a);
  if (deg == 0) return 1;
  const long q = t.q();
  BigInt prev = 1;  // GL(0)
  BigInt cur = k1;  // GL(1)
  for (int s = 2; s <= deg; ++s) {
    const auto us = static_cast<unsigned long>(s);
    BigInt next = big_pow(q, us - 1) * cur * k1 + big_pow(q, 2 * us - 2) * (big_pow(q, us - 1) - 1) * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

DeltaTable delta_table(const FieldTable& t, int m) {
  if (m < 0 || m > 6) throw ParameterError("delta_table: need 0 <= m <= 6");
  const std::size_t q = static_cast<std::size_t>(t.q());
  // distribution of alpha + 1/alpha over F_q^*
  std::vector<std::uint64_t> step(q, 0);
  for (std::uint32_t v = 1; v < q; ++v) {
    const FieldElement alpha{v};
    step[t.add(alpha, t.inv(alpha)).index] += 1;
  }
  DeltaTable out{m, std::vector<std::uint64_t>(q, 0)};
  out.values[0] = 1;
  for (int k = 0; k < m; ++k) {
    std::vector<std::uint64_t> next(q, 0);
    for (std::uint32_t x = 0; x < q; ++x) {
      if (!out.values[x]) continue;
      for (std::uint32_t y = 0; y < q; ++y) {
        if (step[y]) next[t.add({x}, {y}).index] += out.values[x] * step[y];
      }
    }
    out.values = std::move(next);
  }
  return out;
}

DeltaTable delta_table_by_tuples(const FieldTable& t, int m) {
  if (m < 0 || m > 2 || t.q() > 9) throw ParameterError("delta_table_by_tuples: needs m <= 2 and q <= 9");
  const std::uint32_t q = static_cast<std::uint32_t>(t.q());
  DeltaTable out{m, std::vector<std::uint64_t>(q, 0)};
  auto f = [&](std::uint32_t v) { return t.add({v}, t.inv({v})); };
  if (m == 0) {
    out.values[0] = 1;
  } else if (m == 1) {
    for (std::uint32_t a = 1; a < q; ++a) out.values[f(a).index] += 1;
  } else {
    for (std::uint32_t a = 1; a < q; ++a) {
      for (std::uint32_t b = 1; b < q; ++b) out.values[t.add(f(a), f(b)).index] += 1;
    }
  }
  return out;
}

int delta1_via_squares(const FieldTable& t, FieldElement beta) {
  const FieldElement disc = t.sub(t.mul(beta, beta), t.one());
  if (disc.index == 0) return 1;
  return t.is_square(disc) ? 2 : 0;
}

BigInt moment(const FieldTable& t, const std::vector<BigInt>& kl, MomentKind kind, int h) {
  if (h < 0 || h > 12) throw ParameterError("moment: need 0 <= h <= 12");
  const auto uh = static_cast<unsigned long>(h);
  BigInt sum = 0;
  for (std::uint32_t v = 1; v < static_cast<std::uint32_t>(t.q()); ++v) {
    const FieldElement a{v};
    FieldElement arg = a;
    switch (kind) {
      case MomentKind::MK:
        break;
      case MomentKind::SK:
        if (!t.is_square(a)) continue;
        break;
      case MomentKind::T0SK:
        if (t.trace(a) != 0) continue;
        arg = t.mul(a, a);
        break;
      case MomentKind::T12SK:
        if (t.trace(a) == 0) continue;
        arg = t.mul(a, a);
        break;
    }
    sum += big_pow(kl[arg.index], uh);
  }
  return sum;
}

BigInt moment(const FieldTable& t, MomentKind kind, int h) { return moment(t, kloosterman_all(t), kind, h); }

BigInt salie_count(const FieldTable& t, int h) {
  if (h < 0 || h > 5) throw ParameterError("salie_count: need 0 <= h <= 5");
  if (h == 0) return 0;
  const std::uint32_t q = static_cast<std::uint32_t>(t.q());
  // state index: (sum alpha) * q + (sum 1/alpha)
  std::vector<std::uint64_t> dist(static_cast<std::size_t>(q) * q, 0);
  dist[0] = 1;
  for (int k = 0; k < h; ++k) {
    std::vector<std::uint64_t> next(dist.size(), 0);
    for (std::uint32_t s = 0; s < q; ++s) {
      for (std::uint32_t u = 0; u < q; ++u) {
        const std::uint64_t c = dist[s * q + u];
        if (!c) continue;
        for (std::uint32_t v = 1; v < q; ++v) {
          const FieldElement alpha{v};
          const auto s2 = t.add({s}, alpha).index;
          const auto u2 = t.add({u}, t.inv(alpha)).index;
          next[s2 * q + u2] += c;
        }
      }
    }
    dist = std::move(next);
  }
  return BigInt(static_cast<unsigned long>(dist[1 * q + 1]));
}

bool salie_check(const FieldTable& t, int h) {
  if (h < 1 || h > 5) throw ParameterError("salie_check: need 1 <= h <= 5");
  const long q = t.q();
  const BigInt lhs = moment(t, MomentKind::MK, h);
  const BigInt sign = (h - 1) % 2 ? -1 : 1;
  const BigInt rhs =
      BigInt(q * q) * salie_count(t, h - 1) - big_pow(q - 1, static_cast<unsigned long>(h - 1)) + 2 * sign;
  return lhs == rhs;
}

BigInt a_r_sum(const FieldTable& t, int r) {
  if (r < 0 || r > 2 || t.q() > 9) throw ParameterError("a_r_sum: brute force needs r <= 2 and q <= 9");
  const std::uint32_t q = static_cast<std::uint32_t>(t.q());
  if (r == 0) return 1;
  std::array<BigInt, 3> counts{0, 0, 0};
  if (r == 1) {
    for (std::uint32_t b = 1; b < q; ++b) {
      for (std::uint32_t h = 0; h < q; ++h) {
        counts[static_cast<std::size_t>(t.trace(t.mul({b}, t.mul({h}, {h}))))] += 1;
      }
    }
  } else {
    const FieldElement two = t.from_int(2);
    for (std::uint32_t x = 0; x < q; ++x) {
      for (std::uint32_t y = 0; y < q; ++y) {
        for (std::uint32_t z = 0; z < q; ++z) {
          const FieldElement det = t.sub(t.mul({x}, {z}), t.mul({y}, {y}));
          if (det.index == 0) continue;
          for (std::uint32_t h1 = 0; h1 < q; ++h1) {
            for (std::uint32_t h2 = 0; h2 < q; ++h2) {
              FieldElement form = t.mul({x}, t.mul({h1}, {h1}));
              form = t.add(form, t.mul(two, t.mul({y}, t.mul({h1}, {h2}))));
              form = t.add(form, t.mul({z}, t.mul({h2}, {h2})));
              counts[static_cast<std::size_t>(t.trace(form))] += 1;
            }
          }
        }
      }
    }
  }
  return rational_part(EisensteinInt::from_counts(counts), "a_r sum");
}

BigInt a_r_formula(long q, int r) {
  if (r < 0 || r > 8) throw ParameterError("a_r_formula: need 0 <= r <= 8");
  if (r % 2) return 0;
  const auto ur = static_cast<unsigned long>(r);
  BigInt out = big_pow(q, ur * (ur + 2) / 4);
  for (int j = 1; j <= r / 2; ++j) out *= big_pow(q, static_cast<unsigned long>(2 * j - 1)) - 1;
  return out;
}

bool incomplete_moment_identity(const FieldTable& t, int m, FieldElement beta) {
  if (m < 0 || m > 4) throw ParameterError("incomplete_moment_identity: need 0 <= m <= 4");
  const auto kl = kloosterman_all(t);
  const auto um = static_cast<unsigned long>(m);
  std::array<BigInt, 3> counts{0, 0, 0};
  for (std::uint32_t v = 1; v < static_cast<std::uint32_t>(t.q()); ++v) {
    const FieldElement a{v};
    const int tr = t.trace(t.neg(t.mul(a, beta)));
    counts[static_cast<std::size_t>(tr)] += big_pow(kl[t.mul(a, a).index], um);
  }
  const EisensteinInt lhs = EisensteinInt::from_counts(counts);
  const long q = t.q();
  const BigInt rhs = BigInt(q) * BigInt(static_cast<unsigned long>(delta_table(t, m).at(beta))) -
                     big_pow(q - 1, um);
  return lhs.is_rational() && lhs.a() == rhs;
}

bool char_delta_identity(const FieldTable& t, int m, FieldElement a) {
  require_nonzero(a, "char_delta_identity");
  if (m < 0 || m > 4) throw ParameterError("char_delta_identity: need 0 <= m <= 4");
  const DeltaTable d = delta_table(t, m);
  std::array<BigInt, 3> counts{0, 0, 0};
  for (std::uint32_t v = 0; v < static_cast<std::uint32_t>(t.q()); ++v) {
    counts[static_cast<std::size_t>(t.trace(t.mul(a, {v})))] += BigInt(static_cast<unsigned long>(d.values[v]));
  }
  const EisensteinInt lhs = EisensteinInt::from_counts(counts);
  const BigInt rhs = big_pow(kloosterman(t, t.mul(a, a)), static_cast<unsigned long>(m));
  return lhs == EisensteinInt(rhs);
}

}  // namespace kloos
