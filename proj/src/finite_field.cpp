#include "kloos/finite_field.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace kloos {

namespace {

using Poly = std::vector<int>;  // low-to-high, coefficients in {0,1,2}

int mod3(long v) { return static_cast<int>(((v % 3) + 3) % 3); }

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Remainder of a modulo a monic b.
Poly poly_rem(Poly a, const Poly& b) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const int lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t k = 0; k <= db; ++k) a[shift + k] = mod3(a[shift + k] - lead * b[k]);
    trim(a);
  }
  return a;
}

Poly digits_of(std::uint32_t index, int r) {
  Poly p(static_cast<std::size_t>(r), 0);
  for (int k = 0; k < r; ++k) {
    p[static_cast<std::size_t>(k)] = static_cast<int>(index % 3);
    index /= 3;
  }
  return p;
}

std::uint32_t index_of(const Poly& p, int r) {
  std::uint32_t out = 0;
  for (int k = r - 1; k >= 0; --k) {
    const int c = static_cast<std::size_t>(k) < p.size() ? p[static_cast<std::size_t>(k)] : 0;
    out = out * 3 + static_cast<std::uint32_t>(c);
  }
  return out;
}

// Calls fn on every monic polynomial of exact degree d.
template <class Fn>
void for_each_monic(int d, Fn&& fn) {
  long count = 1;
  for (int k = 0; k < d; ++k) count *= 3;
  for (long idx = 0; idx < count; ++idx) {
    Poly p(static_cast<std::size_t>(d) + 1, 0);
    long v = idx;
    for (int k = 0; k < d; ++k) {
      p[static_cast<std::size_t>(k)] = static_cast<int>(v % 3);
      v /= 3;
    }
    p[static_cast<std::size_t>(d)] = 1;
    if (fn(p)) return;
  }
}

}  // namespace

std::string poly_to_string(const std::vector<int>& p) {
  std::string out;
  for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k) {
    const int c = p[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    if (k == 0) {
      out += std::to_string(c);
      continue;
    }
    if (c != 1) out += std::to_string(c);
    out += "x";
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

std::string FieldParams::spec() const {
  std::string out = "3^" + std::to_string(r) + "/";
  for (int k = r; k >= 0; --k) {
    out += std::to_string(modulus[static_cast<std::size_t>(k)]);
    if (k > 0) out += ",";
  }
  return out;
}

std::vector<int> default_modulus(int r) {
  switch (r) {
    case 1:
      return {1, 1};  // x + 1
    case 2:
      return {2, 2, 1};  // x^2 + 2x + 2
    case 3:
      return {1, 2, 0, 1};  // x^3 + 2x + 1
    case 4:
      return {2, 0, 0, 2, 1};  // x^4 + 2x^3 + 2
    case 5:
      return {1, 2, 0, 0, 0, 1};  // x^5 + 2x + 1
    case 6:
      return {2, 2, 1, 0, 2, 0, 1};  // x^6 + 2x^4 + x^2 + 2x + 2
    default:
      throw ParameterError("field exponent r must be in [1, 6], got " + std::to_string(r));
  }
}

std::optional<std::vector<int>> find_factor_f3(const std::vector<int>& poly) {
  Poly p = poly;
  trim(p);
  const int deg = static_cast<int>(p.size()) - 1;
  std::optional<std::vector<int>> factor;
  for (int d = 1; d <= deg / 2 && !factor; ++d) {
    for_each_monic(d, [&](const Poly& f) {
      if (poly_rem(p, f).empty()) {
        factor = f;
        return true;
      }
      return false;
    });
  }
  return factor;
}

ParsedFieldSpec parse_field_spec(const std::string& text) {
  auto fail = [&](const std::string& why) {
    return ParameterError("bad field spec '" + text + "': " + why);
  };
  if (text.size() < 3 || text[0] != '3' || text[1] != '^') throw fail("expected 3^r");
  const auto slash = text.find('/');
  const std::string exp_part = text.substr(2, slash == std::string::npos ? std::string::npos : slash - 2);
  int r = 0;
  auto [ptr, ec] = std::from_chars(exp_part.data(), exp_part.data() + exp_part.size(), r);
  if (ec != std::errc() || ptr != exp_part.data() + exp_part.size()) throw fail("bad exponent");
  ParsedFieldSpec out{r, std::nullopt};
  if (slash == std::string::npos) return out;

  std::vector<int> high_to_low;
  std::stringstream ss(text.substr(slash + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    int c = 0;
    auto [p2, ec2] = std::from_chars(item.data(), item.data() + item.size(), c);
    if (ec2 != std::errc() || p2 != item.data() + item.size() || c < 0 || c > 2) {
      throw fail("coefficients must be 0, 1 or 2");
    }
    high_to_low.push_back(c);
  }
  std::reverse(high_to_low.begin(), high_to_low.end());
  out.modulus = std::move(high_to_low);
  return out;
}

FieldTable FieldTable::from_spec(const std::string& text) {
  auto parsed = parse_field_spec(text);
  return build(parsed.r, std::move(parsed.modulus));
}

FieldTable FieldTable::build(int r, std::optional<std::vector<int>> modulus) {
  if (r < 1 || r > 6) throw ParameterError("field exponent r must be in [1, 6], got " + std::to_string(r));
  Poly m = modulus ? *modulus : default_modulus(r);
  if (m.size() != static_cast<std::size_t>(r) + 1 || m.back() != 1) {
    throw ParameterError("modulus must be monic of degree " + std::to_string(r) + ", got " +
                         poly_to_string(m));
  }
  for (int c : m) {
    if (c < 0 || c > 2) throw ParameterError("modulus coefficients must lie in {0,1,2}");
  }
  if (auto f = find_factor_f3(m)) {
    throw ConstructionError("modulus " + poly_to_string(m) + " is reducible over F_3: divisible by " +
                            poly_to_string(*f));
  }

  FieldTable t;
  t.params_.r = r;
  t.params_.q = 1;
  for (int k = 0; k < r; ++k) t.params_.q *= 3;
  t.params_.modulus = m;
  const std::uint32_t q = static_cast<std::uint32_t>(t.params_.q);
  t.q_ = q;

  std::vector<Poly> digits(q);
  for (std::uint32_t x = 0; x < q; ++x) digits[x] = digits_of(x, r);

  t.add_.resize(static_cast<std::size_t>(q) * q);
  t.mul_.resize(static_cast<std::size_t>(q) * q);
  t.neg_.resize(q);
  for (std::uint32_t x = 0; x < q; ++x) {
    Poly n(static_cast<std::size_t>(r));
    for (int k = 0; k < r; ++k) n[static_cast<std::size_t>(k)] = mod3(-digits[x][static_cast<std::size_t>(k)]);
    t.neg_[x] = static_cast<std::uint16_t>(index_of(n, r));
    for (std::uint32_t y = 0; y < q; ++y) {
      Poly s(static_cast<std::size_t>(r));
      for (int k = 0; k < r; ++k) {
        s[static_cast<std::size_t>(k)] = mod3(digits[x][static_cast<std::size_t>(k)] + digits[y][static_cast<std::size_t>(k)]);
      }
      t.add_[x * q + y] = static_cast<std::uint16_t>(index_of(s, r));
      if (y < x) {
        t.mul_[x * q + y] = t.mul_[y * q + x];
        continue;
      }
      Poly prod(static_cast<std::size_t>(2 * r), 0);
      for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
          prod[static_cast<std::size_t>(i + j)] += digits[x][static_cast<std::size_t>(i)] * digits[y][static_cast<std::size_t>(j)];
        }
      }
      for (int& c : prod) c = mod3(c);
      t.mul_[x * q + y] = static_cast<std::uint16_t>(index_of(poly_rem(prod, m), r));
    }
  }

  t.inv_.assign(q, 0);
  for (std::uint32_t x = 1; x < q; ++x) {
    for (std::uint32_t y = 1; y < q; ++y) {
      if (t.mul_[x * q + y] == 1) {
        t.inv_[x] = static_cast<std::uint16_t>(y);
        break;
      }
    }
    if (t.inv_[x] == 0) throw ConsistencyError("element without inverse; modulus not irreducible?");
  }

  t.frob_.resize(q);
  t.trace_.resize(q);
  t.square_.assign(q, 0);
  for (std::uint32_t x = 0; x < q; ++x) {
    const FieldElement e{x};
    const FieldElement x3 = t.mul(t.mul(e, e), e);
    t.frob_[x] = static_cast<std::uint16_t>(x3.index);
    if (x != 0) t.square_[t.mul(e, e).index] = 1;
  }
  for (std::uint32_t x = 0; x < q; ++x) {
    FieldElement acc{0};
    FieldElement cur{x};
    for (int k = 0; k < r; ++k) {
      acc = t.add(acc, cur);
      cur = t.frobenius(cur);
    }
    if (acc.index > 2) throw ConsistencyError("trace left the prime field");
    t.trace_[x] = static_cast<std::uint8_t>(acc.index);
  }
  return t;
}

FieldElement FieldTable::element(std::uint32_t index) const {
  if (index >= q_) throw ParameterError("field element index " + std::to_string(index) + " out of range");
  return {index};
}

FieldElement FieldTable::inv(FieldElement x) const {
  if (x.index == 0) throw ParameterError("zero has no inverse");
  return {inv_[x.index]};
}

FieldElement FieldTable::pow(FieldElement x, unsigned long e) const {
  FieldElement out = one();
  while (e) {
    if (e & 1ul) out = mul(out, x);
    x = mul(x, x);
    e >>= 1ul;
  }
  return out;
}

FieldElement FieldTable::scale(long k, FieldElement x) const {
  switch (mod3(k)) {
    case 0:
      return zero();
    case 1:
      return x;
    default:
      return neg(x);
  }
}

int FieldTable::coefficient(FieldElement x, int k) const {
  std::uint32_t v = x.index;
  for (int i = 0; i < k; ++i) v /= 3;
  return static_cast<int>(v % 3);
}

int FieldTable::orbit_size(FieldElement x) const {
  int n = 1;
  for (FieldElement cur = frobenius(x); cur != x; cur = frobenius(cur)) ++n;
  return n;
}

EisensteinInt canonical_char(const FieldTable& t, FieldElement x) {
  return EisensteinInt::root(t.trace(x));
}

}  // namespace kloos
