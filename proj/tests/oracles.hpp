#pragma once

// Independent reference implementations used only by the tests. None of
// these touch the library's tables: fields are naive polynomial arithmetic,
// characters are complex exponentials rounded at the end.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace oracle {

/// F_{3^r} as coefficient vectors, multiplied by schoolbook polynomial
/// products reduced modulo a monic modulus (low-to-high coefficients).
struct PolyField {
  int r;
  int q;
  std::vector<int> modulus;

  explicit PolyField(std::vector<int> mod) : r(static_cast<int>(mod.size()) - 1), q(1), modulus(std::move(mod)) {
    for (int k = 0; k < r; ++k) q *= 3;
  }

  std::vector<int> decode(std::uint32_t index) const {
    std::vector<int> c(static_cast<std::size_t>(r));
    for (int k = 0; k < r; ++k) {
      c[static_cast<std::size_t>(k)] = static_cast<int>(index % 3);
      index /= 3;
    }
    return c;
  }

  std::uint32_t encode(const std::vector<int>& c) const {
    std::uint32_t out = 0;
    for (int k = r - 1; k >= 0; --k) out = out * 3 + static_cast<std::uint32_t>(((c[static_cast<std::size_t>(k)] % 3) + 3) % 3);
    return out;
  }

  std::uint32_t add(std::uint32_t x, std::uint32_t y) const {
    auto a = decode(x);
    const auto b = decode(y);
    for (int k = 0; k < r; ++k) a[static_cast<std::size_t>(k)] += b[static_cast<std::size_t>(k)];
    return encode(a);
  }

  std::uint32_t mul(std::uint32_t x, std::uint32_t y) const {
    const auto a = decode(x);
    const auto b = decode(y);
    std::vector<int> prod(static_cast<std::size_t>(2 * r), 0);
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < r; ++j) prod[static_cast<std::size_t>(i + j)] += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
    }
    for (int d = 2 * r - 1; d >= r; --d) {
      const int c = ((prod[static_cast<std::size_t>(d)] % 3) + 3) % 3;
      if (!c) continue;
      for (int k = 0; k <= r; ++k) prod[static_cast<std::size_t>(d - r + k)] -= c * modulus[static_cast<std::size_t>(k)];
    }
    prod.resize(static_cast<std::size_t>(r));
    return encode(prod);
  }

  std::uint32_t pow(std::uint32_t x, long e) const {
    std::uint32_t out = 1;
    for (long k = 0; k < e; ++k) out = mul(out, x);
    return out;
  }

  std::uint32_t inv(std::uint32_t x) const { return pow(x, q - 2); }

  /// x + x^3 + ... + x^{3^{r-1}}, returned as an integer in {0,1,2}.
  int trace(std::uint32_t x) const {
    std::uint32_t s = 0;
    std::uint32_t y = x;
    for (int k = 0; k < r; ++k) {
      s = add(s, y);
      y = pow(y, 3);
    }
    return static_cast<int>(s);
  }
};

inline std::complex<double> lambda(int tr) {
  const double pi = std::acos(-1.0);
  return std::polar(1.0, 2 * pi * tr / 3.0);
}

inline long round_real(std::complex<double> z) { return std::lround(z.real()); }

/// K(lambda; a) = sum_{alpha != 0} lambda(alpha + a / alpha) in floating point.
inline long kloosterman(const PolyField& f, std::uint32_t a) {
  std::complex<double> s = 0;
  for (std::uint32_t x = 1; x < static_cast<std::uint32_t>(f.q); ++x) s += lambda(f.trace(f.add(x, f.mul(a, f.inv(x)))));
  return round_real(s);
}

/// Weight histogram of {u in F_3^N : sum u_k coord_k = 0} by exhaustive
/// enumeration; N is coords.size() and must be small.
inline std::map<int, long> kernel_weights(const PolyField& f, const std::vector<std::uint32_t>& coords) {
  const std::size_t n = coords.size();
  std::map<int, long> hist;
  std::vector<int> u(n, 0);
  while (true) {
    std::uint32_t s = 0;
    int w = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (!u[k]) continue;
      ++w;
      s = f.add(s, u[k] == 1 ? coords[k] : f.mul(2, coords[k]));
    }
    if (s == 0) hist[w] += 1;
    std::size_t k = 0;
    while (k < n && ++u[k] == 3) u[k++] = 0;
    if (k == n) break;
  }
  return hist;
}

}  // namespace oracle
