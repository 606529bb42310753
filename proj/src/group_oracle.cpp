#include "kloos/group_oracle.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <thread>

namespace kloos {

MatrixGF MatrixGF::identity(int dim) {
  MatrixGF m = zero(dim);
  for (int k = 0; k < dim; ++k) m.set(k, k, {1});
  return m;
}

MatrixGF multiply(const FieldTable& t, const MatrixGF& x, const MatrixGF& y) {
  if (x.dim != y.dim) throw ParameterError("multiply: dimension mismatch");
  const int d = x.dim;
  MatrixGF out = MatrixGF::zero(d);
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) {
      const FieldElement xik = x.at(i, k);
      if (xik.index == 0) continue;
      for (int j = 0; j < d; ++j) {
        const FieldElement ykj = y.at(k, j);
        if (ykj.index == 0) continue;
        out.set(i, j, t.add(out.at(i, j), t.mul(xik, ykj)));
      }
    }
  }
  return out;
}

MatrixGF transpose(const MatrixGF& x) {
  MatrixGF out = MatrixGF::zero(x.dim);
  for (int i = 0; i < x.dim; ++i) {
    for (int j = 0; j < x.dim; ++j) out.set(j, i, x.at(i, j));
  }
  return out;
}

FieldElement matrix_trace(const FieldTable& t, const MatrixGF& x) {
  FieldElement s = t.zero();
  for (int k = 0; k < x.dim; ++k) s = t.add(s, x.at(k, k));
  return s;
}

std::optional<MatrixGF> inverse(const FieldTable& t, const MatrixGF& x) {
  const int d = x.dim;
  MatrixGF a = x;
  MatrixGF inv = MatrixGF::identity(d);
  for (int col = 0; col < d; ++col) {
    int pivot = -1;
    for (int row = col; row < d; ++row) {
      if (a.at(row, col).index != 0) {
        pivot = row;
        break;
      }
    }
    if (pivot < 0) return std::nullopt;
    if (pivot != col) {
      for (int j = 0; j < d; ++j) {
        const FieldElement ta = a.at(col, j);
        a.set(col, j, a.at(pivot, j));
        a.set(pivot, j, ta);
        const FieldElement ti = inv.at(col, j);
        inv.set(col, j, inv.at(pivot, j));
        inv.set(pivot, j, ti);
      }
    }
    const FieldElement s = t.inv(a.at(col, col));
    for (int j = 0; j < d; ++j) {
      a.set(col, j, t.mul(s, a.at(col, j)));
      inv.set(col, j, t.mul(s, inv.at(col, j)));
    }
    for (int row = 0; row < d; ++row) {
      if (row == col) continue;
      const FieldElement f = a.at(row, col);
      if (f.index == 0) continue;
      for (int j = 0; j < d; ++j) {
        a.set(row, j, t.sub(a.at(row, j), t.mul(f, a.at(col, j))));
        inv.set(row, j, t.sub(inv.at(row, j), t.mul(f, inv.at(col, j))));
      }
    }
  }
  return inv;
}

MatrixGF gram_matrix(int n) {
  MatrixGF j = MatrixGF::zero(2 * n + 1);
  for (int k = 0; k < n; ++k) {
    j.set(k, n + k, {1});
    j.set(n + k, k, {1});
  }
  j.set(2 * n, 2 * n, {1});
  return j;
}

MatrixGF rho_matrix(int n) {
  // diag(1_n, 1_n, -1); -1 is element index 2
  MatrixGF m = MatrixGF::identity(2 * n + 1);
  m.set(2 * n, 2 * n, {2});
  return m;
}

MatrixGF sigma_matrix(int n, int r) {
  if (r < 0 || r > n) throw ParameterError("sigma_r needs 0 <= r <= n");
  const int d = 2 * n + 1;
  MatrixGF m = MatrixGF::zero(d);
  for (int k = 0; k < r; ++k) {
    m.set(k, n + k, {1});
    m.set(n + k, k, {1});
  }
  for (int k = r; k < n; ++k) {
    m.set(k, k, {1});
    m.set(n + k, n + k, {1});
  }
  m.set(d - 1, d - 1, {1});
  return m;
}

bool is_orthogonal(const FieldTable& t, const MatrixGF& w) {
  const int n = (w.dim - 1) / 2;
  const MatrixGF j = gram_matrix(n);
  return multiply(t, multiply(t, transpose(w), j), w) == j;
}

namespace {

// Plain rectangular matrices for the block relations.
struct Block {
  int rows;
  int cols;
  std::vector<FieldElement> v;

  FieldElement at(int i, int j) const { return v[static_cast<std::size_t>(i * cols + j)]; }
};

Block sub_block(const MatrixGF& w, int r0, int c0, int rows, int cols) {
  Block b{rows, cols, {}};
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) b.v.push_back(w.at(r0 + i, c0 + j));
  }
  return b;
}

Block tr(const Block& b) {
  Block out{b.cols, b.rows, std::vector<FieldElement>(b.v.size())};
  for (int i = 0; i < b.rows; ++i) {
    for (int j = 0; j < b.cols; ++j) out.v[static_cast<std::size_t>(j * b.rows + i)] = b.at(i, j);
  }
  return out;
}

Block mul(const FieldTable& t, const Block& x, const Block& y) {
  Block out{x.rows, y.cols, std::vector<FieldElement>(static_cast<std::size_t>(x.rows * y.cols), t.zero())};
  for (int i = 0; i < x.rows; ++i) {
    for (int j = 0; j < y.cols; ++j) {
      FieldElement s = t.zero();
      for (int k = 0; k < x.cols; ++k) s = t.add(s, t.mul(x.at(i, k), y.at(k, j)));
      out.v[static_cast<std::size_t>(i * y.cols + j)] = s;
    }
  }
  return out;
}

Block add(const FieldTable& t, const Block& x, const Block& y) {
  Block out = x;
  for (std::size_t k = 0; k < out.v.size(); ++k) out.v[k] = t.add(x.v[k], y.v[k]);
  return out;
}

bool equals_scalar_identity(const Block& b, bool identity) {
  for (int i = 0; i < b.rows; ++i) {
    for (int j = 0; j < b.cols; ++j) {
      const std::uint32_t want = (identity && i == j) ? 1u : 0u;
      if (b.at(i, j).index != want) return false;
    }
  }
  return true;
}

}  // namespace

bool block_relations_hold(const FieldTable& t, const MatrixGF& w) {
  const int n = (w.dim - 1) / 2;
  const Block A = sub_block(w, 0, 0, n, n), B = sub_block(w, 0, n, n, n), e = sub_block(w, 0, 2 * n, n, 1);
  const Block C = sub_block(w, n, 0, n, n), D = sub_block(w, n, n, n, n), f = sub_block(w, n, 2 * n, n, 1);
  const Block g = sub_block(w, 2 * n, 0, 1, n), h = sub_block(w, 2 * n, n, 1, n), i = sub_block(w, 2 * n, 2 * n, 1, 1);
  auto sym = [&](const Block& x, const Block& y) { return add(t, mul(t, tr(x), y), mul(t, tr(y), x)); };
  return equals_scalar_identity(add(t, sym(A, C), mul(t, tr(g), g)), false) &&
         equals_scalar_identity(add(t, sym(B, D), mul(t, tr(h), h)), false) &&
         equals_scalar_identity(add(t, add(t, mul(t, tr(A), D), mul(t, tr(C), B)), mul(t, tr(g), h)), true) &&
         equals_scalar_identity(add(t, sym(e, f), mul(t, i, i)), true) &&
         equals_scalar_identity(add(t, add(t, mul(t, tr(A), f), mul(t, tr(C), e)), mul(t, tr(g), i)), false) &&
         equals_scalar_identity(add(t, add(t, mul(t, tr(B), f), mul(t, tr(D), e)), mul(t, tr(h), i)), false);
}

namespace {

void require_oracle_scale(int n, const FieldTable& t) {
  const bool ok = (n == 1 && (t.q() == 3 || t.q() == 9)) || (n == 2 && t.q() == 3);
  if (!ok) {
    throw ParameterError("oracle scale exceeded: (n, q) must be (1,3), (1,9) or (2,3); got (" + std::to_string(n) +
                         "," + std::to_string(t.q()) + ")");
  }
}

// Calls fn on every n x m matrix over F_q (as a flat index vector).
template <class Fn>
void for_each_matrix(int cells, const FieldTable& t, Fn&& fn) {
  std::vector<std::uint16_t> cur(static_cast<std::size_t>(cells), 0);
  const auto q = static_cast<std::uint16_t>(t.q());
  while (true) {
    fn(cur);
    int k = 0;
    while (k < cells) {
      if (++cur[static_cast<std::size_t>(k)] < q) break;
      cur[static_cast<std::size_t>(k)] = 0;
      ++k;
    }
    if (k == cells) return;
  }
}

}  // namespace

std::vector<MatrixGF> enumerate_gl(int n, const FieldTable& t) {
  std::vector<MatrixGF> out;
  for_each_matrix(n * n, t, [&](const std::vector<std::uint16_t>& cells) {
    MatrixGF a{n, cells};
    if (inverse(t, a)) out.push_back(a);
  });
  return out;
}

std::vector<MatrixGF> build_Q(int n, const FieldTable& t) {
  require_oracle_scale(n, t);
  const int d = 2 * n + 1;
  // pairs (B, h) with B + tB + th h = 0
  std::vector<std::pair<MatrixGF, std::vector<FieldElement>>> unipotent;
  for_each_matrix(n, t, [&](const std::vector<std::uint16_t>& hv) {
    std::vector<FieldElement> h;
    for (auto x : hv) h.push_back({x});
    for_each_matrix(n * n, t, [&](const std::vector<std::uint16_t>& bv) {
      const MatrixGF b{n, bv};
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const FieldElement s = t.add(t.add(b.at(i, j), b.at(j, i)), t.mul(h[static_cast<std::size_t>(i)], h[static_cast<std::size_t>(j)]));
          if (s.index != 0) return;
        }
      }
      unipotent.emplace_back(b, h);
    });
  });

  std::vector<MatrixGF> out;
  for (const MatrixGF& a : enumerate_gl(n, t)) {
    const MatrixGF a_inv_t = transpose(*inverse(t, a));
    MatrixGF levi = MatrixGF::zero(d);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        levi.set(i, j, a.at(i, j));
        levi.set(n + i, n + j, a_inv_t.at(i, j));
      }
    }
    levi.set(d - 1, d - 1, t.one());
    for (const auto& [b, h] : unipotent) {
      MatrixGF u = MatrixGF::identity(d);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) u.set(i, n + j, b.at(i, j));
        u.set(i, d - 1, t.neg(h[static_cast<std::size_t>(i)]));
        u.set(d - 1, n + i, h[static_cast<std::size_t>(i)]);
      }
      MatrixGF w = multiply(t, levi, u);
      if (!is_orthogonal(t, w)) throw ConsistencyError("element of Q fails tWJW = J");
      out.push_back(std::move(w));
    }
  }
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) throw ConsistencyError("Q parametrisation not injective");
  return out;
}

std::vector<MatrixGF> product_coset(int n, int r, bool with_rho, const std::vector<MatrixGF>& q_elems,
                                    const FieldTable& t) {
  const MatrixGF sigma = sigma_matrix(n, r);
  const MatrixGF rho = rho_matrix(n);
  std::set<MatrixGF> set;
  for (const MatrixGF& x : q_elems) {
    MatrixGF left = multiply(t, x, sigma);
    if (with_rho) left = multiply(t, rho, left);
    for (const MatrixGF& y : q_elems) set.insert(multiply(t, left, y));
  }
  return {set.begin(), set.end()};
}

CosetEnumeration enumerate_double_coset(const CosetFamily& fam, const FieldTable& t) {
  fam.validate();
  if (fam.q != t.q()) throw ParameterError("coset family q does not match the field");
  require_oracle_scale(fam.n, t);
  const int r = fam.sign == Sign::minus ? fam.n - 1 : fam.n - 2;
  CosetEnumeration e;
  e.spec = fam;
  e.elements = product_coset(fam.n, r, fam.i == 2, build_Q(fam.n, t), t);
  e.trace_histogram.assign(static_cast<std::size_t>(t.q()), 0);
  for (const MatrixGF& w : e.elements) {
    if (!is_orthogonal(t, w)) throw ConsistencyError("double coset element fails tWJW = J");
    e.trace_histogram[matrix_trace(t, w).index] += 1;
  }
  return e;
}

std::vector<MatrixGF> enumerate_O3(const FieldTable& t, int workers) {
  if (t.q() != 3 && t.q() != 9) throw ParameterError("enumerate_O3: q must be 3 or 9");
  const std::uint32_t q = static_cast<std::uint32_t>(t.q());
  const std::uint32_t nvec = q * q * q;
  std::vector<std::array<FieldElement, 3>> vecs(nvec);
  for (std::uint32_t v = 0; v < nvec; ++v) vecs[v] = {FieldElement{v % q}, FieldElement{(v / q) % q}, FieldElement{v / (q * q)}};
  // bilinear form x^T J y with J = [[0,1,0],[1,0,0],[0,0,1]]
  auto form = [&](std::uint32_t x, std::uint32_t y) {
    const auto& a = vecs[x];
    const auto& b = vecs[y];
    return t.add(t.add(t.mul(a[0], b[1]), t.mul(a[1], b[0])), t.mul(a[2], b[2])).index;
  };

  auto scan = [&](std::uint32_t c0_begin, std::uint32_t c0_end, std::vector<MatrixGF>& found) {
    for (std::uint32_t c0 = c0_begin; c0 < c0_end; ++c0) {
      if (form(c0, c0) != 0) continue;
      for (std::uint32_t c1 = 0; c1 < nvec; ++c1) {
        if (form(c1, c1) != 0 || form(c0, c1) != 1) continue;
        for (std::uint32_t c2 = 0; c2 < nvec; ++c2) {
          if (form(c2, c2) != 1 || form(c0, c2) != 0 || form(c1, c2) != 0) continue;
          MatrixGF w = MatrixGF::zero(3);
          for (int row = 0; row < 3; ++row) {
            w.set(row, 0, vecs[c0][static_cast<std::size_t>(row)]);
            w.set(row, 1, vecs[c1][static_cast<std::size_t>(row)]);
            w.set(row, 2, vecs[c2][static_cast<std::size_t>(row)]);
          }
          found.push_back(std::move(w));
        }
      }
    }
  };

  workers = std::max(1, workers);
  std::vector<std::vector<MatrixGF>> parts(static_cast<std::size_t>(workers));
  std::vector<std::thread> pool;
  const std::uint32_t chunk = (nvec + static_cast<std::uint32_t>(workers) - 1) / static_cast<std::uint32_t>(workers);
  for (int k = 0; k < workers; ++k) {
    const std::uint32_t lo = std::min(nvec, chunk * static_cast<std::uint32_t>(k));
    const std::uint32_t hi = std::min(nvec, lo + chunk);
    pool.emplace_back(scan, lo, hi, std::ref(parts[static_cast<std::size_t>(k)]));
  }
  for (auto& th : pool) th.join();

  std::vector<MatrixGF> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  std::sort(out.begin(), out.end());
  for (const MatrixGF& w : out) {
    if (!is_orthogonal(t, w)) throw ConsistencyError("O(3,q) search produced a non-orthogonal matrix");
  }
  return out;
}

BigInt bruhat_quotient_size(int n, int r, const FieldTable& t) {
  const std::vector<MatrixGF> q_elems = build_Q(n, t);
  if (r < 0 || r > n) throw ParameterError("bruhat_quotient_size: need 0 <= r <= n");
  const MatrixGF rho = rho_matrix(n);
  std::set<MatrixGF> p(q_elems.begin(), q_elems.end());
  for (const MatrixGF& w : q_elems) p.insert(multiply(t, rho, w));
  const MatrixGF sigma = sigma_matrix(n, r);
  const MatrixGF sigma_inv = *inverse(t, sigma);
  std::size_t stabiliser = 0;
  for (const MatrixGF& w : q_elems) {
    if (p.count(multiply(t, multiply(t, sigma, w), sigma_inv))) ++stabiliser;
  }
  if (q_elems.size() % stabiliser) throw ConsistencyError("B_r order does not divide |Q|");
  return BigInt(static_cast<unsigned long>(q_elems.size() / stabiliser));
}

EisensteinInt coset_exp_sum(const CosetEnumeration& e, const FieldTable& t, FieldElement a) {
  if (a.index == 0) throw ParameterError("coset_exp_sum: a must be nonzero");
  std::array<BigInt, 3> counts{0, 0, 0};
  for (std::uint32_t v = 0; v < static_cast<std::uint32_t>(t.q()); ++v) {
    counts[static_cast<std::size_t>(t.trace(t.mul(a, {v})))] += BigInt(static_cast<unsigned long>(e.trace_histogram[v]));
  }
  return EisensteinInt::from_counts(counts);
}

int hamming_weight(const Word& w) {
  return static_cast<int>(std::count_if(w.begin(), w.end(), [](std::uint8_t x) { return x != 0; }));
}

namespace {

// Row-reduces rows (entries mod 3) in place and returns the rank; pivot
// columns are written to pivots.
int rref_mod3(std::vector<Word>& rows, std::vector<int>& pivots) {
  pivots.clear();
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    if (rows[rank][c] == 2) {
      for (auto& x : rows[rank]) x = static_cast<std::uint8_t>((2 * x) % 3);
    }
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (k == rank || rows[k][c] == 0) continue;
      const int f = rows[k][c];
      for (std::size_t j = 0; j < cols; ++j) {
        rows[k][j] = static_cast<std::uint8_t>(((rows[k][j] - f * rows[rank][j]) % 3 + 3) % 3);
      }
    }
    pivots.push_back(static_cast<int>(c));
    ++rank;
  }
  rows.resize(rank);
  return static_cast<int>(rank);
}

bool in_kernel(const std::vector<FieldElement>& coords, const FieldTable& t, const Word& u) {
  FieldElement s = t.zero();
  for (std::size_t k = 0; k < coords.size(); ++k) {
    if (u[k]) s = t.add(s, t.scale(u[k], coords[k]));
  }
  return s.index == 0;
}

}  // namespace

std::map<long, BigInt> ExplicitCode::dual_weight_distribution() const {
  std::map<long, BigInt> hist;
  for (const Word& w : dual_words) hist[hamming_weight(w)] += 1;
  return hist;
}

std::map<long, BigInt> ExplicitCode::kernel_weight_distribution() const {
  if (!kernel_words) throw ParameterError("kernel words were not enumerated for this code");
  std::map<long, BigInt> hist;
  for (const Word& w : *kernel_words) hist[hamming_weight(w)] += 1;
  return hist;
}

ExplicitCode explicit_code(const CosetFamily& fam, const FieldTable& t) {
  const CosetEnumeration e = enumerate_double_coset(fam, t);
  ExplicitCode code;
  for (const MatrixGF& g : e.elements) code.coordinates.push_back(matrix_trace(t, g));
  const std::size_t len = code.length();

  for (std::uint32_t v = 0; v < static_cast<std::uint32_t>(t.q()); ++v) {
    Word w(len);
    for (std::size_t k = 0; k < len; ++k) w[k] = static_cast<std::uint8_t>(t.trace(t.mul({v}, code.coordinates[k])));
    code.dual_words.push_back(std::move(w));
  }
  {
    std::vector<Word> sorted = code.dual_words;
    std::sort(sorted.begin(), sorted.end());
    code.injective = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  }

  // kernel: r linear equations over F_3, one per coordinate of the polynomial basis
  std::vector<Word> eqs;
  for (int c = 0; c < t.r(); ++c) {
    Word row(len);
    for (std::size_t k = 0; k < len; ++k) row[k] = static_cast<std::uint8_t>(t.coefficient(code.coordinates[k], c));
    eqs.push_back(std::move(row));
  }
  std::vector<int> pivots;
  rref_mod3(eqs, pivots);
  std::vector<bool> is_pivot(len, false);
  for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  for (std::size_t free = 0; free < len; ++free) {
    if (is_pivot[free]) continue;
    Word u(len, 0);
    u[free] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) {
      u[static_cast<std::size_t>(pivots[k])] = static_cast<std::uint8_t>((3 - eqs[k][free]) % 3);
    }
    code.kernel_basis.push_back(std::move(u));
  }

  std::vector<Word> dual_rows = code.dual_words;
  std::vector<int> dual_pivots;
  code.dual_rank = rref_mod3(dual_rows, dual_pivots);

  bool orthogonal = true;
  for (const Word& c : code.dual_words) {
    for (const Word& u : code.kernel_basis) {
      int s = 0;
      for (std::size_t k = 0; k < len; ++k) s += c[k] * u[k];
      if (s % 3) orthogonal = false;
    }
  }
  for (const Word& u : code.kernel_basis) {
    if (!in_kernel(code.coordinates, t, u)) throw ConsistencyError("kernel basis vector is not a codeword");
  }
  code.delsarte_consistent =
      orthogonal && code.dual_rank + static_cast<int>(code.kernel_basis.size()) == static_cast<int>(len);

  if (len <= 8) {
    std::vector<Word> words;
    Word u(len, 0);
    while (true) {
      if (in_kernel(code.coordinates, t, u)) words.push_back(u);
      std::size_t k = 0;
      while (k < len) {
        if (++u[k] < 3) break;
        u[k] = 0;
        ++k;
      }
      if (k == len) break;
    }
    code.kernel_words = std::move(words);
  }
  return code;
}

std::vector<BigInt> brute_force_low_weights(const std::vector<FieldElement>& coords, const FieldTable& t, int j_max) {
  const std::size_t len = coords.size();
  if (j_max < 0) throw ParameterError("brute_force_low_weights: j_max must be nonnegative");
  double work = 0;
  for (int j = 0; j <= j_max; ++j) {
    double c = 1;
    for (int k = 0; k < j; ++k) c = c * static_cast<double>(len - static_cast<std::size_t>(k)) / (k + 1);
    work += c * static_cast<double>(1u << j);
  }
  if (work > 5e8) throw ParameterError("brute_force_low_weights: budget exceeded");

  std::vector<BigInt> out(static_cast<std::size_t>(j_max) + 1, BigInt(0));
  std::vector<std::uint64_t> counts(out.size(), 0);
  // depth-first over increasing supports, carrying the running sum
  std::vector<FieldElement> two_times(len);
  for (std::size_t k = 0; k < len; ++k) two_times[k] = t.neg(coords[k]);
  auto dfs = [&](auto&& self, std::size_t start, int depth, FieldElement sum) -> void {
    if (sum.index == 0) counts[static_cast<std::size_t>(depth)] += 1;
    if (depth == j_max) return;
    for (std::size_t k = start; k < len; ++k) {
      self(self, k + 1, depth + 1, t.add(sum, coords[k]));
      self(self, k + 1, depth + 1, t.add(sum, two_times[k]));
    }
  };
  dfs(dfs, 0, 0, t.zero());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = BigInt(static_cast<unsigned long>(counts[j]));
  return out;
}

}  // namespace kloos
