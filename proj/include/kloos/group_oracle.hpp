#pragma once

// Brute-force ground truth at small parameters: explicit matrices of
// Q(2n+1,q), the double cosets built from it, O(3,q) by exhaustive search,
// and the explicit ternary codes attached to the cosets.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "kloos/combinat.hpp"
#include "kloos/finite_field.hpp"

namespace kloos {

struct MatrixGF {
  int dim = 0;
  std::vector<std::uint16_t> entries;  // row-major element indices

  static MatrixGF zero(int dim) { return {dim, std::vector<std::uint16_t>(static_cast<std::size_t>(dim * dim), 0)}; }
  static MatrixGF identity(int dim);

  FieldElement at(int row, int col) const { return {entries[static_cast<std::size_t>(row * dim + col)]}; }
  void set(int row, int col, FieldElement v) {
    entries[static_cast<std::size_t>(row * dim + col)] = static_cast<std::uint16_t>(v.index);
  }

  friend auto operator<=>(const MatrixGF&, const MatrixGF&) = default;
};

MatrixGF multiply(const FieldTable& t, const MatrixGF& x, const MatrixGF& y);
MatrixGF transpose(const MatrixGF& x);
FieldElement matrix_trace(const FieldTable& t, const MatrixGF& x);
/// Inverse by Gauss-Jordan; std::nullopt when singular.
std::optional<MatrixGF> inverse(const FieldTable& t, const MatrixGF& x);

/// The Gram matrix J = [[0, 1_n, 0], [1_n, 0, 0], [0, 0, 1]].
MatrixGF gram_matrix(int n);
MatrixGF rho_matrix(int n);
MatrixGF sigma_matrix(int n, int r);

bool is_orthogonal(const FieldTable& t, const MatrixGF& w);
/// The six block relations between A..i that characterise O(2n+1,q).
bool block_relations_hold(const FieldTable& t, const MatrixGF& w);

/// All A in GL(n,q).
std::vector<MatrixGF> enumerate_gl(int n, const FieldTable& t);

/// Q(2n+1,q) from its block parametrisation; (n,q) in {(1,3),(1,9),(2,3)}.
/// Sorted; each element checked orthogonal.
std::vector<MatrixGF> build_Q(int n, const FieldTable& t);

struct CosetEnumeration {
  CosetFamily spec;
  std::vector<MatrixGF> elements;  // sorted, duplicate-free
  std::vector<std::uint64_t> trace_histogram;  // indexed by element index of Tr w

  std::uint64_t count(FieldElement beta) const { return trace_histogram[beta.index]; }
};

/// DC_i^{-+}(n,q) as the product set {(rho) x sigma_r y : x, y in Q}, at
/// (minus, 1, q in {3,9}) or (plus, 2, 3).
CosetEnumeration enumerate_double_coset(const CosetFamily& fam, const FieldTable& t);

/// The product set (rho) Q sigma_r Q for any 0 <= r <= n at oracle scale.
std::vector<MatrixGF> product_coset(int n, int r, bool with_rho, const std::vector<MatrixGF>& q_elems,
                                    const FieldTable& t);

/// O(3,q) for q in {3, 9} by exhaustive column-by-column search over all
/// 3x3 matrices, partitioned by first column across `workers` threads.
std::vector<MatrixGF> enumerate_O3(const FieldTable& t, int workers = 1);

/// |B_r \ Q| where B_r = {w in Q : sigma_r w sigma_r^{-1} in P}, P = Q u rho Q.
BigInt bruhat_quotient_size(int n, int r, const FieldTable& t);

/// sum over the coset of lambda(a Tr w), termwise from the histogram.
EisensteinInt coset_exp_sum(const CosetEnumeration& e, const FieldTable& t, FieldElement a);

using Word = std::vector<std::uint8_t>;  // entries in {0,1,2}

struct ExplicitCode {
  std::vector<FieldElement> coordinates;  // Tr g_j in the canonical element order
  std::vector<Word> dual_words;           // c(a) for a = 0..q-1 by index
  std::vector<Word> kernel_basis;         // basis of {u : sum u_j Tr g_j = 0}
  std::optional<std::vector<Word>> kernel_words;  // every codeword, for length <= 8
  int dual_rank = 0;
  bool delsarte_consistent = false;  // dual words orthogonal to the kernel, dims add up
  bool injective = false;            // the q dual words are distinct

  std::size_t length() const { return coordinates.size(); }
  std::map<long, BigInt> dual_weight_distribution() const;
  /// Requires kernel_words.
  std::map<long, BigInt> kernel_weight_distribution() const;
};

ExplicitCode explicit_code(const CosetFamily& fam, const FieldTable& t);

/// Number of words of weight j (0..j_max) in {u in F_3^N : sum u_k v_k = 0}
/// by enumerating supports and values; throws ParameterError if that would
/// take more than ~5e8 steps.
std::vector<BigInt> brute_force_low_weights(const std::vector<FieldElement>& coords, const FieldTable& t, int j_max);

int hamming_weight(const Word& w);

}  // namespace kloos
