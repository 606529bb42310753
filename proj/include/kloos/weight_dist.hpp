#pragma once

// Weight distributions of the ternary codes attached to the double cosets
// DC_i^{-+}(n,q) and to the companion symplectic codes.
//
// A code of this kind is determined by how many coordinates carry each
// trace value beta (its cell profile): a word u in F_3^N is a codeword iff
// sum_j u_j Tr(g_j) = 0 in F_q. Grouping coordinates by cell, a word with
// nu_beta ones and mu_beta twos in cell beta is a codeword iff
// sum_beta (nu_beta - mu_beta) beta = 0, so the low-weight counts follow from
// a dynamic program over cells without ever materialising the code.

#include <map>
#include <vector>

#include "kloos/char_sums.hpp"
#include "kloos/combinat.hpp"

namespace kloos {

enum class CodeFamily { orthogonal, symplectic };

struct CodeSpec {
  CodeFamily family = CodeFamily::orthogonal;
  Sign sign = Sign::minus;
  int n = 1;
  int i = 1;  // ignored for symplectic codes

  static CodeSpec o_code(Sign sign, int n, int i) { return {CodeFamily::orthogonal, sign, n, i}; }
  static CodeSpec sp_code(Sign sign, int n) { return {CodeFamily::symplectic, sign, n, 1}; }

  CosetFamily coset_family(long q) const { return {sign, n, i, q}; }
  void validate() const;
};

std::string describe(const CodeSpec& spec);

struct CellProfile {
  long q = 3;
  /// sizes[beta.index] = number of coordinates with trace value beta.
  std::vector<BigInt> sizes;

  const BigInt& at(FieldElement beta) const { return sizes[beta.index]; }
  BigInt total() const;
};

struct WeightCounts {
  /// prefix[j] = number of codewords of Hamming weight j, j = 0..j_max.
  std::vector<BigInt> prefix;

  const BigInt& at(int j) const { return prefix[static_cast<std::size_t>(j)]; }
  int j_max() const { return static_cast<int>(prefix.size()) - 1; }
};

/// Closed-form cell sizes N(beta) for the code.
CellProfile cell_profile(const FieldTable& t, const CodeSpec& spec);

/// The symplectic plus-sign cell sizes exactly as printed alongside the
/// even-n identities, q^4(delta(2,q;beta) + ...), with no n-dependence. Kept
/// for diagnostics; its mass is |Sp(4,q)|, which never equals the code
/// length, so cell_profile() uses the self-consistent profile instead.
CellProfile sp_plus_profile_printed(const FieldTable& t);

struct MassDiagnostic {
  BigInt profile_mass;
  BigInt code_length;
  bool consistent = false;
};

MassDiagnostic mass_diagnostic(const CellProfile& profile, const CodeSpec& spec);

/// Number of codewords of each weight 0..j_max (j_max <= 12).
WeightCounts weight_counts(const FieldTable& t, const CellProfile& profile, int j_max);

/// Hamming weight of the dual codeword c(a) = (tr(a Tr g_j))_j, a != 0, for an
/// orthogonal-group code, from the Kloosterman-sum closed form.
BigInt dual_weight(const FieldTable& t, const CodeSpec& spec, FieldElement a);

/// Weight histogram of the whole dual code {c(a) : a in F_q}.
std::map<BigInt, BigInt> dual_distribution(const FieldTable& t, const CodeSpec& spec);

/// delta(2, q; .) memoised per field (shared by the plus-sign profiles).
const DeltaTable& cached_delta2(const FieldTable& t);

}  // namespace kloos
