#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "greenrel/matrix.hpp"

namespace greenrel {

/// Green's equivalences L, R, H, J and the matching pre-orders. H is the
/// conjunction of L and R; LeqH the conjunction of LeqL and LeqR.
enum class GreenTag { L, R, H, J, LeqL, LeqR, LeqH, LeqJ };

bool is_equivalence(GreenTag tag);
std::string tag_name(GreenTag tag);
GreenTag parse_tag(const std::string& name);

/// rel must be an equivalence tag. On n x n matrices over a field:
/// L is equality of row spaces, R of column spaces, J of ranks, H = L and R.
bool green_related(GreenTag rel, const Matrix& a, const Matrix& b);

/// rel must be a pre-order tag; containment instead of equality.
bool green_leq(GreenTag rel, const Matrix& a, const Matrix& b);

/// Canonical datum identifying the equivalence class of a matrix: two
/// matrices are related iff their labels compare equal.
class ClassLabel {
 public:
  GreenTag relation() const { return rel_; }
  /// Canonical serialized form; usable as an ordered map key.
  const std::string& key() const { return key_; }
  bool operator==(const ClassLabel& rhs) const {
    return rel_ == rhs.rel_ && key_ == rhs.key_;
  }
  bool operator<(const ClassLabel& rhs) const { return key_ < rhs.key_; }

 private:
  friend ClassLabel class_label(GreenTag, const Matrix&);
  GreenTag rel_;
  std::string key_;
};

ClassLabel class_label(GreenTag equivalence, const Matrix& a);

/// Number of n x n rank-r matrices over GF(q), by the product formula
///   prod_{i=0}^{r-1} (q^n - q^i)^2 / (q^r - q^i).
BigInt count_rank_matrices(int n, std::int64_t q, int r);

/// All q^(n^2) square matrices over a finite field in canonical order: index
/// digits in base q are the column-major vectorization, least significant
/// digit first. Random access keeps exhaustive scans partitionable.
class MatrixEnumerator {
 public:
  MatrixEnumerator(const FieldSpec& spec, int n);  // requires q^(n^2) <= 2^20

  std::uint64_t size() const { return size_; }
  int n() const { return n_; }
  const FieldSpec& spec() const { return spec_; }

  Matrix at(std::uint64_t index) const;
  std::uint64_t index_of(const Matrix& m) const;
  std::vector<Matrix> all() const;

 private:
  FieldSpec spec_;
  int n_;
  std::uint64_t q_;
  std::uint64_t size_;
};

/// Writes A as B + C with rank(B) = rank(C) = k, valid when
/// rank(A) <= k <= n, or when k = rank(A) - 1 and rank(A) >= 3.
/// Factors A = P I_n(r) Q, splits the partial identity by the explicit
/// diagonal / shift constructions (h = the encoding-2 element when the field
/// has one; dedicated constructions over GF(2)), and conjugates back.
/// Every output is rank-checked before returning.
std::pair<Matrix, Matrix> rank_sum_decompose(const Matrix& a, int k);

/// Exact set {lambda in K : rank(A + lambda B) = r} over a finite field,
/// in ascending encoding order.
std::vector<FieldElement> pencil_lambda_set(const Matrix& a, const Matrix& b,
                                            int r);

/// Histogram, over all q^(2 n^2) ordered pairs (A, B), of the cardinality of
/// pencil_lambda_set(A, B, r); entry c counts the pairs whose lambda-set has
/// size c. The parallel kernel partitions by B and is tally-exact against
/// the serial reference.
std::vector<std::uint64_t> pencil_cardinality_census(const FieldSpec& spec,
                                                     int n, int r);
std::vector<std::uint64_t> pencil_cardinality_census_serial(
    const FieldSpec& spec, int n, int r);

}  // namespace greenrel
