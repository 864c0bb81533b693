#pragma once

#include <initializer_list>
#include <optional>
#include <vector>

#include "greenrel/field.hpp"

namespace greenrel {

/// Dense exact matrix over a single FieldSpec. Dimensions are fixed at
/// construction; entries are stored row-major.
class Matrix {
 public:
  Matrix(const FieldSpec& spec, int rows, int cols);  // zero-filled

  static Matrix identity(const FieldSpec& spec, int n);
  /// diag(1,...,1,0,...,0) with r ones.
  static Matrix partial_identity(const FieldSpec& spec, int n, int r);
  /// E_{ij}: single 1 at (i, j), zero-based.
  static Matrix unit(const FieldSpec& spec, int rows, int cols, int i, int j);
  /// Companion matrix of a monic polynomial (coefficients low degree first,
  /// degree >= 1). Its characteristic and minimal polynomial is the input.
  static Matrix companion(const FieldSpec& spec,
                          const std::vector<FieldElement>& monic_coeffs);
  /// Convenience literal constructor; integer entries are reduced into the
  /// field.
  static Matrix of_ints(const FieldSpec& spec,
                        std::initializer_list<std::initializer_list<int>> rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  const FieldSpec& spec() const { return spec_; }

  const FieldElement& at(int i, int j) const { return entries_[i * cols_ + j]; }
  void set(int i, int j, const FieldElement& v);

  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix operator*(const Matrix& rhs) const;
  Matrix scale(const FieldElement& c) const;
  Matrix transpose() const;
  Matrix operator-() const;

  bool operator==(const Matrix& rhs) const;
  bool operator!=(const Matrix& rhs) const { return !(*this == rhs); }
  bool is_zero() const;

  /// Single row / column as a 1xC / Rx1 matrix.
  Matrix row(int i) const;
  Matrix col(int j) const;

 private:
  FieldSpec spec_;
  int rows_, cols_;
  std::vector<FieldElement> entries_;
};

/// Reduced row-echelon form together with the invertible row transform that
/// produced it: transform * input == rref, exactly.
struct RrefResult {
  Matrix rref;
  int rank;
  std::vector<int> pivot_cols;  // strictly ascending, zero-based
  Matrix transform;
};

/// Deterministic Gauss-Jordan elimination: pivots are the first nonzero
/// entry scanning columns left to right, rows top to bottom.
RrefResult rref(const Matrix& m);

int rank(const Matrix& m);
bool is_invertible(const Matrix& m);  // square input only
Matrix inverse(const Matrix& m);      // throws if singular

/// A subspace of K^m held as its canonical basis: the RREF rows of any
/// spanning set, zero rows removed. Equal subspaces have identical bases.
class Subspace {
 public:
  static Subspace zero(const FieldSpec& spec, int ambient_dim);
  static Subspace full(const FieldSpec& spec, int ambient_dim);
  /// Span of the rows of m (ambient dimension = m.cols()).
  static Subspace row_space(const Matrix& m);
  static Subspace col_space(const Matrix& m);

  int ambient_dim() const { return ambient_; }
  int dim() const { return dim_; }
  const FieldSpec& spec() const { return spec_; }
  /// dim x ambient matrix whose rows are the canonical basis. The zero
  /// subspace stores a single all-zero placeholder row (dim() is 0).
  const Matrix& basis() const { return basis_; }

  bool contains(const Subspace& other) const;
  bool contains_row(const Matrix& v) const;  // v is 1 x ambient
  /// Smallest subspace containing both.
  Subspace sum(const Subspace& other) const;

  bool operator==(const Subspace& rhs) const;
  bool operator!=(const Subspace& rhs) const { return !(*this == rhs); }

 private:
  Subspace(const FieldSpec& spec, int ambient, int dim, Matrix basis);

  FieldSpec spec_;
  int ambient_;
  int dim_;
  Matrix basis_;
};

/// Some S with S*B == A when Row(A) is contained in Row(B), the witness with
/// all free coordinates zero; empty otherwise.
std::optional<Matrix> solve_left(const Matrix& a, const Matrix& b);

/// Canonical basis of the right null space {x : M x^T = 0} of an r x c
/// matrix, as a subspace of K^c.
Subspace kernel_basis(const Matrix& m);

/// Invertible P, Q with A = P * partial_identity(r) * Q, r = rank(A).
/// P and Q are derived from the elimination transforms of A and of its
/// row-reduced form, so the factorization is deterministic.
struct RankFactorization {
  Matrix p;
  int rank;
  Matrix q;
};
RankFactorization factor_partial_identity(const Matrix& a);

}  // namespace greenrel
