#pragma once

#include <vector>

#include "greenrel/green.hpp"
#include "greenrel/matrix.hpp"

namespace greenrel {

/// Column-major vectorization: entry (i, j) of an n x n matrix (zero-based)
/// sits at vec position j*n + i.
int vec_index(int n, int i, int j);
Matrix vec(const Matrix& a);  // n^2 x 1 column
Matrix unvec(const FieldSpec& spec, int n, const Matrix& column);

enum class Side { Left, Right };

/// A linear map T on M_n(K), stored as the n^2 x n^2 matrix acting on
/// column-major vectorizations; column vec_index(n,i,j) is vec(T(E_ij)).
class LinearOperator {
 public:
  LinearOperator(int n, Matrix mat);

  static LinearOperator identity(const FieldSpec& spec, int n);
  static LinearOperator zero(const FieldSpec& spec, int n);
  static LinearOperator transpose_op(const FieldSpec& spec, int n);
  /// Images of the basis E_ij listed in column-major index order.
  static LinearOperator from_images(const FieldSpec& spec, int n,
                                    const std::vector<Matrix>& images);
  /// A -> P A Q, or A -> P A^T Q when transposed; P, Q invertible.
  static LinearOperator two_sided(const Matrix& p, const Matrix& q,
                                  bool transposed);
  /// Left: A -> P A X; right: A -> X A P. P invertible, X arbitrary.
  static LinearOperator regular(Side side, const Matrix& p, const Matrix& x);
  /// M -> sum_i (M x^T)_i C_i, with M^T instead when transposed; x is a
  /// nonzero 1 x n row and C lists n generator matrices.
  static LinearOperator column_functional(const Matrix& x_row,
                                          const std::vector<Matrix>& c,
                                          bool transposed);

  const FieldSpec& spec() const { return mat_.spec(); }
  int n() const { return n_; }
  const Matrix& mat() const { return mat_; }

  Matrix apply(const Matrix& a) const;
  LinearOperator compose(const LinearOperator& inner) const;  // this after inner
  LinearOperator operator+(const LinearOperator& rhs) const;
  LinearOperator scale(const FieldElement& c) const;
  bool operator==(const LinearOperator& rhs) const;
  bool operator!=(const LinearOperator& rhs) const { return !(*this == rhs); }

  bool is_zero() const { return mat_.is_zero(); }
  bool is_bijective() const;

  /// V_T: the span of all rows of all matrices in the kernel of T.
  Subspace kernel_row_space() const;
  /// ker(T) as a subspace of the vectorization space K^{n^2}.
  Subspace kernel_vec_space() const;

 private:
  int n_;
  Matrix mat_;
};

/// rho(V) = {A : Row(A) <= V} as a subspace of the vectorization space,
/// spanned by {vec(e_i^T v_j)}; its dimension is n * dim(V).
Subspace rho_basis(const Subspace& v);

/// Generators C_1..C_n with C_{2k-1} = E_{2k-1,1} + E_{2k,2} and
/// C_{2k} = E_{2k,1} - E_{2k-1,2}, plus the map A -> sum a_{i1} C_i.
/// Requires even n and the rational field: the rank-2 guarantee for nonzero
/// combinations needs x^2 + y^2 = 0 to force x = y = 0.
struct PetrovicConstruction {
  std::vector<Matrix> generators;
  LinearOperator op;
};
PetrovicConstruction construct_petrovic(int n);

/// A -> sum_i a_{i1} C^{i-1} with C the companion matrix of an irreducible
/// monic polynomial of degree n >= 2. Irreducibility is verified by
/// exhaustive factor search over finite fields and is the caller's
/// responsibility over the rationals.
LinearOperator construct_botta(const FieldSpec& spec,
                               const std::vector<FieldElement>& monic_coeffs);

/// Left-multiplication matrices of the complex / quaternion / octonion
/// basis over the rationals (d = 2, 4, 8), built by Cayley-Dickson doubling,
/// plus the column-functional map they generate. Every nonzero rational
/// combination is invertible: the norm form is a sum of d squares.
struct DivisionAlgebraConstruction {
  std::vector<Matrix> generators;
  LinearOperator op;
};
DivisionAlgebraConstruction construct_division_algebra(int d);

}  // namespace greenrel
