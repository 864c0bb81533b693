#include "greenrel/matrix.hpp"

#include <stdexcept>
#include <utility>

namespace greenrel {

namespace {

void check_compatible(const Matrix& a, const Matrix& b, bool same_shape) {
  if (!(a.spec() == b.spec()))
    throw std::invalid_argument("field spec mismatch");
  if (same_shape && (a.rows() != b.rows() || a.cols() != b.cols()))
    throw std::invalid_argument("dimension mismatch");
}

}  // namespace

Matrix::Matrix(const FieldSpec& spec, int rows, int cols)
    : spec_(spec), rows_(rows), cols_(cols) {
  if (rows <= 0 || cols <= 0)
    throw std::invalid_argument("matrix dimensions must be positive");
  entries_.assign(static_cast<size_t>(rows) * cols, FieldElement::zero(spec));
}

Matrix Matrix::identity(const FieldSpec& spec, int n) {
  return partial_identity(spec, n, n);
}

Matrix Matrix::partial_identity(const FieldSpec& spec, int n, int r) {
  if (r < 0 || r > n)
    throw std::invalid_argument("partial identity rank out of range");
  Matrix m(spec, n, n);
  for (int i = 0; i < r; ++i) m.set(i, i, FieldElement::one(spec));
  return m;
}

Matrix Matrix::unit(const FieldSpec& spec, int rows, int cols, int i, int j) {
  Matrix m(spec, rows, cols);
  m.set(i, j, FieldElement::one(spec));
  return m;
}

Matrix Matrix::companion(const FieldSpec& spec,
                         const std::vector<FieldElement>& monic_coeffs) {
  if (monic_coeffs.size() < 2)
    throw std::invalid_argument("companion: degree must be at least 1");
  if (!monic_coeffs.back().is_one())
    throw std::invalid_argument("companion: polynomial must be monic");
  int n = static_cast<int>(monic_coeffs.size()) - 1;
  Matrix m(spec, n, n);
  for (int i = 0; i + 1 < n; ++i) m.set(i + 1, i, FieldElement::one(spec));
  for (int i = 0; i < n; ++i) m.set(i, n - 1, -monic_coeffs[i]);
  return m;
}

Matrix Matrix::of_ints(const FieldSpec& spec,
                       std::initializer_list<std::initializer_list<int>> rows) {
  int r = static_cast<int>(rows.size());
  int c = static_cast<int>(rows.begin()->size());
  Matrix m(spec, r, c);
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != c)
      throw std::invalid_argument("ragged matrix literal");
    int j = 0;
    for (int v : row) m.set(i, j++, FieldElement::from_integer(spec, v));
    ++i;
  }
  return m;
}

void Matrix::set(int i, int j, const FieldElement& v) {
  if (!(v.spec() == spec_)) throw std::invalid_argument("field spec mismatch");
  entries_[i * cols_ + j] = v;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  check_compatible(*this, rhs, true);
  Matrix out(spec_, rows_, cols_);
  for (size_t k = 0; k < entries_.size(); ++k)
    out.entries_[k] = entries_[k] + rhs.entries_[k];
  return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
  check_compatible(*this, rhs, true);
  Matrix out(spec_, rows_, cols_);
  for (size_t k = 0; k < entries_.size(); ++k)
    out.entries_[k] = entries_[k] - rhs.entries_[k];
  return out;
}

Matrix Matrix::operator-() const {
  Matrix out(spec_, rows_, cols_);
  for (size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = -entries_[k];
  return out;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  check_compatible(*this, rhs, false);
  if (cols_ != rhs.rows_)
    throw std::invalid_argument("dimension mismatch in product");
  Matrix out(spec_, rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const FieldElement& a = at(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < rhs.cols_; ++j) {
        out.entries_[i * rhs.cols_ + j] =
            out.entries_[i * rhs.cols_ + j] + a * rhs.at(k, j);
      }
    }
  }
  return out;
}

Matrix Matrix::scale(const FieldElement& c) const {
  Matrix out(spec_, rows_, cols_);
  for (size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = entries_[k] * c;
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(spec_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.set(j, i, at(i, j));
  return out;
}

bool Matrix::operator==(const Matrix& rhs) const {
  if (!(spec_ == rhs.spec_) || rows_ != rhs.rows_ || cols_ != rhs.cols_)
    return false;
  return entries_ == rhs.entries_;
}

bool Matrix::is_zero() const {
  for (const auto& e : entries_)
    if (!e.is_zero()) return false;
  return true;
}

Matrix Matrix::row(int i) const {
  Matrix out(spec_, 1, cols_);
  for (int j = 0; j < cols_; ++j) out.set(0, j, at(i, j));
  return out;
}

Matrix Matrix::col(int j) const {
  Matrix out(spec_, rows_, 1);
  for (int i = 0; i < rows_; ++i) out.set(i, 0, at(i, j));
  return out;
}

RrefResult rref(const Matrix& m) {
  Matrix r = m;
  Matrix t = Matrix::identity(m.spec(), m.rows());
  std::vector<int> pivots;
  int pivot_row = 0;
  for (int col = 0; col < m.cols() && pivot_row < m.rows(); ++col) {
    int sel = -1;
    for (int i = pivot_row; i < m.rows(); ++i) {
      if (!r.at(i, col).is_zero()) {
        sel = i;
        break;
      }
    }
    if (sel < 0) continue;
    if (sel != pivot_row) {
      for (int j = 0; j < r.cols(); ++j) {
        FieldElement tmp = r.at(sel, j);
        r.set(sel, j, r.at(pivot_row, j));
        r.set(pivot_row, j, tmp);
      }
      for (int j = 0; j < t.cols(); ++j) {
        FieldElement tmp = t.at(sel, j);
        t.set(sel, j, t.at(pivot_row, j));
        t.set(pivot_row, j, tmp);
      }
    }
    FieldElement inv = r.at(pivot_row, col).inverse();
    if (!inv.is_one()) {
      for (int j = 0; j < r.cols(); ++j)
        r.set(pivot_row, j, r.at(pivot_row, j) * inv);
      for (int j = 0; j < t.cols(); ++j)
        t.set(pivot_row, j, t.at(pivot_row, j) * inv);
    }
    for (int i = 0; i < m.rows(); ++i) {
      if (i == pivot_row) continue;
      FieldElement factor = r.at(i, col);
      if (factor.is_zero()) continue;
      for (int j = 0; j < r.cols(); ++j)
        r.set(i, j, r.at(i, j) - factor * r.at(pivot_row, j));
      for (int j = 0; j < t.cols(); ++j)
        t.set(i, j, t.at(i, j) - factor * t.at(pivot_row, j));
    }
    pivots.push_back(col);
    ++pivot_row;
  }
  return RrefResult{std::move(r), static_cast<int>(pivots.size()),
                    std::move(pivots), std::move(t)};
}

int rank(const Matrix& m) { return rref(m).rank; }

bool is_invertible(const Matrix& m) {
  if (!m.is_square()) throw std::invalid_argument("is_invertible: not square");
  return rank(m) == m.rows();
}

Matrix inverse(const Matrix& m) {
  if (!m.is_square()) throw std::invalid_argument("inverse: not square");
  RrefResult r = rref(m);
  if (r.rank != m.rows()) throw std::domain_error("inverse: singular matrix");
  return r.transform;  // transform * m == I
}

Subspace::Subspace(const FieldSpec& spec, int ambient, int dim, Matrix basis)
    : spec_(spec), ambient_(ambient), dim_(dim), basis_(std::move(basis)) {}

Subspace Subspace::zero(const FieldSpec& spec, int ambient_dim) {
  // Matrix requires positive dimensions, so the empty basis is represented
  // by a single zero placeholder row.
  return Subspace(spec, ambient_dim, 0, Matrix(spec, 1, ambient_dim));
}

Subspace Subspace::full(const FieldSpec& spec, int ambient_dim) {
  return row_space(Matrix::identity(spec, ambient_dim));
}

Subspace Subspace::row_space(const Matrix& m) {
  RrefResult r = rref(m);
  if (r.rank == 0) return zero(m.spec(), m.cols());
  Matrix basis(m.spec(), r.rank, m.cols());
  for (int i = 0; i < r.rank; ++i)
    for (int j = 0; j < m.cols(); ++j) basis.set(i, j, r.rref.at(i, j));
  return Subspace(m.spec(), m.cols(), r.rank, std::move(basis));
}

Subspace Subspace::col_space(const Matrix& m) {
  return row_space(m.transpose());
}

bool Subspace::contains_row(const Matrix& v) const {
  if (v.rows() != 1 || v.cols() != ambient_)
    throw std::invalid_argument("contains_row: shape mismatch");
  if (v.is_zero()) return true;
  if (dim() == 0) return false;
  // Reduce v against the RREF basis; containment iff the residue vanishes.
  Matrix res = v;
  for (int i = 0; i < dim(); ++i) {
    int lead = -1;
    for (int j = 0; j < ambient_; ++j) {
      if (!basis_.at(i, j).is_zero()) {
        lead = j;
        break;
      }
    }
    FieldElement c = res.at(0, lead);
    if (c.is_zero()) continue;
    for (int j = 0; j < ambient_; ++j)
      res.set(0, j, res.at(0, j) - c * basis_.at(i, j));
  }
  return res.is_zero();
}

bool Subspace::contains(const Subspace& other) const {
  if (ambient_ != other.ambient_ || !(spec_ == other.spec_))
    throw std::invalid_argument("contains: ambient mismatch");
  for (int i = 0; i < other.dim(); ++i)
    if (!contains_row(other.basis_.row(i))) return false;
  return true;
}

Subspace Subspace::sum(const Subspace& other) const {
  if (ambient_ != other.ambient_ || !(spec_ == other.spec_))
    throw std::invalid_argument("sum: ambient mismatch");
  int total = dim() + other.dim();
  if (total == 0) return zero(spec_, ambient_);
  Matrix stacked(spec_, total, ambient_);
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < ambient_; ++j) stacked.set(i, j, basis_.at(i, j));
  for (int i = 0; i < other.dim(); ++i)
    for (int j = 0; j < ambient_; ++j)
      stacked.set(dim() + i, j, other.basis_.at(i, j));
  return row_space(stacked);
}

bool Subspace::operator==(const Subspace& rhs) const {
  if (!(spec_ == rhs.spec_) || ambient_ != rhs.ambient_ ||
      dim() != rhs.dim())
    return false;
  if (dim() == 0) return true;
  return basis_ == rhs.basis_;
}

std::optional<Matrix> solve_left(const Matrix& a, const Matrix& b) {
  if (!(a.spec() == b.spec()) || a.cols() != b.cols())
    throw std::invalid_argument("solve_left: shape mismatch");
  RrefResult rb = rref(b);
  // Row i of the result is the coordinate vector of row i of a in the RREF
  // basis of b, carried back through the recorded transform; free
  // coordinates (rows of the transform beyond the rank) stay zero.
  Matrix coeff(a.spec(), a.rows(), b.rows());
  for (int i = 0; i < a.rows(); ++i) {
    Matrix residue = a.row(i);
    for (int k = 0; k < rb.rank; ++k) {
      FieldElement c = residue.at(0, rb.pivot_cols[k]);
      if (c.is_zero()) continue;
      coeff.set(i, k, c);
      for (int j = 0; j < a.cols(); ++j)
        residue.set(0, j, residue.at(0, j) - c * rb.rref.at(k, j));
    }
    if (!residue.is_zero()) return std::nullopt;
  }
  return coeff * rb.transform;
}

Subspace kernel_basis(const Matrix& m) {
  RrefResult r = rref(m);
  int free_count = m.cols() - r.rank;
  if (free_count == 0) return Subspace::zero(m.spec(), m.cols());
  Matrix stacked(m.spec(), free_count, m.cols());
  int row = 0;
  std::vector<bool> is_pivot(m.cols(), false);
  for (int p : r.pivot_cols) is_pivot[p] = true;
  for (int j = 0; j < m.cols(); ++j) {
    if (is_pivot[j]) continue;
    stacked.set(row, j, FieldElement::one(m.spec()));
    for (int k = 0; k < r.rank; ++k)
      stacked.set(row, r.pivot_cols[k], -r.rref.at(k, j));
    ++row;
  }
  return Subspace::row_space(stacked);
}

RankFactorization factor_partial_identity(const Matrix& a) {
  if (!a.is_square())
    throw std::invalid_argument("factor_partial_identity: not square");
  RrefResult row_red = rref(a);         // transform * a == R
  RrefResult col_red = rref(row_red.rref.transpose());  // U2 * R^T == I_n(r)
  int r = row_red.rank;
  // R^T row-reduces exactly to the partial identity because every column of
  // an RREF matrix lies in the span of e_1..e_r.
  if (col_red.rref != Matrix::partial_identity(a.spec(), a.rows(), r))
    throw std::logic_error("factor_partial_identity: unexpected normal form");
  Matrix p = inverse(row_red.transform);
  Matrix q = inverse(col_red.transform.transpose());
  return RankFactorization{std::move(p), r, std::move(q)};
}

}  // namespace greenrel
