#include "greenrel/operators.hpp"

#include <stdexcept>
#include <utility>

namespace greenrel {

int vec_index(int n, int i, int j) { return j * n + i; }

Matrix vec(const Matrix& a) {
  Matrix v(a.spec(), a.rows() * a.cols(), 1);
  for (int j = 0; j < a.cols(); ++j)
    for (int i = 0; i < a.rows(); ++i)
      v.set(vec_index(a.rows(), i, j), 0, a.at(i, j));
  return v;
}

Matrix unvec(const FieldSpec& spec, int n, const Matrix& column) {
  if (column.rows() != n * n || column.cols() != 1 || !(column.spec() == spec))
    throw std::invalid_argument("unvec: shape mismatch");
  Matrix a(spec, n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) a.set(i, j, column.at(vec_index(n, i, j), 0));
  return a;
}

LinearOperator::LinearOperator(int n, Matrix mat) : n_(n), mat_(std::move(mat)) {
  if (n <= 0 || mat_.rows() != n * n || mat_.cols() != n * n)
    throw std::invalid_argument("operator matrix must be n^2 x n^2");
}

LinearOperator LinearOperator::identity(const FieldSpec& spec, int n) {
  return LinearOperator(n, Matrix::identity(spec, n * n));
}

LinearOperator LinearOperator::zero(const FieldSpec& spec, int n) {
  return LinearOperator(n, Matrix(spec, n * n, n * n));
}

LinearOperator LinearOperator::from_images(const FieldSpec& spec, int n,
                                           const std::vector<Matrix>& images) {
  if (static_cast<int>(images.size()) != n * n)
    throw std::invalid_argument("from_images: need n^2 images");
  Matrix mat(spec, n * n, n * n);
  for (int t = 0; t < n * n; ++t) {
    const Matrix& img = images[t];
    if (!(img.spec() == spec) || img.rows() != n || img.cols() != n)
      throw std::invalid_argument("from_images: image shape mismatch");
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) mat.set(vec_index(n, i, j), t, img.at(i, j));
  }
  return LinearOperator(n, std::move(mat));
}

LinearOperator LinearOperator::transpose_op(const FieldSpec& spec, int n) {
  std::vector<Matrix> images;
  images.reserve(n * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) images.push_back(Matrix::unit(spec, n, n, j, i));
  return from_images(spec, n, images);
}

LinearOperator LinearOperator::two_sided(const Matrix& p, const Matrix& q,
                                         bool transposed) {
  if (!p.is_square() || !q.is_square() || p.rows() != q.rows() ||
      !(p.spec() == q.spec()))
    throw std::invalid_argument("two_sided: P, Q must be square of equal size");
  if (!is_invertible(p) || !is_invertible(q))
    throw std::domain_error("two_sided: P and Q must be invertible");
  int n = p.rows();
  std::vector<Matrix> images;
  images.reserve(n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      Matrix e = Matrix::unit(p.spec(), n, n, i, j);
      images.push_back(transposed ? p * e.transpose() * q : p * e * q);
    }
  }
  return from_images(p.spec(), n, images);
}

LinearOperator LinearOperator::regular(Side side, const Matrix& p,
                                       const Matrix& x) {
  if (!p.is_square() || !x.is_square() || p.rows() != x.rows() ||
      !(p.spec() == x.spec()))
    throw std::invalid_argument("regular: P, X must be square of equal size");
  if (!is_invertible(p)) throw std::domain_error("regular: P must be invertible");
  int n = p.rows();
  std::vector<Matrix> images;
  images.reserve(n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      Matrix e = Matrix::unit(p.spec(), n, n, i, j);
      images.push_back(side == Side::Left ? p * e * x : x * e * p);
    }
  }
  return from_images(p.spec(), n, images);
}

LinearOperator LinearOperator::column_functional(const Matrix& x_row,
                                                 const std::vector<Matrix>& c,
                                                 bool transposed) {
  if (x_row.rows() != 1) throw std::invalid_argument("x must be a row vector");
  if (x_row.is_zero()) throw std::invalid_argument("x must be nonzero");
  int n = x_row.cols();
  if (static_cast<int>(c.size()) != n)
    throw std::invalid_argument("need exactly n generator matrices");
  for (const Matrix& ci : c) {
    if (!(ci.spec() == x_row.spec()) || ci.rows() != n || ci.cols() != n)
      throw std::invalid_argument("generator shape mismatch");
  }
  // (E_ab x^T)_i = delta_{ia} x_b, so E_ab maps to x_b C_a (x_a C_b when
  // the transposed flag routes M^T through instead).
  std::vector<Matrix> images;
  images.reserve(n * n);
  for (int b = 0; b < n; ++b) {
    for (int a = 0; a < n; ++a) {
      images.push_back(transposed ? c[b].scale(x_row.at(0, a))
                                  : c[a].scale(x_row.at(0, b)));
    }
  }
  return from_images(x_row.spec(), n, images);
}

Matrix LinearOperator::apply(const Matrix& a) const {
  if (!(a.spec() == spec()) || a.rows() != n_ || a.cols() != n_)
    throw std::invalid_argument("apply: shape mismatch");
  return unvec(spec(), n_, mat_ * vec(a));
}

LinearOperator LinearOperator::compose(const LinearOperator& inner) const {
  if (!(spec() == inner.spec()) || n_ != inner.n_)
    throw std::invalid_argument("compose: operator mismatch");
  return LinearOperator(n_, mat_ * inner.mat_);
}

LinearOperator LinearOperator::operator+(const LinearOperator& rhs) const {
  if (!(spec() == rhs.spec()) || n_ != rhs.n_)
    throw std::invalid_argument("sum: operator mismatch");
  return LinearOperator(n_, mat_ + rhs.mat_);
}

LinearOperator LinearOperator::scale(const FieldElement& c) const {
  return LinearOperator(n_, mat_.scale(c));
}

bool LinearOperator::operator==(const LinearOperator& rhs) const {
  return n_ == rhs.n_ && mat_ == rhs.mat_;
}

bool LinearOperator::is_bijective() const { return rank(mat_) == n_ * n_; }

Subspace LinearOperator::kernel_vec_space() const { return kernel_basis(mat_); }

Subspace LinearOperator::kernel_row_space() const {
  Subspace ker = kernel_vec_space();
  if (ker.dim() == 0) return Subspace::zero(spec(), n_);
  Matrix stacked(spec(), ker.dim() * n_, n_);
  for (int b = 0; b < ker.dim(); ++b) {
    Matrix k = unvec(spec(), n_, ker.basis().row(b).transpose());
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) stacked.set(b * n_ + i, j, k.at(i, j));
  }
  return Subspace::row_space(stacked);
}

Subspace rho_basis(const Subspace& v) {
  int n = v.ambient_dim();
  if (v.dim() == 0) return Subspace::zero(v.spec(), n * n);
  Matrix stacked(v.spec(), n * v.dim(), n * n);
  int row = 0;
  for (int j = 0; j < v.dim(); ++j) {
    for (int i = 0; i < n; ++i) {
      // e_i^T v_j: matrix whose row i is v_j.
      for (int cidx = 0; cidx < n; ++cidx)
        stacked.set(row, vec_index(n, i, cidx), v.basis().at(j, cidx));
      ++row;
    }
  }
  return Subspace::row_space(stacked);
}

PetrovicConstruction construct_petrovic(int n) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("construct_petrovic: n must be even, n >= 2");
  FieldSpec spec = FieldSpec::rational();
  std::vector<Matrix> gens;
  gens.reserve(n);
  for (int k = 1; k <= n / 2; ++k) {
    int a = 2 * k - 2, b = 2 * k - 1;  // zero-based row pair
    gens.push_back(Matrix::unit(spec, n, n, a, 0) + Matrix::unit(spec, n, n, b, 1));
    gens.push_back(Matrix::unit(spec, n, n, b, 0) - Matrix::unit(spec, n, n, a, 1));
  }
  Matrix x(spec, 1, n);
  x.set(0, 0, FieldElement::one(spec));
  LinearOperator op = LinearOperator::column_functional(x, gens, false);
  return PetrovicConstruction{std::move(gens), std::move(op)};
}

namespace {

// Remainder of polynomial division; coefficients low degree first.
std::vector<FieldElement> poly_mod(std::vector<FieldElement> num,
                                   const std::vector<FieldElement>& den) {
  int dd = static_cast<int>(den.size()) - 1;
  FieldElement lead_inv = den.back().inverse();
  for (int k = static_cast<int>(num.size()) - 1; k >= dd; --k) {
    if (num[k].is_zero()) continue;
    FieldElement factor = num[k] * lead_inv;
    for (int j = 0; j <= dd; ++j)
      num[k - dd + j] = num[k - dd + j] - factor * den[j];
  }
  for (int k = 0; k < static_cast<int>(num.size()); ++k)
    if (k >= dd && !num[k].is_zero())
      throw std::logic_error("poly_mod: reduction failed");
  num.resize(dd > 0 ? dd : 1, FieldElement::zero(den[0].spec()));
  return num;
}

bool poly_is_zero(const std::vector<FieldElement>& p) {
  for (const auto& c : p)
    if (!c.is_zero()) return false;
  return true;
}

// Exhaustive trial division by monic polynomials of degree 1..n/2.
bool is_irreducible_finite(const FieldSpec& spec,
                           const std::vector<FieldElement>& f) {
  int n = static_cast<int>(f.size()) - 1;
  std::vector<FieldElement> elems = enumerate_field(spec);
  for (int deg = 1; deg <= n / 2; ++deg) {
    std::vector<std::int64_t> digits(deg, 0);
    while (true) {
      std::vector<FieldElement> g;
      g.reserve(deg + 1);
      for (int i = 0; i < deg; ++i) g.push_back(elems[digits[i]]);
      g.push_back(FieldElement::one(spec));
      if (poly_is_zero(poly_mod(f, g))) return false;
      int pos = 0;
      while (pos < deg && ++digits[pos] == static_cast<std::int64_t>(elems.size())) {
        digits[pos] = 0;
        ++pos;
      }
      if (pos == deg) break;
    }
  }
  return true;
}

}  // namespace

LinearOperator construct_botta(const FieldSpec& spec,
                               const std::vector<FieldElement>& monic_coeffs) {
  int n = static_cast<int>(monic_coeffs.size()) - 1;
  if (n < 2)
    throw std::invalid_argument("construct_botta: degree must be at least 2");
  if (!monic_coeffs.back().is_one())
    throw std::invalid_argument("construct_botta: polynomial must be monic");
  if (spec.is_finite() && !is_irreducible_finite(spec, monic_coeffs))
    throw std::domain_error("construct_botta: polynomial is reducible");
  Matrix c = Matrix::companion(spec, monic_coeffs);
  std::vector<Matrix> powers;
  powers.reserve(n);
  powers.push_back(Matrix::identity(spec, n));
  for (int i = 1; i < n; ++i) powers.push_back(powers.back() * c);
  Matrix x(spec, 1, n);
  x.set(0, 0, FieldElement::one(spec));
  return LinearOperator::column_functional(x, powers, false);
}

namespace {

struct StructureConstant {
  int index;
  int sign;
};

// Cayley-Dickson doubling of the multiplication tensor, starting from the
// reals; conjugation negates every basis element except e_0.
std::vector<std::vector<StructureConstant>> cayley_dickson(int d) {
  std::vector<std::vector<StructureConstant>> m = {{{0, 1}}};
  int dim = 1;
  while (dim < d) {
    std::vector<std::vector<StructureConstant>> next(
        2 * dim, std::vector<StructureConstant>(2 * dim));
    auto conj_sign = [](int t) { return t == 0 ? 1 : -1; };
    for (int x = 0; x < 2 * dim; ++x) {
      for (int y = 0; y < 2 * dim; ++y) {
        StructureConstant out{};
        if (x < dim && y < dim) {
          out = m[x][y];
        } else if (x < dim) {  // (a,0)(0,d) = (0, d a)
          StructureConstant s = m[y - dim][x];
          out = {s.index + dim, s.sign};
        } else if (y < dim) {  // (0,b)(c,0) = (0, b conj(c))
          StructureConstant s = m[x - dim][y];
          out = {s.index + dim, s.sign * conj_sign(y)};
        } else {  // (0,b)(0,d) = (-conj(d) b, 0)
          StructureConstant s = m[y - dim][x - dim];
          out = {s.index, -s.sign * conj_sign(y - dim)};
        }
        next[x][y] = out;
      }
    }
    m = std::move(next);
    dim *= 2;
  }
  return m;
}

}  // namespace

DivisionAlgebraConstruction construct_division_algebra(int d) {
  if (d != 2 && d != 4 && d != 8)
    throw std::invalid_argument("construct_division_algebra: d must be 2, 4 or 8");
  FieldSpec spec = FieldSpec::rational();
  auto mult = cayley_dickson(d);
  std::vector<Matrix> gens;
  gens.reserve(d);
  for (int k = 0; k < d; ++k) {
    Matrix ck(spec, d, d);
    for (int j = 0; j < d; ++j) {
      StructureConstant s = mult[k][j];
      ck.set(s.index, j, FieldElement::from_integer(spec, s.sign));
    }
    gens.push_back(std::move(ck));
  }
  Matrix x(spec, 1, d);
  x.set(0, 0, FieldElement::one(spec));
  LinearOperator op = LinearOperator::column_functional(x, gens, false);
  return DivisionAlgebraConstruction{std::move(gens), std::move(op)};
}

}  // namespace greenrel
