#include "greenrel/green.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace greenrel {

bool is_equivalence(GreenTag tag) {
  return tag == GreenTag::L || tag == GreenTag::R || tag == GreenTag::H ||
         tag == GreenTag::J;
}

std::string tag_name(GreenTag tag) {
  switch (tag) {
    case GreenTag::L: return "L";
    case GreenTag::R: return "R";
    case GreenTag::H: return "H";
    case GreenTag::J: return "J";
    case GreenTag::LeqL: return "leq-L";
    case GreenTag::LeqR: return "leq-R";
    case GreenTag::LeqH: return "leq-H";
    case GreenTag::LeqJ: return "leq-J";
  }
  throw std::logic_error("unreachable");
}

GreenTag parse_tag(const std::string& name) {
  for (GreenTag t : {GreenTag::L, GreenTag::R, GreenTag::H, GreenTag::J,
                     GreenTag::LeqL, GreenTag::LeqR, GreenTag::LeqH,
                     GreenTag::LeqJ}) {
    if (tag_name(t) == name) return t;
  }
  throw std::invalid_argument("unknown relation tag: " + name);
}

namespace {

void check_pair(const Matrix& a, const Matrix& b) {
  if (!(a.spec() == b.spec()))
    throw std::invalid_argument("field spec mismatch");
  if (!a.is_square() || a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrices must be square and of equal size");
}

}  // namespace

bool green_related(GreenTag rel, const Matrix& a, const Matrix& b) {
  check_pair(a, b);
  switch (rel) {
    case GreenTag::L:
      return Subspace::row_space(a) == Subspace::row_space(b);
    case GreenTag::R:
      return Subspace::col_space(a) == Subspace::col_space(b);
    case GreenTag::H:
      return green_related(GreenTag::L, a, b) &&
             green_related(GreenTag::R, a, b);
    case GreenTag::J:
      return rank(a) == rank(b);
    default:
      throw std::invalid_argument("green_related: not an equivalence tag");
  }
}

bool green_leq(GreenTag rel, const Matrix& a, const Matrix& b) {
  check_pair(a, b);
  switch (rel) {
    case GreenTag::LeqL:
      return Subspace::row_space(b).contains(Subspace::row_space(a));
    case GreenTag::LeqR:
      return Subspace::col_space(b).contains(Subspace::col_space(a));
    case GreenTag::LeqH:
      return green_leq(GreenTag::LeqL, a, b) &&
             green_leq(GreenTag::LeqR, a, b);
    case GreenTag::LeqJ:
      return rank(a) <= rank(b);
    default:
      throw std::invalid_argument("green_leq: not a pre-order tag");
  }
}

namespace {

std::string subspace_key(const Subspace& s) {
  std::string key = std::to_string(s.dim());
  for (int i = 0; i < s.dim(); ++i)
    for (int j = 0; j < s.ambient_dim(); ++j)
      key += "," + s.basis().at(i, j).str();
  return key;
}

}  // namespace

ClassLabel class_label(GreenTag equivalence, const Matrix& a) {
  if (!is_equivalence(equivalence))
    throw std::invalid_argument("class_label: pre-order tags have no classes");
  if (!a.is_square())
    throw std::invalid_argument("class_label: matrix must be square");
  ClassLabel label;
  label.rel_ = equivalence;
  switch (equivalence) {
    case GreenTag::L:
      label.key_ = "L:" + subspace_key(Subspace::row_space(a));
      break;
    case GreenTag::R:
      label.key_ = "R:" + subspace_key(Subspace::col_space(a));
      break;
    case GreenTag::H:
      label.key_ = "H:" + subspace_key(Subspace::row_space(a)) + ";" +
                   subspace_key(Subspace::col_space(a));
      break;
    case GreenTag::J:
      label.key_ = "J:" + std::to_string(rank(a));
      break;
    default:
      break;
  }
  return label;
}

BigInt count_rank_matrices(int n, std::int64_t q, int r) {
  if (r < 0 || r > n) throw std::invalid_argument("rank out of range");
  if (q < 2 || !(is_prime(q) || q == 4))
    throw std::invalid_argument("unsupported field order");
  BigInt qn = pow(BigInt(q), n);
  BigInt qr = pow(BigInt(q), r);
  BigInt num = 1, den = 1;
  BigInt qi = 1;
  for (int i = 0; i < r; ++i) {
    num *= (qn - qi) * (qn - qi);
    den *= (qr - qi);
    qi *= q;
  }
  return num / den;
}

MatrixEnumerator::MatrixEnumerator(const FieldSpec& spec, int n)
    : spec_(spec), n_(n) {
  if (!spec.is_finite())
    throw std::domain_error("enumerate_matrices: field is infinite");
  if (n <= 0) throw std::invalid_argument("matrix size must be positive");
  q_ = static_cast<std::uint64_t>(spec.order());
  size_ = 1;
  for (int t = 0; t < n * n; ++t) {
    if (size_ > (1ull << 20) / q_)
      throw std::domain_error("enumerate_matrices: q^(n^2) exceeds 2^20");
    size_ *= q_;
  }
}

Matrix MatrixEnumerator::at(std::uint64_t index) const {
  if (index >= size_) throw std::out_of_range("matrix index out of range");
  Matrix m(spec_, n_, n_);
  for (int t = 0; t < n_ * n_; ++t) {
    std::int64_t digit = static_cast<std::int64_t>(index % q_);
    index /= q_;
    if (digit != 0)
      m.set(t % n_, t / n_, FieldElement::from_code(spec_, digit));
  }
  return m;
}

std::uint64_t MatrixEnumerator::index_of(const Matrix& m) const {
  if (!(m.spec() == spec_) || m.rows() != n_ || m.cols() != n_)
    throw std::invalid_argument("index_of: shape mismatch");
  std::uint64_t index = 0;
  for (int t = n_ * n_ - 1; t >= 0; --t)
    index = index * q_ + static_cast<std::uint64_t>(m.at(t % n_, t / n_).code());
  return index;
}

std::vector<Matrix> MatrixEnumerator::all() const {
  std::vector<Matrix> out;
  out.reserve(size_);
  for (std::uint64_t i = 0; i < size_; ++i) out.push_back(at(i));
  return out;
}

namespace {

// Splits I_n(r) as a sum of two rank-k diagonal matrices, |K| > 2 case:
// diag(1-h,...,1-h, 1,...,1, 0,...) + diag(h,...,h, -1,...,-1, 0,...).
std::pair<Matrix, Matrix> split_partial_identity_big_field(
    const FieldSpec& spec, int n, int r, int k) {
  FieldElement one = FieldElement::one(spec);
  FieldElement h = spec.is_finite() ? FieldElement::from_code(spec, 2)
                                    : FieldElement::from_integer(spec, 2);
  Matrix d1(spec, n, n), d2(spec, n, n);
  for (int i = 0; i < r; ++i) {
    d1.set(i, i, one - h);
    d2.set(i, i, h);
  }
  for (int i = r; i < k; ++i) {
    d1.set(i, i, one);
    d2.set(i, i, -one);
  }
  return {d1, d2};
}

// GF(2), k < n:  I_n(r) = (I_n(r) + S_k) + S_k with S_k = sum E_{i,i+1}.
// GF(2), k = n:  I_n(r) = (I_n(r) + W) + W with W = I_n(1) + E_{n,1} + S_{n-1}.
std::pair<Matrix, Matrix> split_partial_identity_gf2_part1(const FieldSpec& spec,
                                                           int n, int r, int k) {
  FieldElement one = FieldElement::one(spec);
  Matrix d2(spec, n, n);
  if (k < n) {
    for (int i = 0; i < k; ++i) d2.set(i, i + 1, one);
  } else {
    d2.set(0, 0, one);
    d2.set(n - 1, 0, d2.at(n - 1, 0) + one);
    for (int i = 0; i + 1 < n; ++i) d2.set(i, i + 1, one);
  }
  Matrix d1 = Matrix::partial_identity(spec, n, r) + d2;
  return {d1, d2};
}

std::pair<Matrix, Matrix> split_partial_identity(const FieldSpec& spec, int n,
                                                 int r, int k);

// GF(2), k = r - 1, r >= 3: block construction with the fixed 3x3 pair
// A1 = [[1,1,0],[1,1,0],[0,0,1]], A2 = [[0,1,0],[1,0,0],[0,0,0]] and a
// recursive rank-(r-3) split of I_{n-3}(r-3) in the lower block.
std::pair<Matrix, Matrix> split_partial_identity_gf2_part2(const FieldSpec& spec,
                                                           int n, int r) {
  Matrix a1 = Matrix::of_ints(spec, {{1, 1, 0}, {1, 1, 0}, {0, 0, 1}});
  Matrix a2 = Matrix::of_ints(spec, {{0, 1, 0}, {1, 0, 0}, {0, 0, 0}});
  Matrix d1(spec, n, n), d2(spec, n, n);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      d1.set(i, j, a1.at(i, j));
      d2.set(i, j, a2.at(i, j));
    }
  }
  if (n > 3) {
    auto [b1, b2] = split_partial_identity(spec, n - 3, r - 3, r - 3);
    for (int i = 0; i < n - 3; ++i) {
      for (int j = 0; j < n - 3; ++j) {
        d1.set(3 + i, 3 + j, b1.at(i, j));
        d2.set(3 + i, 3 + j, b2.at(i, j));
      }
    }
  }
  return {d1, d2};
}

// Rank-k + rank-k split of I_n(r); r <= k <= n.
std::pair<Matrix, Matrix> split_partial_identity(const FieldSpec& spec, int n,
                                                 int r, int k) {
  bool gf2 = spec.is_finite() && spec.order() == 2;
  if (!gf2) return split_partial_identity_big_field(spec, n, r, k);
  if (n == 1) {
    // Degenerate size: [0] = [1] + [1] is the only nonzero split.
    if (k == 0) return {Matrix(spec, 1, 1), Matrix(spec, 1, 1)};
    if (r == 0) {
      Matrix one_mat = Matrix::identity(spec, 1);
      return {one_mat, one_mat};
    }
    throw std::domain_error(
        "rank_sum_decompose: [1] over GF(2) is not a sum of two rank-1 "
        "matrices");
  }
  return split_partial_identity_gf2_part1(spec, n, r, k);
}

}  // namespace

std::pair<Matrix, Matrix> rank_sum_decompose(const Matrix& a, int k) {
  if (!a.is_square())
    throw std::invalid_argument("rank_sum_decompose: matrix must be square");
  int n = a.rows();
  RankFactorization f = factor_partial_identity(a);
  int r = f.rank;
  bool gf2 = a.spec().is_finite() && a.spec().order() == 2;

  std::pair<Matrix, Matrix> split = [&] {
    if (r <= k && k <= n) return split_partial_identity(a.spec(), n, r, k);
    if (k == r - 1 && r >= 3) {
      if (gf2) return split_partial_identity_gf2_part2(a.spec(), n, r);
      FieldElement one = FieldElement::one(a.spec());
      FieldElement h = a.spec().is_finite()
                           ? FieldElement::from_code(a.spec(), 2)
                           : FieldElement::from_integer(a.spec(), 2);
      Matrix d1(a.spec(), n, n), d2(a.spec(), n, n);
      for (int i = 0; i < r - 2; ++i) {
        d1.set(i, i, one - h);
        d2.set(i, i, h);
      }
      d1.set(r - 2, r - 2, one);
      d2.set(r - 1, r - 1, one);
      return std::make_pair(d1, d2);
    }
    throw std::invalid_argument("rank_sum_decompose: k out of valid range");
  }();

  Matrix b = f.p * split.first * f.q;
  Matrix c = f.p * split.second * f.q;
  // Never trust the construction branch: check the contract on every output.
  if (rank(b) != k || rank(c) != k || b + c != a)
    throw std::logic_error("rank_sum_decompose: output failed verification");
  return {b, c};
}

std::vector<FieldElement> pencil_lambda_set(const Matrix& a, const Matrix& b,
                                            int r) {
  check_pair(a, b);
  if (!a.spec().is_finite())
    throw std::domain_error("pencil_lambda_set: field is infinite");
  if (r < 0 || r > a.rows())
    throw std::invalid_argument("pencil_lambda_set: rank out of range");
  std::vector<FieldElement> out;
  for (const FieldElement& lambda : enumerate_field(a.spec())) {
    if (rank(a + b.scale(lambda)) == r) out.push_back(lambda);
  }
  return out;
}

namespace {

std::vector<std::uint64_t> pencil_census_range(const std::vector<Matrix>& mats,
                                               const std::vector<FieldElement>&
                                                   scalars,
                                               int r, std::uint64_t b_begin,
                                               std::uint64_t b_end) {
  std::vector<std::uint64_t> hist(scalars.size() + 1, 0);
  for (std::uint64_t bi = b_begin; bi < b_end; ++bi) {
    std::vector<Matrix> scaled;
    scaled.reserve(scalars.size());
    for (const FieldElement& lambda : scalars)
      scaled.push_back(mats[bi].scale(lambda));
    for (const Matrix& a : mats) {
      size_t card = 0;
      for (const Matrix& lb : scaled)
        if (rank(a + lb) == r) ++card;
      ++hist[card];
    }
  }
  return hist;
}

}  // namespace

std::vector<std::uint64_t> pencil_cardinality_census_serial(
    const FieldSpec& spec, int n, int r) {
  MatrixEnumerator en(spec, n);
  if (en.size() > (1ull << 12))
    throw std::domain_error("pencil census: pair count exceeds 2^24");
  std::vector<Matrix> mats = en.all();
  return pencil_census_range(mats, enumerate_field(spec), r, 0, en.size());
}

std::vector<std::uint64_t> pencil_cardinality_census(const FieldSpec& spec,
                                                     int n, int r) {
  MatrixEnumerator en(spec, n);
  if (en.size() > (1ull << 12))
    throw std::domain_error("pencil census: pair count exceeds 2^24");
  std::vector<Matrix> mats = en.all();
  std::vector<FieldElement> scalars = enumerate_field(spec);
  std::vector<std::uint64_t> hist(scalars.size() + 1, 0);
#ifdef _OPENMP
#pragma omp parallel
  {
    std::vector<std::uint64_t> local(scalars.size() + 1, 0);
#pragma omp for schedule(dynamic, 8) nowait
    for (std::int64_t bi = 0; bi < static_cast<std::int64_t>(mats.size());
         ++bi) {
      auto part = pencil_census_range(mats, scalars, r, bi, bi + 1);
      for (size_t c = 0; c < local.size(); ++c) local[c] += part[c];
    }
#pragma omp critical
    for (size_t c = 0; c < hist.size(); ++c) hist[c] += local[c];
  }
#else
  hist = pencil_census_range(mats, scalars, r, 0, mats.size());
#endif
  return hist;
}

}  // namespace greenrel
