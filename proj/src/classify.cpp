#include "greenrel/classify.hpp"

#include <stdexcept>
#include <utility>

#include "sampling.hpp"

namespace greenrel {

namespace {

struct Position {
  int row = -1, col = -1;
  bool found() const { return row >= 0; }
};

Position first_nonzero(const Matrix& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!m.at(i, j).is_zero()) return {i, j};
  return {};
}

// M = c * r with r the first nonzero row of M taken as-is and c the matching
// column factor; fails (empty) when M is zero or has rank >= 2.
struct RankOneFactors {
  Matrix col;  // n x 1
  Matrix row;  // 1 x n
};
std::optional<RankOneFactors> rank_one_factor(const Matrix& m) {
  Position lead = first_nonzero(m);
  if (!lead.found()) return std::nullopt;
  Matrix r = m.row(lead.row);
  FieldElement pivot_inv = r.at(0, lead.col).inverse();
  Matrix c(m.spec(), m.rows(), 1);
  for (int i = 0; i < m.rows(); ++i)
    c.set(i, 0, m.at(i, lead.col) * pivot_inv);
  if (c * r != m) return std::nullopt;
  return RankOneFactors{std::move(c), std::move(r)};
}

// (P, Q) with t(A) = P A Q, assuming the non-transposed branch; throws tagged
// std::invalid_argument on any refutation. Final exact verification included.
std::pair<Matrix, Matrix> recover_two_sided(const LinearOperator& t) {
  const FieldSpec& spec = t.spec();
  int n = t.n();
  auto basis_image = [&](int i, int j) {
    return t.apply(Matrix::unit(spec, n, n, i, j));
  };

  auto m00 = rank_one_factor(basis_image(0, 0));
  if (!m00) throw std::invalid_argument("rank-1-image-violated");
  Matrix p_col = m00->col;  // proportional to the first column of P
  Position pi = first_nonzero(p_col);
  FieldElement p_anchor_inv = p_col.at(pi.row, 0).inverse();

  // Rows of Q, all scaled consistently by the same column factor.
  Matrix q(spec, n, n);
  for (int j = 0; j < n; ++j) {
    Matrix image = basis_image(0, j);
    for (int k = 0; k < n; ++k)
      q.set(j, k, image.at(pi.row, k) * p_anchor_inv);
  }
  Position qi = first_nonzero(q.row(0));
  if (!qi.found()) throw std::invalid_argument("rank-1-image-violated");
  FieldElement q_anchor_inv = q.at(0, qi.col).inverse();

  Matrix p(spec, n, n);
  for (int i = 0; i < n; ++i) {
    Matrix image = basis_image(i, 0);
    for (int k = 0; k < n; ++k)
      p.set(k, i, image.at(k, qi.col) * q_anchor_inv);
  }

  if (!is_invertible(p) || !is_invertible(q))
    throw std::invalid_argument("factor-not-invertible");
  // Leading-one normalization of P; the scalar moves into Q.
  FieldElement gamma = p.at(first_nonzero(p).row, first_nonzero(p).col);
  p = p.scale(gamma.inverse());
  q = q.scale(gamma);
  if (LinearOperator::two_sided(p, q, false) != t)
    throw std::invalid_argument("verification-failed");
  return {p, q};
}

}  // namespace

std::string form_name(const PreserverForm& form) {
  if (std::holds_alternative<ZeroForm>(form)) return "zero";
  if (const auto* ts = std::get_if<TwoSidedForm>(&form))
    return ts->transposed ? "two-sided-transpose" : "two-sided";
  if (std::holds_alternative<LeftRegularForm>(form)) return "left-regular";
  if (std::holds_alternative<RightRegularForm>(form)) return "right-regular";
  if (std::holds_alternative<ColumnFunctionalForm>(form))
    return "column-functional";
  return "exotic";
}

bool is_exotic(const PreserverForm& form) {
  return std::holds_alternative<ExoticForm>(form);
}

LinearOperator materialize(const PreserverForm& form, const FieldSpec& spec,
                           int n) {
  if (std::holds_alternative<ZeroForm>(form))
    return LinearOperator::zero(spec, n);
  if (const auto* ts = std::get_if<TwoSidedForm>(&form))
    return LinearOperator::two_sided(ts->p, ts->q, ts->transposed);
  if (const auto* lr = std::get_if<LeftRegularForm>(&form))
    return LinearOperator::regular(Side::Left, lr->p, lr->x);
  if (const auto* rr = std::get_if<RightRegularForm>(&form))
    return LinearOperator::regular(Side::Right, rr->p, rr->x);
  if (const auto* cf = std::get_if<ColumnFunctionalForm>(&form))
    return LinearOperator::column_functional(cf->x, cf->c, cf->transposed);
  throw std::domain_error("materialize: exotic form has no operator");
}

PreserverForm classify_bijective_rank1(const LinearOperator& t) {
  const FieldSpec& spec = t.spec();
  int n = t.n();
  if (!t.is_bijective()) throw std::invalid_argument("not-bijective");
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (rank(t.apply(Matrix::unit(spec, n, n, i, j))) != 1)
        throw std::invalid_argument("rank-1-image-violated");
  // Spot-check images of sampled rank-1 matrices as well; full
  // set-preservation remains the caller's claim.
  internal::Sampler sampler(spec, 0xA5A5, 3);
  for (int trial = 0; trial < 20; ++trial)
    if (rank(t.apply(sampler.rank_one(n))) != 1)
      throw std::invalid_argument("rank-1-image-violated");

  bool transposed = false;
  if (n >= 2) {
    Matrix img11 = t.apply(Matrix::unit(spec, n, n, 0, 0));
    Matrix img21 = t.apply(Matrix::unit(spec, n, n, 1, 0));
    if (green_related(GreenTag::L, img11, img21)) {
      transposed = false;
    } else if (green_related(GreenTag::R, img11, img21)) {
      transposed = true;
    } else {
      throw std::invalid_argument("branch-test-inconclusive");
    }
  }
  if (!transposed) {
    auto [p, q] = recover_two_sided(t);
    return TwoSidedForm{std::move(p), std::move(q), false};
  }
  LinearOperator conj = t.compose(LinearOperator::transpose_op(spec, n));
  auto [p, q] = recover_two_sided(conj);
  if (LinearOperator::two_sided(p, q, true) != t)
    throw std::invalid_argument("verification-failed");
  return TwoSidedForm{std::move(p), std::move(q), true};
}

LClassification classify_l_preserver(const LinearOperator& t) {
  const FieldSpec& spec = t.spec();
  int n = t.n();
  if (t.is_zero()) return {ZeroForm{}, std::nullopt};

  Subspace v_t = t.kernel_row_space();
  if (v_t.dim() == n)
    return {ExoticForm{"kernel-collapse"}, std::nullopt};

  // Greedy standard-basis complement of V_T, in index order.
  std::vector<Matrix> u_rows;
  std::vector<int> u_cols;
  Subspace span = v_t;
  for (int j = 0; j < n && span.dim() < n; ++j) {
    Matrix e = Matrix::unit(spec, 1, n, 0, j);
    if (!span.contains_row(e)) {
      u_rows.push_back(e);
      u_cols.push_back(j);
      span = span.sum(Subspace::row_space(e));
    }
  }
  int s = static_cast<int>(u_rows.size());

  auto image_of = [&](int row_index, const Matrix& u) {
    // e_row^T u: the matrix whose row row_index is u.
    Matrix m(spec, n, n);
    for (int k = 0; k < n; ++k) m.set(row_index, k, u.at(0, k));
    return t.apply(m);
  };

  std::vector<Matrix> w_rows;
  std::vector<Matrix> phis;
  for (int i = 0; i < s; ++i) {
    Matrix first = image_of(0, u_rows[i]);
    if (rank(first) != 1)
      return {ExoticForm{"rank-1-image-violated"}, std::nullopt};
    Matrix w = Subspace::row_space(first).basis().row(0);
    Position anchor = first_nonzero(w);
    FieldElement w_anchor_inv = w.at(0, anchor.col).inverse();
    Matrix phi(spec, n, n);
    for (int j = 0; j < n; ++j) {
      Matrix image = image_of(j, u_rows[i]);
      Matrix y(spec, 1, n);
      for (int k = 0; k < n; ++k)
        y.set(0, k, image.at(k, anchor.col) * w_anchor_inv);
      if (y.transpose() * w != image)
        return {ExoticForm{"image-outside-target-class"}, std::nullopt};
      for (int k = 0; k < n; ++k) phi.set(j, k, y.at(0, k));
    }
    if (!is_invertible(phi))
      return {ExoticForm{"phi-not-invertible"}, std::nullopt};
    w_rows.push_back(std::move(w));
    phis.push_back(std::move(phi));
  }

  // phi_1 = c_i phi_i, one scalar per complement vector.
  std::vector<FieldElement> scalars;
  Position pa = first_nonzero(phis[0]);
  FieldElement lead = phis[0].at(pa.row, pa.col);
  for (int i = 0; i < s; ++i) {
    if (phis[i].at(pa.row, pa.col).is_zero())
      return {ExoticForm{"phi-scalars-inconsistent"}, std::nullopt};
    FieldElement c = lead / phis[i].at(pa.row, pa.col);
    if (phis[i].scale(c) != phis[0])
      return {ExoticForm{"phi-scalars-inconsistent"}, std::nullopt};
    scalars.push_back(c);
  }

  // P realizes phi_1(y) = y P^T; X realizes chi: u_i -> c_i^{-1} w_i, V_T -> 0.
  Matrix p = phis[0].transpose();
  Matrix basis(spec, n, n);
  Matrix targets(spec, n, n);
  for (int i = 0; i < s; ++i) {
    for (int k = 0; k < n; ++k) {
      basis.set(i, k, u_rows[i].at(0, k));
      targets.set(i, k, scalars[i].inverse() * w_rows[i].at(0, k));
    }
  }
  for (int i = 0; i < v_t.dim(); ++i)
    for (int k = 0; k < n; ++k)
      basis.set(s + i, k, v_t.basis().at(i, k));
  Matrix x = inverse(basis) * targets;

  if (LinearOperator::regular(Side::Left, p, x) != t)
    return {ExoticForm{"verification-failed"}, std::nullopt};

  // Leading-one normalization; phi_1 and the scalars rescale with P.
  Position pp = first_nonzero(p);
  FieldElement gamma = p.at(pp.row, pp.col);
  p = p.scale(gamma.inverse());
  x = x.scale(gamma);
  for (FieldElement& c : scalars) c = c / gamma;
  if (LinearOperator::regular(Side::Left, p, x) != t)
    return {ExoticForm{"verification-failed"}, std::nullopt};

  LClassifyCertificate cert{v_t, std::move(u_rows), std::move(w_rows), p,
                            std::move(scalars)};
  return {LeftRegularForm{std::move(p), std::move(x)}, std::move(cert)};
}

PreserverForm classify_r_preserver(const LinearOperator& t) {
  const FieldSpec& spec = t.spec();
  int n = t.n();
  LinearOperator tau = LinearOperator::transpose_op(spec, n);
  LinearOperator conj = tau.compose(t).compose(tau);  // A -> t(A^T)^T
  LClassification lres = classify_l_preserver(conj);
  if (std::holds_alternative<ZeroForm>(lres.form)) return ZeroForm{};
  if (const auto* ex = std::get_if<ExoticForm>(&lres.form)) return *ex;
  const auto& lr = std::get<LeftRegularForm>(lres.form);
  Matrix p = lr.p.transpose();
  Matrix x = lr.x.transpose();
  Position pp = first_nonzero(p);
  FieldElement gamma = p.at(pp.row, pp.col);
  p = p.scale(gamma.inverse());
  x = x.scale(gamma);
  if (LinearOperator::regular(Side::Right, p, x) != t)
    return ExoticForm{"verification-failed"};
  return RightRegularForm{std::move(x), std::move(p)};
}

namespace {

// Nonzero combinations of the generators must all be invertible; checked
// exhaustively when the coefficient space is enumerable, by fixed-seed
// sampling over Q.
bool combinations_invertible(const std::vector<Matrix>& gens,
                             const FieldSpec& spec, int n) {
  if (spec.is_finite()) {
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) {
      if (total > (1ull << 16)) break;
      total *= spec.order();
    }
    if (total <= (1ull << 16)) {
      std::vector<FieldElement> elems = enumerate_field(spec);
      std::vector<std::int64_t> digits(n, 0);
      while (true) {
        bool all_zero = true;
        for (std::int64_t d : digits)
          if (d != 0) all_zero = false;
        if (!all_zero) {
          Matrix combo(spec, n, n);
          for (int i = 0; i < n; ++i)
            combo = combo + gens[i].scale(elems[digits[i]]);
          if (!is_invertible(combo)) return false;
        }
        int pos = 0;
        while (pos < n &&
               ++digits[pos] == static_cast<std::int64_t>(elems.size())) {
          digits[pos] = 0;
          ++pos;
        }
        if (pos == n) break;
      }
      return true;
    }
  }
  internal::Sampler sampler(spec, 0x5EED, 5);
  for (int trial = 0; trial < 200; ++trial) {
    Matrix coeffs = sampler.nonzero_row(n);
    Matrix combo(spec, n, n);
    for (int i = 0; i < n; ++i) combo = combo + gens[i].scale(coeffs.at(0, i));
    if (!is_invertible(combo)) return false;
  }
  return true;
}

}  // namespace

PreserverForm classify_h_preserver(const LinearOperator& t) {
  const FieldSpec& spec = t.spec();
  int n = t.n();
  if (t.is_zero()) return ZeroForm{};
  if (t.is_bijective()) {
    try {
      return classify_bijective_rank1(t);
    } catch (const std::invalid_argument& e) {
      return ExoticForm{e.what()};
    }
  }

  // Non-bijective branch: the kernel should be {M : M x^T = 0} (or its
  // transposed twin), so the kernel matrices share a one-dimensional joint
  // right (resp. left) kernel generated by x^T.
  Subspace ker = t.kernel_vec_space();
  std::vector<Matrix> kernel_mats;
  for (int b = 0; b < ker.dim(); ++b)
    kernel_mats.push_back(unvec(spec, n, ker.basis().row(b).transpose()));

  auto joint_kernel = [&](bool transpose) {
    Matrix stacked(spec, std::max(1, static_cast<int>(kernel_mats.size()) * n),
                   n);
    for (size_t b = 0; b < kernel_mats.size(); ++b) {
      Matrix k = transpose ? kernel_mats[b].transpose() : kernel_mats[b];
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) stacked.set(b * n + i, j, k.at(i, j));
    }
    return kernel_basis(stacked);
  };

  bool transposed = false;
  Subspace joint = joint_kernel(false);
  if (joint.dim() != 1) {
    joint = joint_kernel(true);
    if (joint.dim() != 1) return ExoticForm{"kernel-not-column-functional"};
    transposed = true;
  }
  Matrix x = joint.basis().row(0);  // RREF row: leading entry already 1
  Position xa = first_nonzero(x);

  // C_i = T(M_i) for the canonical M_i with M_i x^T = e_i^T.
  std::vector<Matrix> gens;
  FieldElement x_anchor_inv = x.at(0, xa.col).inverse();
  for (int i = 0; i < n; ++i) {
    Matrix m = transposed ? Matrix::unit(spec, n, n, xa.col, i)
                          : Matrix::unit(spec, n, n, i, xa.col);
    gens.push_back(t.apply(m.scale(x_anchor_inv)));
  }

  Matrix stacked_vecs(spec, n, n * n);
  for (int i = 0; i < n; ++i) {
    Matrix v = vec(gens[i]);
    for (int k = 0; k < n * n; ++k) stacked_vecs.set(i, k, v.at(k, 0));
  }
  if (rank(stacked_vecs) != n) return ExoticForm{"generators-dependent"};

  if (LinearOperator::column_functional(x, gens, transposed) != t)
    return ExoticForm{"verification-failed"};
  if (!combinations_invertible(gens, spec, n))
    return ExoticForm{"singular-combination"};
  return ColumnFunctionalForm{std::move(x), std::move(gens), transposed};
}

PreserverForm classify_j_preserver(const LinearOperator& t) {
  if (t.is_zero()) return ZeroForm{};
  if (!t.is_bijective())
    return ExoticForm{"nonzero-non-bijective-j-preserver"};
  try {
    return classify_bijective_rank1(t);
  } catch (const std::invalid_argument& e) {
    return ExoticForm{e.what()};
  }
}

}  // namespace greenrel
