#include "greenrel/verify.hpp"

#include "sampling.hpp"

#include <atomic>
#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace greenrel {

namespace {

bool related_or_leq(GreenTag rel, const Matrix& a, const Matrix& b) {
  return is_equivalence(rel) ? green_related(rel, a, b) : green_leq(rel, a, b);
}

// Cached per-index data for exhaustive scans.
struct ExhaustiveCache {
  explicit ExhaustiveCache(const FieldSpec& spec, int n) : en(spec, n) {
    if (en.size() > (1ull << 12))
      throw std::domain_error("exhaustive check: pair count exceeds 2^24");
    mats = en.all();
    rows.reserve(mats.size());
    cols.reserve(mats.size());
    ranks.reserve(mats.size());
    for (const Matrix& m : mats) {
      rows.push_back(Subspace::row_space(m));
      cols.push_back(Subspace::col_space(m));
      ranks.push_back(rank(m));
    }
  }

  bool related(GreenTag rel, std::uint64_t a, std::uint64_t b) const {
    switch (rel) {
      case GreenTag::L: return rows[a] == rows[b];
      case GreenTag::R: return cols[a] == cols[b];
      case GreenTag::H: return rows[a] == rows[b] && cols[a] == cols[b];
      case GreenTag::J: return ranks[a] == ranks[b];
      case GreenTag::LeqL: return rows[b].contains(rows[a]);
      case GreenTag::LeqR: return cols[b].contains(cols[a]);
      case GreenTag::LeqH:
        return rows[b].contains(rows[a]) && cols[b].contains(cols[a]);
      case GreenTag::LeqJ: return ranks[a] <= ranks[b];
    }
    throw std::logic_error("unreachable");
  }

  std::vector<std::uint64_t> images(const LinearOperator& t) const {
    std::vector<std::uint64_t> img;
    img.reserve(mats.size());
    for (const Matrix& m : mats) img.push_back(en.index_of(t.apply(m)));
    return img;
  }

  MatrixEnumerator en;
  std::vector<Matrix> mats;
  std::vector<Subspace> rows, cols;
  std::vector<int> ranks;
};

Verdict exhaustive_preserves(const LinearOperator& t, GreenTag rel) {
  ExhaustiveCache cache(t.spec(), t.n());
  std::vector<std::uint64_t> img = cache.images(t);
  Verdict v;
  v.mode = Strategy::exhaustive();
  for (std::uint64_t a = 0; a < cache.mats.size(); ++a) {
    for (std::uint64_t b = 0; b < cache.mats.size(); ++b) {
      if (!cache.related(rel, a, b)) continue;
      ++v.checked;
      if (!cache.related(rel, img[a], img[b])) {
        v.holds = false;
        v.witness = {cache.mats[a], cache.mats[b]};
        return v;
      }
    }
  }
  return v;
}

Verdict exhaustive_strongly_preserves(const LinearOperator& t, GreenTag rel) {
  ExhaustiveCache cache(t.spec(), t.n());
  std::vector<std::uint64_t> img = cache.images(t);
  Verdict v;
  v.mode = Strategy::exhaustive();
  for (std::uint64_t a = 0; a < cache.mats.size(); ++a) {
    for (std::uint64_t b = 0; b < cache.mats.size(); ++b) {
      ++v.checked;
      if (cache.related(rel, a, b) != cache.related(rel, img[a], img[b])) {
        v.holds = false;
        v.witness = {cache.mats[a], cache.mats[b]};
        return v;
      }
    }
  }
  return v;
}

bool in_set(MatrixSet which, const Matrix& m) {
  int r = rank(m);
  return which == MatrixSet::Rank1 ? r == 1 : r == m.rows();
}

Verdict exhaustive_preserves_set(const LinearOperator& t, MatrixSet which) {
  MatrixEnumerator en(t.spec(), t.n());
  Verdict v;
  v.mode = Strategy::exhaustive();
  for (std::uint64_t a = 0; a < en.size(); ++a) {
    Matrix m = en.at(a);
    if (!in_set(which, m)) continue;
    ++v.checked;
    Matrix image = t.apply(m);
    if (!in_set(which, image)) {
      v.holds = false;
      v.witness = {m, image};
      return v;
    }
  }
  return v;
}

}  // namespace

std::string set_name(MatrixSet which) {
  return which == MatrixSet::Rank1 ? "rank1" : "invertible";
}

Verdict preserves(const LinearOperator& t, GreenTag rel, const Strategy& s) {
  if (s.mode == Strategy::Mode::Exhaustive) return exhaustive_preserves(t, rel);
  internal::Sampler sampler(t.spec(), s.seed, s.bound);
  Verdict v;
  v.mode = s;
  for (std::uint64_t trial = 0; trial < s.trials; ++trial) {
    auto [a, b] = sampler.related_pair(rel, t.n());
    ++v.checked;
    if (!related_or_leq(rel, t.apply(a), t.apply(b))) {
      v.holds = false;
      v.witness = {a, b};
      return v;
    }
  }
  return v;
}

Verdict strongly_preserves(const LinearOperator& t, GreenTag rel,
                           const Strategy& s) {
  if (!is_equivalence(rel))
    throw std::invalid_argument("strong preservation needs an equivalence tag");
  if (s.mode == Strategy::Mode::Exhaustive)
    return exhaustive_strongly_preserves(t, rel);
  internal::Sampler sampler(t.spec(), s.seed, s.bound);
  Verdict v;
  v.mode = s;
  for (std::uint64_t trial = 0; trial < s.trials; ++trial) {
    // Forward implication on a constructed related pair.
    auto [a, b] = sampler.related_pair(rel, t.n());
    ++v.checked;
    if (!green_related(rel, t.apply(a), t.apply(b))) {
      v.holds = false;
      v.witness = {a, b};
      return v;
    }
    // Both directions on an arbitrary pair; this is what catches collapsed
    // classes under non-injective maps.
    Matrix c = sampler.matrix(t.n(), t.n());
    Matrix d = sampler.matrix(t.n(), t.n());
    ++v.checked;
    if (green_related(rel, c, d) != green_related(rel, t.apply(c), t.apply(d))) {
      v.holds = false;
      v.witness = {c, d};
      return v;
    }
  }
  return v;
}

Verdict preserves_set(const LinearOperator& t, MatrixSet which,
                      const Strategy& s) {
  if (s.mode == Strategy::Mode::Exhaustive)
    return exhaustive_preserves_set(t, which);
  internal::Sampler sampler(t.spec(), s.seed, s.bound);
  Verdict v;
  v.mode = s;
  for (std::uint64_t trial = 0; trial < s.trials; ++trial) {
    Matrix m = which == MatrixSet::Rank1 ? sampler.rank_one(t.n())
                                         : sampler.invertible(t.n());
    ++v.checked;
    Matrix image = t.apply(m);
    if (!in_set(which, image)) {
      v.holds = false;
      v.witness = {m, image};
      return v;
    }
  }
  return v;
}

OperatorEnumerator::OperatorEnumerator(const FieldSpec& spec, int n)
    : spec_(spec), n_(n) {
  if (!spec.is_finite())
    throw std::domain_error("enumerate_operators: field is infinite");
  if (n <= 0) throw std::invalid_argument("operator size must be positive");
  q_ = static_cast<std::uint64_t>(spec.order());
  int m = n * n;
  size_ = 1;
  for (int t = 0; t < m * m; ++t) {
    if (size_ > (1ull << 24) / q_)
      throw std::domain_error("enumerate_operators: q^(n^4) exceeds 2^24");
    size_ *= q_;
  }
}

LinearOperator OperatorEnumerator::at(std::uint64_t index) const {
  if (index >= size_) throw std::out_of_range("operator index out of range");
  int m = n_ * n_;
  Matrix mat(spec_, m, m);
  for (int t = 0; t < m * m; ++t) {
    std::int64_t digit = static_cast<std::int64_t>(index % q_);
    index /= q_;
    if (digit != 0)
      mat.set(t % m, t / m, FieldElement::from_code(spec_, digit));
  }
  return LinearOperator(n_, std::move(mat));
}

std::uint64_t OperatorEnumerator::index_of(const LinearOperator& t) const {
  if (!(t.spec() == spec_) || t.n() != n_)
    throw std::invalid_argument("index_of: operator mismatch");
  int m = n_ * n_;
  std::uint64_t index = 0;
  for (int pos = m * m - 1; pos >= 0; --pos)
    index = index * q_ +
            static_cast<std::uint64_t>(t.mat().at(pos % m, pos / m).code());
  return index;
}

bool CensusReport::all_checks_pass() const {
  for (const Check& c : cross_checks)
    if (!c.pass) return false;
  return true;
}

std::string CensusReport::to_text() const {
  std::ostringstream os;
  os << "field " << field << "\n";
  os << "n " << n << "\n";
  os << "property total count " << total << "\n";
  os << "property zero-maps count " << zero_maps << "\n";
  os << "property l-preservers count " << l_preservers << "\n";
  os << "property strong-l-preservers count " << strong_l_preservers << "\n";
  os << "property bijective-l-preservers count " << bijective_l_preservers
     << "\n";
  os << "property r-preservers count " << r_preservers << "\n";
  os << "property h-preservers count " << h_preservers << "\n";
  os << "property j-preservers count " << j_preservers << "\n";
  os << "property invertibility-preservers count " << invertibility_preservers
     << "\n";
  for (const Check& c : cross_checks)
    os << "check " << c.name << " " << (c.pass ? "pass" : "fail") << "\n";
  return os.str();
}

bool CensusReport::operator==(const CensusReport& rhs) const {
  return to_text() == rhs.to_text();
}

namespace {

std::uint64_t mix64(std::uint64_t x) { return internal::SplitMix64(x).next(); }

// Read-only data shared by all census workers.
struct CensusContext {
  CensusContext(const FieldSpec& spec_in, int n_in)
      : spec(spec_in),
        n(n_in),
        m(n_in * n_in),
        op_en(spec_in, n_in),
        mat_en(spec_in, n_in) {
    q = spec.order();
    mat_count = mat_en.size();
    op_count = op_en.size();

    add_tab.assign(q * q, 0);
    mul_tab.assign(q * q, 0);
    for (std::int64_t a = 0; a < q; ++a) {
      for (std::int64_t b = 0; b < q; ++b) {
        FieldElement fa = FieldElement::from_code(spec, a);
        FieldElement fb = FieldElement::from_code(spec, b);
        add_tab[a * q + b] = static_cast<std::int8_t>((fa + fb).code());
        mul_tab[a * q + b] = static_cast<std::int8_t>((fa * fb).code());
      }
    }

    vec_digits.assign(mat_count, std::vector<std::int8_t>(m));
    for (std::uint64_t v = 0; v < mat_count; ++v) {
      std::uint64_t x = v;
      for (int t = 0; t < m; ++t) {
        vec_digits[v][t] = static_cast<std::int8_t>(x % q);
        x /= q;
      }
    }

    std::map<std::string, int> lmap, rmap, hmap;
    lid.resize(mat_count);
    rid.resize(mat_count);
    hid.resize(mat_count);
    rk.resize(mat_count);
    for (std::uint64_t v = 0; v < mat_count; ++v) {
      Matrix mat = mat_en.at(v);
      std::string lkey = class_label(GreenTag::L, mat).key();
      std::string rkey = class_label(GreenTag::R, mat).key();
      lid[v] = lmap.emplace(lkey, static_cast<int>(lmap.size())).first->second;
      rid[v] = rmap.emplace(rkey, static_cast<int>(rmap.size())).first->second;
      hid[v] = hmap.emplace(lkey + "|" + rkey, static_cast<int>(hmap.size()))
                   .first->second;
      rk[v] = rank(mat);
    }
    n_l = static_cast<int>(lmap.size());
    n_r = static_cast<int>(rmap.size());
    n_h = static_cast<int>(hmap.size());

    // Every standard map A -> PAQ, by operator index, for cross-check (b).
    std::vector<std::uint64_t> invertibles;
    for (std::uint64_t v = 0; v < mat_count; ++v)
      if (rk[v] == n) invertibles.push_back(v);
    for (std::uint64_t pi : invertibles) {
      Matrix p = mat_en.at(pi);
      for (std::uint64_t qi : invertibles) {
        Matrix qmat = mat_en.at(qi);
        two_sided_sorted.push_back(
            op_en.index_of(LinearOperator::two_sided(p, qmat, false)));
      }
    }
    std::sort(two_sided_sorted.begin(), two_sided_sorted.end());
    two_sided_sorted.erase(
        std::unique(two_sided_sorted.begin(), two_sided_sorted.end()),
        two_sided_sorted.end());
  }

  FieldSpec spec;
  int n, m;
  std::int64_t q;
  OperatorEnumerator op_en;
  MatrixEnumerator mat_en;
  std::uint64_t mat_count = 0, op_count = 0;
  std::vector<std::int8_t> add_tab, mul_tab;
  std::vector<std::vector<std::int8_t>> vec_digits;
  std::vector<int> lid, rid, hid, rk;
  int n_l = 0, n_r = 0, n_h = 0;
  std::vector<std::uint64_t> two_sided_sorted;
};

struct CensusAccum {
  std::uint64_t zero = 0, l = 0, sl = 0, bl = 0, r = 0, h = 0, j = 0, inv = 0;
  bool a = true, b = true, c = true, d = true, e = true, f = true;

  void merge(const CensusAccum& o) {
    zero += o.zero; l += o.l; sl += o.sl; bl += o.bl;
    r += o.r; h += o.h; j += o.j; inv += o.inv;
    a &= o.a; b &= o.b; c &= o.c; d &= o.d; e &= o.e; f &= o.f;
  }
};

// Epoch-stamped per-thread scratch; avoids clearing arrays per operator.
struct CensusScratch {
  explicit CensusScratch(const CensusContext& ctx)
      : matdig(ctx.m * ctx.m),
        img(ctx.mat_count),
        seen(ctx.mat_count, 0),
        stamp_l(ctx.n_l, 0), val_l(ctx.n_l, 0), mark_l(ctx.n_l, 0),
        stamp_r(ctx.n_r, 0), val_r(ctx.n_r, 0),
        stamp_h(ctx.n_h, 0), val_h(ctx.n_h, 0),
        stamp_j(ctx.n + 1, 0), val_j(ctx.n + 1, 0) {}

  std::vector<std::int8_t> matdig;
  std::vector<std::uint64_t> img;
  std::vector<std::uint64_t> seen;
  std::vector<std::uint64_t> stamp_l, mark_l;
  std::vector<int> val_l;
  std::vector<std::uint64_t> stamp_r;
  std::vector<int> val_r;
  std::vector<std::uint64_t> stamp_h;
  std::vector<int> val_h;
  std::vector<std::uint64_t> stamp_j;
  std::vector<int> val_j;
  std::uint64_t epoch = 0;
};

// Per-class constancy of an image label; the strong variant additionally
// needs the induced class map to be injective.
struct ClassCheck {
  bool constant = true;
  bool injective = true;
};

void eval_operator(const CensusContext& ctx, std::uint64_t idx,
                   CensusScratch& s, CensusAccum& acc,
                   std::atomic<bool>& self_check_failed) {
  ++s.epoch;
  const std::int64_t q = ctx.q;
  const int m = ctx.m;

  bool is_zero = true;
  {
    std::uint64_t x = idx;
    for (int t = 0; t < m * m; ++t) {
      s.matdig[t] = static_cast<std::int8_t>(x % q);
      if (s.matdig[t] != 0) is_zero = false;
      x /= q;
    }
  }

  // Images of every matrix under the operator (digit arithmetic; entry
  // (r, c) of the operator matrix is digit c*m + r).
  for (std::uint64_t v = 0; v < ctx.mat_count; ++v) {
    const auto& vd = ctx.vec_digits[v];
    std::uint64_t out = 0;
    for (int i = m - 1; i >= 0; --i) {
      std::int64_t acc_digit = 0;
      for (int jj = 0; jj < m; ++jj) {
        std::int8_t mc = s.matdig[jj * m + i];
        if (mc == 0 || vd[jj] == 0) continue;
        acc_digit = ctx.add_tab[acc_digit * q + ctx.mul_tab[mc * q + vd[jj]]];
      }
      out = out * q + static_cast<std::uint64_t>(acc_digit);
    }
    s.img[v] = out;
  }

  bool bijective = true;
  for (std::uint64_t v = 0; v < ctx.mat_count; ++v) {
    if (s.seen[s.img[v]] == s.epoch) {
      bijective = false;
      break;
    }
    s.seen[s.img[v]] = s.epoch;
  }

  auto class_check = [&](const std::vector<int>& cls,
                         std::vector<std::uint64_t>& stamp,
                         std::vector<int>& val) {
    ClassCheck out;
    for (std::uint64_t v = 0; v < ctx.mat_count; ++v) {
      int c = cls[v];
      int tgt = cls[s.img[v]];
      if (stamp[c] != s.epoch) {
        stamp[c] = s.epoch;
        val[c] = tgt;
      } else if (val[c] != tgt) {
        out.constant = false;
        break;
      }
    }
    return out;
  };

  ClassCheck lcheck = class_check(ctx.lid, s.stamp_l, s.val_l);
  ClassCheck rcheck = class_check(ctx.rid, s.stamp_r, s.val_r);
  ClassCheck hcheck = class_check(ctx.hid, s.stamp_h, s.val_h);
  ClassCheck jcheck = class_check(ctx.rk, s.stamp_j, s.val_j);

  bool strong_l = lcheck.constant;
  if (strong_l) {
    for (int c = 0; c < ctx.n_l; ++c) {
      int tgt = s.val_l[c];
      if (s.mark_l[tgt] == s.epoch) {
        strong_l = false;
        break;
      }
      s.mark_l[tgt] = s.epoch;
    }
  }

  bool inv_pres = true, rank1_pres = true;
  for (std::uint64_t v = 0; v < ctx.mat_count; ++v) {
    if (ctx.rk[v] == ctx.n && ctx.rk[s.img[v]] != ctx.n) inv_pres = false;
    if (ctx.rk[v] == 1 && ctx.rk[s.img[v]] != 1) rank1_pres = false;
  }

  bool rho_ok = true;
  if (lcheck.constant) {
    LinearOperator t = ctx.op_en.at(idx);
    rho_ok = rho_basis(t.kernel_row_space()) == t.kernel_vec_space();
  }

  if (is_zero) ++acc.zero;
  if (lcheck.constant) ++acc.l;
  if (strong_l) ++acc.sl;
  if (lcheck.constant && bijective) ++acc.bl;
  if (rcheck.constant) ++acc.r;
  if (hcheck.constant) ++acc.h;
  if (jcheck.constant) ++acc.j;
  if (inv_pres) ++acc.inv;

  acc.a &= !strong_l || bijective;
  bool is_two_sided = std::binary_search(ctx.two_sided_sorted.begin(),
                                         ctx.two_sided_sorted.end(), idx);
  acc.b &= (lcheck.constant && bijective) == is_two_sided;
  acc.c &= hcheck.constant == (is_zero || inv_pres);
  acc.d &= !jcheck.constant || is_zero || bijective;
  acc.e &= !(jcheck.constant && bijective) || rank1_pres;
  acc.f &= !lcheck.constant || rho_ok;

  // Extensional self-check against the generic pair-loop on a pseudorandom
  // 1% of operators.
  if (mix64(idx) % 100 == 0 && !self_check_failed.load()) {
    LinearOperator t = ctx.op_en.at(idx);
    Strategy ex = Strategy::exhaustive();
    bool ok = preserves(t, GreenTag::L, ex).holds == lcheck.constant &&
              preserves(t, GreenTag::R, ex).holds == rcheck.constant &&
              preserves(t, GreenTag::H, ex).holds == hcheck.constant &&
              preserves(t, GreenTag::J, ex).holds == jcheck.constant &&
              strongly_preserves(t, GreenTag::L, ex).holds == strong_l &&
              preserves_set(t, MatrixSet::Invertible, ex).holds == inv_pres &&
              preserves_set(t, MatrixSet::Rank1, ex).holds == rank1_pres &&
              t.is_bijective() == bijective;
    if (!ok) self_check_failed.store(true);
  }
}

CensusReport finalize(const CensusContext& ctx, const CensusAccum& acc) {
  CensusReport rep;
  rep.field = ctx.spec.token();
  rep.n = ctx.n;
  rep.total = ctx.op_count;
  rep.zero_maps = acc.zero;
  rep.l_preservers = acc.l;
  rep.strong_l_preservers = acc.sl;
  rep.bijective_l_preservers = acc.bl;
  rep.r_preservers = acc.r;
  rep.h_preservers = acc.h;
  rep.j_preservers = acc.j;
  rep.invertibility_preservers = acc.inv;
  bool b_full = acc.b && acc.bl == ctx.two_sided_sorted.size();
  rep.cross_checks = {
      {"strong-l-implies-bijective", acc.a},
      {"bijective-l-equals-two-sided", b_full},
      {"h-preservers-are-zero-or-invertibility-preservers", acc.c},
      {"nonzero-j-preservers-bijective", acc.d},
      {"bijective-j-preservers-preserve-rank1", acc.e},
      {"rho-of-vt-equals-kernel", acc.f},
  };
  return rep;
}

}  // namespace

CensusReport census_serial(const FieldSpec& spec, int n) {
  CensusContext ctx(spec, n);
  CensusAccum acc;
  CensusScratch scratch(ctx);
  std::atomic<bool> self_check_failed{false};
  for (std::uint64_t idx = 0; idx < ctx.op_count; ++idx)
    eval_operator(ctx, idx, scratch, acc, self_check_failed);
  if (self_check_failed.load())
    throw std::logic_error("census: fast path disagrees with generic check");
  return finalize(ctx, acc);
}

CensusReport census(const FieldSpec& spec, int n) {
  CensusContext ctx(spec, n);
  CensusAccum acc;
  std::atomic<bool> self_check_failed{false};
#ifdef _OPENMP
#pragma omp parallel
  {
    CensusAccum local;
    CensusScratch scratch(ctx);
#pragma omp for schedule(dynamic, 512) nowait
    for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(ctx.op_count);
         ++idx)
      eval_operator(ctx, static_cast<std::uint64_t>(idx), scratch, local,
                    self_check_failed);
#pragma omp critical
    acc.merge(local);
  }
#else
  CensusScratch scratch(ctx);
  for (std::uint64_t idx = 0; idx < ctx.op_count; ++idx)
    eval_operator(ctx, idx, scratch, acc, self_check_failed);
#endif
  if (self_check_failed.load())
    throw std::logic_error("census: fast path disagrees with generic check");
  return finalize(ctx, acc);
}

}  // namespace greenrel
