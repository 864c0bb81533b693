#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>

#include "greenrel/green.hpp"
#include "greenrel/matrix.hpp"

namespace greenrel::internal {

// The sampling PRNG: splitmix64. Draw order is part of the reproducibility
// contract — each element takes one draw over a finite field
// (code = next() % q) and two draws over Q (numerator offset in
// [-bound, bound], then denominator in [1, bound]); matrices draw entries
// row-major; redraw loops consume the stream until their condition holds.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t m) { return next() % m; }
};

class Sampler {
 public:
  Sampler(const FieldSpec& spec, std::uint64_t seed, std::int64_t bound)
      : spec_(spec), rng_(seed), bound_(bound) {
    if (bound_ < 1) throw std::invalid_argument("sampling bound must be >= 1");
  }

  FieldElement element() {
    if (spec_.is_finite())
      return FieldElement::from_code(spec_, rng_.below(spec_.order()));
    std::int64_t num =
        static_cast<std::int64_t>(rng_.below(2 * bound_ + 1)) - bound_;
    std::int64_t den = 1 + static_cast<std::int64_t>(rng_.below(bound_));
    return FieldElement::from_rational(num, den);
  }

  FieldElement nonzero_element() {
    while (true) {
      FieldElement e = element();
      if (!e.is_zero()) return e;
    }
  }

  Matrix matrix(int r, int c) {
    Matrix m(spec_, r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m.set(i, j, element());
    return m;
  }

  Matrix nonzero_row(int n) {
    while (true) {
      Matrix v = matrix(1, n);
      if (!v.is_zero()) return v;
    }
  }

  // Product of 3n random elementary row operations applied to the identity.
  Matrix invertible(int n) {
    if (n == 1) {
      Matrix m(spec_, 1, 1);
      m.set(0, 0, nonzero_element());
      return m;
    }
    Matrix m = Matrix::identity(spec_, n);
    for (int t = 0; t < 3 * n; ++t) {
      std::uint64_t op = rng_.below(3);
      if (op == 0) {  // swap rows i, j
        int i = static_cast<int>(rng_.below(n));
        int j = static_cast<int>(rng_.below(n - 1));
        if (j >= i) ++j;
        for (int k = 0; k < n; ++k) {
          FieldElement tmp = m.at(i, k);
          m.set(i, k, m.at(j, k));
          m.set(j, k, tmp);
        }
      } else if (op == 1) {  // scale row i by a nonzero c
        int i = static_cast<int>(rng_.below(n));
        FieldElement c = nonzero_element();
        for (int k = 0; k < n; ++k) m.set(i, k, m.at(i, k) * c);
      } else {  // add c * row j to row i
        int i = static_cast<int>(rng_.below(n));
        int j = static_cast<int>(rng_.below(n - 1));
        if (j >= i) ++j;
        FieldElement c = element();
        for (int k = 0; k < n; ++k) m.set(i, k, m.at(i, k) + c * m.at(j, k));
      }
    }
    return m;
  }

  Matrix rank_one(int n) {
    Matrix x = nonzero_row(n);
    Matrix v = nonzero_row(n);
    return x.transpose() * v;
  }

  // A pair (A, B) related under rel, generated constructively: multiply B by
  // random factors, invertible exactly where equivalence is required; H-type
  // pairs pass through the partial-identity factorization of B.
  std::pair<Matrix, Matrix> related_pair(GreenTag rel, int n) {
    Matrix b = matrix(n, n);
    switch (rel) {
      case GreenTag::LeqL:
        return {matrix(n, n) * b, b};
      case GreenTag::L:
        return {invertible(n) * b, b};
      case GreenTag::LeqR:
        return {b * matrix(n, n), b};
      case GreenTag::R:
        return {b * invertible(n), b};
      case GreenTag::LeqJ:
        return {matrix(n, n) * b * matrix(n, n), b};
      case GreenTag::J:
        return {invertible(n) * b * invertible(n), b};
      case GreenTag::LeqH:
      case GreenTag::H: {
        RankFactorization f = factor_partial_identity(b);
        if (f.rank == 0) return {Matrix(spec_, n, n), b};
        Matrix block =
            rel == GreenTag::H ? invertible(f.rank) : matrix(f.rank, f.rank);
        Matrix embedded(spec_, n, n);
        for (int i = 0; i < f.rank; ++i)
          for (int j = 0; j < f.rank; ++j) embedded.set(i, j, block.at(i, j));
        return {f.p * embedded * f.q, b};
      }
    }
    throw std::logic_error("unreachable");
  }

 private:
  FieldSpec spec_;
  SplitMix64 rng_;
  std::int64_t bound_;
};

}  // namespace greenrel::internal
