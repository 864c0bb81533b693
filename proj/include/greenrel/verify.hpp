#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "greenrel/operators.hpp"

namespace greenrel {

/// How a preservation question is decided: exhaustively over a small finite
/// field, or by seeded constructive sampling (deterministic given trials,
/// seed and the rational height bound).
struct Strategy {
  enum class Mode { Exhaustive, Sampled };
  Mode mode = Mode::Exhaustive;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::int64_t bound = 5;

  static Strategy exhaustive() { return Strategy{}; }
  static Strategy sampled(std::uint64_t trials, std::uint64_t seed,
                          std::int64_t bound = 5) {
    return Strategy{Mode::Sampled, trials, seed, bound};
  }
};

/// Outcome of a preservation check. A false verdict always carries a witness
/// pair on which the defining implication fails; exhaustive witnesses are
/// the first failure in canonical enumeration order (outer index first).
struct Verdict {
  bool holds = true;
  std::optional<std::pair<Matrix, Matrix>> witness;
  std::uint64_t checked = 0;
  Strategy mode;
};

/// Weak preservation: A rel B implies T(A) rel T(B). Accepts all eight tags.
Verdict preserves(const LinearOperator& t, GreenTag rel, const Strategy& s);

/// Strong preservation: A rel B iff T(A) rel T(B). Equivalence tags only.
Verdict strongly_preserves(const LinearOperator& t, GreenTag rel,
                           const Strategy& s);

enum class MatrixSet { Rank1, Invertible };
std::string set_name(MatrixSet which);

/// Set preservation: A in S implies T(A) in S. The witness pair is
/// (A, T(A)).
Verdict preserves_set(const LinearOperator& t, MatrixSet which,
                      const Strategy& s);

/// All q^(n^4) operators on M_n(K) in canonical order: index digits in base
/// q are the column-major entries of the n^2 x n^2 operator matrix, least
/// significant digit first (index 0 is the zero operator).
class OperatorEnumerator {
 public:
  OperatorEnumerator(const FieldSpec& spec, int n);  // requires q^(n^4) <= 2^24

  std::uint64_t size() const { return size_; }
  int n() const { return n_; }
  const FieldSpec& spec() const { return spec_; }

  LinearOperator at(std::uint64_t index) const;
  std::uint64_t index_of(const LinearOperator& t) const;

 private:
  FieldSpec spec_;
  int n_;
  std::uint64_t q_;
  std::uint64_t size_;
};

/// Exhaustive tallies over every operator on M_n(K), with the theorem
/// cross-checks evaluated operator by operator.
struct CensusReport {
  std::string field;
  int n = 0;
  std::uint64_t total = 0;
  std::uint64_t zero_maps = 0;
  std::uint64_t l_preservers = 0;
  std::uint64_t strong_l_preservers = 0;
  std::uint64_t bijective_l_preservers = 0;
  std::uint64_t r_preservers = 0;
  std::uint64_t h_preservers = 0;
  std::uint64_t j_preservers = 0;
  std::uint64_t invertibility_preservers = 0;

  struct Check {
    std::string name;
    bool pass;
  };
  std::vector<Check> cross_checks;

  bool all_checks_pass() const;
  /// Line-oriented serialization: `property <name> count <k>` then
  /// `check <name> pass|fail`, stable ordering.
  std::string to_text() const;
  bool operator==(const CensusReport& rhs) const;
};

/// OpenMP kernel partitioned over the operator range; tallies and checks are
/// pure reductions, so the result is identical to the serial reference.
CensusReport census(const FieldSpec& spec, int n);
CensusReport census_serial(const FieldSpec& spec, int n);

}  // namespace greenrel
