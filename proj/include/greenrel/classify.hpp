#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "greenrel/operators.hpp"

namespace greenrel {

/// Canonical preserver shapes. Every non-Exotic classification is verified
/// exactly before being returned: rebuilding the operator from the form
/// reproduces the classified operator entry for entry. P (and x in the
/// column-functional shape) is normalized so its first nonzero entry in
/// row-major order is 1, the scalar being absorbed into the partner matrix.
struct ZeroForm {};
struct TwoSidedForm {  // A -> P A Q, or A -> P A^T Q
  Matrix p, q;
  bool transposed;
};
struct LeftRegularForm {  // A -> P A X
  Matrix p, x;
};
struct RightRegularForm {  // A -> X A P
  Matrix x, p;
};
struct ColumnFunctionalForm {  // M -> sum (M x^T)_i C_i  (M^T when transposed)
  Matrix x;
  std::vector<Matrix> c;
  bool transposed;
};
struct ExoticForm {  // this procedure's hypotheses failed; tag says where
  std::string reason;
};

using PreserverForm =
    std::variant<ZeroForm, TwoSidedForm, LeftRegularForm, RightRegularForm,
                 ColumnFunctionalForm, ExoticForm>;

std::string form_name(const PreserverForm& form);
bool is_exotic(const PreserverForm& form);
/// Rebuilds the operator a non-Exotic form describes.
LinearOperator materialize(const PreserverForm& form, const FieldSpec& spec,
                           int n);

/// Byproduct of the constructive L-classification: the kernel row space,
/// the greedy standard-basis complement u_1..u_s, the canonical image-class
/// generators w_1..w_s, the matrix of phi_1 (as phi_1(y) = y P^T) and the
/// scalars with phi_1 = c_i phi_i.
struct LClassifyCertificate {
  Subspace v_t;
  std::vector<Matrix> u_basis;  // 1 x n rows
  std::vector<Matrix> w_basis;  // 1 x n rows
  Matrix phi1;
  std::vector<FieldElement> scalars;
};

/// Recovers (P, Q) for a bijective rank-1 preserver: picks the transposed
/// branch by whether T(E_11), T(E_21) are L- or R-related, factors basis
/// images as outer products, and verifies the assembled map exactly.
/// Throws std::invalid_argument (message = machine tag) when the claimed
/// precondition is refuted.
PreserverForm classify_bijective_rank1(const LinearOperator& t);

struct LClassification {
  PreserverForm form;
  std::optional<LClassifyCertificate> certificate;
};

/// Constructive decomposition of a claimed L-preserver into A -> P A X,
/// following the kernel / complement / phi-scalar steps. Sound
/// unconditionally: a LeftRegular result is exactly verified, and Exotic
/// only asserts that this procedure's hypotheses failed (with the reason
/// tag re-checkable against the operator).
LClassification classify_l_preserver(const LinearOperator& t);

/// Dual of the L case via conjugation with the transpose map:
/// LeftRegular(P, X) of the conjugate is RightRegular(X^T, P^T) of t.
PreserverForm classify_r_preserver(const LinearOperator& t);

/// Zero, the bijective two-sided shapes, or the non-bijective
/// column-functional shape with invertible nonzero generator combinations.
PreserverForm classify_h_preserver(const LinearOperator& t);

/// Zero, or bijective two-sided shapes; a nonzero non-bijective claim is
/// refuted outright.
PreserverForm classify_j_preserver(const LinearOperator& t);

}  // namespace greenrel
