#pragma once

#include <iosfwd>
#include <string>

#include "greenrel/classify.hpp"
#include "greenrel/operators.hpp"
#include "greenrel/verify.hpp"

namespace greenrel {

/// Matrix text format:
///   field <token>
///   rows <r> cols <c>
///   <one line per row, entries separated by single spaces>
void write_matrix(std::ostream& os, const Matrix& m);
Matrix read_matrix(std::istream& is);
Matrix read_matrix_file(const std::string& path);
std::string matrix_to_string(const Matrix& m);

/// Operator text format, `operator` header:
///   operator
///   field <token>
///   n <n>
///   <n^2 lines of n^2 entries: the matrix acting on column-major vec>
/// Alternate `operator-images` header: the same first three lines, then the
/// n^2 blocks T(E_11), T(E_21), ..., T(E_nn) (column-major index order),
/// each in the matrix text format. read_operator accepts both.
void write_operator(std::ostream& os, const LinearOperator& t,
                    bool images_form = false);
LinearOperator read_operator(std::istream& is);
LinearOperator read_operator_file(const std::string& path);

/// Classification form report: `form <variant>` followed by the constituent
/// matrices in the matrix text format (plus a `transposed 0|1` line for the
/// column-functional shape), or `form exotic reason <tag>`.
void write_form(std::ostream& os, const PreserverForm& form);

/// Verdict report, line oriented: verdict / mode / checked, then the witness
/// pair in matrix format when the verdict is false. A sampled "holds" is
/// evidence, not proof, and is labelled as such.
void write_verdict(std::ostream& os, const Verdict& v);

}  // namespace greenrel
