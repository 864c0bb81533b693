#include "greenrel/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace greenrel {

namespace {

std::string expect_word(std::istream& is, const char* what) {
  std::string w;
  if (!(is >> w)) throw std::runtime_error(std::string("expected ") + what);
  return w;
}

void expect_keyword(std::istream& is, const std::string& kw) {
  std::string w = expect_word(is, kw.c_str());
  if (w != kw)
    throw std::runtime_error("expected '" + kw + "', got '" + w + "'");
}

long read_count(std::istream& is, const char* what) {
  long v;
  if (!(is >> v) || v <= 0)
    throw std::runtime_error(std::string("bad ") + what);
  return v;
}

}  // namespace

void write_matrix(std::ostream& os, const Matrix& m) {
  os << "field " << m.spec().token() << "\n";
  os << "rows " << m.rows() << " cols " << m.cols() << "\n";
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << m.at(i, j).str();
    }
    os << "\n";
  }
}

Matrix read_matrix(std::istream& is) {
  expect_keyword(is, "field");
  FieldSpec spec = FieldSpec::parse(expect_word(is, "field token"));
  expect_keyword(is, "rows");
  long rows = read_count(is, "row count");
  expect_keyword(is, "cols");
  long cols = read_count(is, "column count");
  Matrix m(spec, static_cast<int>(rows), static_cast<int>(cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      m.set(i, j, FieldElement::parse(spec, expect_word(is, "matrix entry")));
  return m;
}

Matrix read_matrix_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return read_matrix(f);
}

std::string matrix_to_string(const Matrix& m) {
  std::ostringstream os;
  write_matrix(os, m);
  return os.str();
}

void write_operator(std::ostream& os, const LinearOperator& t,
                    bool images_form) {
  os << (images_form ? "operator-images" : "operator") << "\n";
  os << "field " << t.spec().token() << "\n";
  os << "n " << t.n() << "\n";
  if (images_form) {
    int n = t.n();
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        write_matrix(os, t.apply(Matrix::unit(t.spec(), n, n, i, j)));
    return;
  }
  int m = t.n() * t.n();
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (j) os << ' ';
      os << t.mat().at(i, j).str();
    }
    os << "\n";
  }
}

LinearOperator read_operator(std::istream& is) {
  std::string header = expect_word(is, "operator header");
  if (header != "operator" && header != "operator-images")
    throw std::runtime_error("expected operator header, got '" + header + "'");
  expect_keyword(is, "field");
  FieldSpec spec = FieldSpec::parse(expect_word(is, "field token"));
  expect_keyword(is, "n");
  int n = static_cast<int>(read_count(is, "operator size"));
  if (header == "operator-images") {
    std::vector<Matrix> images;
    images.reserve(n * n);
    for (int t = 0; t < n * n; ++t) {
      Matrix img = read_matrix(is);
      if (!(img.spec() == spec) || img.rows() != n || img.cols() != n)
        throw std::runtime_error("operator image block mismatch");
      images.push_back(std::move(img));
    }
    return LinearOperator::from_images(spec, n, images);
  }
  int m = n * n;
  Matrix mat(spec, m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      mat.set(i, j, FieldElement::parse(spec, expect_word(is, "entry")));
  return LinearOperator(n, std::move(mat));
}

LinearOperator read_operator_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return read_operator(f);
}

void write_form(std::ostream& os, const PreserverForm& form) {
  if (const auto* ex = std::get_if<ExoticForm>(&form)) {
    os << "form exotic reason " << ex->reason << "\n";
    return;
  }
  os << "form " << form_name(form) << "\n";
  if (const auto* ts = std::get_if<TwoSidedForm>(&form)) {
    write_matrix(os, ts->p);
    write_matrix(os, ts->q);
  } else if (const auto* lr = std::get_if<LeftRegularForm>(&form)) {
    write_matrix(os, lr->p);
    write_matrix(os, lr->x);
  } else if (const auto* rr = std::get_if<RightRegularForm>(&form)) {
    write_matrix(os, rr->x);
    write_matrix(os, rr->p);
  } else if (const auto* cf = std::get_if<ColumnFunctionalForm>(&form)) {
    os << "transposed " << (cf->transposed ? 1 : 0) << "\n";
    write_matrix(os, cf->x);
    for (const Matrix& c : cf->c) write_matrix(os, c);
  }
}

void write_verdict(std::ostream& os, const Verdict& v) {
  os << "verdict " << (v.holds ? "holds" : "fails") << "\n";
  if (v.mode.mode == Strategy::Mode::Exhaustive) {
    os << "mode exhaustive\n";
  } else {
    os << "mode sampled trials " << v.mode.trials << " seed " << v.mode.seed
       << " bound " << v.mode.bound << "\n";
  }
  os << "checked " << v.checked << "\n";
  if (v.holds && v.mode.mode == Strategy::Mode::Sampled)
    os << "note sampled-holds-is-evidence-not-proof\n";
  if (!v.holds && v.witness) {
    os << "witness\n";
    write_matrix(os, v.witness->first);
    write_matrix(os, v.witness->second);
  }
}

}  // namespace greenrel
