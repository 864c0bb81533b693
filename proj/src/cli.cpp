#include "greenrel/cli.hpp"

#include <fstream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "greenrel/io.hpp"

namespace greenrel::cli {

namespace {

GreenTag parse_equivalence(const std::string& name) {
  GreenTag tag = parse_tag(name);
  if (!is_equivalence(tag))
    throw CLI::ValidationError("--rel", "expected one of L, R, H, J");
  return tag;
}

GreenTag to_preorder(GreenTag tag) {
  switch (tag) {
    case GreenTag::L: return GreenTag::LeqL;
    case GreenTag::R: return GreenTag::LeqR;
    case GreenTag::H: return GreenTag::LeqH;
    case GreenTag::J: return GreenTag::LeqJ;
    default: return tag;
  }
}

std::vector<FieldElement> parse_poly(const FieldSpec& spec,
                                     const std::string& csv) {
  std::vector<FieldElement> coeffs;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    coeffs.push_back(FieldElement::parse(spec, item));
  if (coeffs.size() < 2)
    throw std::runtime_error("--poly needs at least two coefficients");
  return coeffs;
}

void emit(const std::string& text, const std::string& out_path,
          std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw std::runtime_error("cannot open " + out_path);
  f << text;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Green's relations on matrices over fields: relation checks, "
               "preserver verification, classification and constructions"};
  app.require_subcommand(1);

  // relate / leq
  std::string rel_name;
  std::vector<std::string> files;
  auto* relate = app.add_subcommand("relate", "test A rel B");
  relate->add_option("--rel", rel_name, "one of L, R, H, J")->required();
  relate->add_option("files", files, "two matrix files")->expected(2);
  auto* leq = app.add_subcommand("leq", "test A <=_rel B");
  leq->add_option("--rel", rel_name, "one of L, R, H, J")->required();
  leq->add_option("files", files, "two matrix files")->expected(2);

  // verify / verify-strong
  std::string op_path;
  bool exhaustive = false;
  std::uint64_t samples = 0, seed = 0;
  std::int64_t bound = 5;
  auto add_strategy_flags = [&](CLI::App* cmd) {
    cmd->add_option("--op", op_path, "operator file")->required();
    cmd->add_flag("--exhaustive", exhaustive, "check every related pair");
    cmd->add_option("--samples", samples, "number of sampled pairs");
    cmd->add_option("--seed", seed, "sampling seed (required with --samples)");
    cmd->add_option("--bound", bound, "rational height bound (default 5)");
  };
  auto* verify_cmd = app.add_subcommand("verify", "weak preservation check");
  verify_cmd->add_option("--rel", rel_name,
                         "L, R, H, J, leq-L, leq-R, leq-H, leq-J")
      ->required();
  add_strategy_flags(verify_cmd);
  auto* strong_cmd =
      app.add_subcommand("verify-strong", "strong preservation check");
  strong_cmd->add_option("--rel", rel_name, "one of L, R, H, J")->required();
  add_strategy_flags(strong_cmd);

  // classify
  std::string target;
  auto* classify_cmd = app.add_subcommand("classify", "canonical form of a "
                                          "claimed preserver");
  classify_cmd->add_option("--target", target, "L, R, H, J or rank1")
      ->required();
  classify_cmd->add_option("--op", op_path, "operator file")->required();

  // construct
  std::string kind, p_path, q_path, x_path, field_token = "q", poly_csv;
  std::string out_path, gens_out, side = "left";
  std::vector<std::string> c_paths;
  bool transposed = false, images_form = false;
  int petrovic_n = 0, divalg_d = 0;
  auto* construct = app.add_subcommand("construct", "build a named operator");
  construct->add_option("--kind", kind,
                        "two-sided | regular | column | petrovic | botta | "
                        "divalg")
      ->required();
  construct->add_option("--P", p_path, "matrix file");
  construct->add_option("--Q", q_path, "matrix file");
  construct->add_option("--X", x_path, "matrix file");
  construct->add_option("--x", x_path, "row vector file (1 x n matrix)");
  construct->add_option("--C", c_paths, "generator matrix files (repeat)");
  construct->add_option("--side", side, "left | right");
  construct->add_flag("--transposed", transposed, "route A^T through the map");
  construct->add_option("--n", petrovic_n, "size for --kind petrovic");
  construct->add_option("--d", divalg_d, "2, 4 or 8 for --kind divalg");
  construct->add_option("--field", field_token, "field token (default q)");
  construct->add_option("--poly", poly_csv,
                        "monic polynomial coefficients, low degree first, "
                        "comma separated");
  construct->add_option("--out", out_path, "output file (default stdout)");
  construct->add_option("--gens-out", gens_out,
                        "also write generator matrices to this file");
  construct->add_flag("--images", images_form,
                      "write the operator-images format");

  // decompose
  int k_arg = -1;
  auto* decompose = app.add_subcommand("decompose",
                                       "write A as a sum of two rank-k "
                                       "matrices");
  decompose->add_option("--k", k_arg, "target rank")->required();
  decompose->add_option("files", files, "matrix file")->expected(1);

  // count
  int count_n = 0, count_r = -1;
  std::int64_t count_q = 0;
  auto* count_cmd =
      app.add_subcommand("count", "number of n x n rank-r matrices over GF(q)");
  count_cmd->add_option("--n", count_n)->required();
  count_cmd->add_option("--q", count_q)->required();
  count_cmd->add_option("--r", count_r)->required();

  // pencil
  int pencil_r = -1;
  auto* pencil = app.add_subcommand("pencil",
                                    "scalars lambda with rank(A + lambda B) "
                                    "= r");
  pencil->add_option("--r", pencil_r, "target rank")->required();
  pencil->add_option("files", files, "two matrix files")->expected(2);

  // census
  int census_n = 0;
  bool census_serial_flag = false;
  auto* census_cmd = app.add_subcommand("census",
                                        "exhaustive operator census with "
                                        "theorem cross-checks");
  census_cmd->add_option("--field", field_token, "finite field token")
      ->required();
  census_cmd->add_option("--n", census_n, "matrix size")->required();
  census_cmd->add_flag("--serial", census_serial_flag,
                       "use the serial reference kernel");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  auto make_strategy = [&]() {
    if (exhaustive && samples > 0)
      throw std::runtime_error("choose either --exhaustive or --samples");
    if (!exhaustive && samples == 0)
      throw std::runtime_error("need --exhaustive or --samples N --seed S");
    if (samples > 0 && !verify_cmd->count("--seed") &&
        !strong_cmd->count("--seed"))
      throw std::runtime_error("--samples requires an explicit --seed");
    return exhaustive ? Strategy::exhaustive()
                      : Strategy::sampled(samples, seed, bound);
  };

  if (relate->parsed() || leq->parsed()) {
    GreenTag tag = parse_equivalence(rel_name);
    Matrix a = read_matrix_file(files[0]);
    Matrix b = read_matrix_file(files[1]);
    bool res = relate->parsed() ? green_related(tag, a, b)
                                : green_leq(to_preorder(tag), a, b);
    out << (res ? "true" : "false") << "\n";
    return res ? 0 : 1;
  }

  if (verify_cmd->parsed() || strong_cmd->parsed()) {
    LinearOperator t = read_operator_file(op_path);
    Strategy s = make_strategy();
    Verdict v = verify_cmd->parsed()
                    ? preserves(t, parse_tag(rel_name), s)
                    : strongly_preserves(t, parse_equivalence(rel_name), s);
    std::ostringstream os;
    write_verdict(os, v);
    out << os.str();
    return v.holds ? 0 : 1;
  }

  if (classify_cmd->parsed()) {
    LinearOperator t = read_operator_file(op_path);
    PreserverForm form = [&]() -> PreserverForm {
      if (target == "L") return classify_l_preserver(t).form;
      if (target == "R") return classify_r_preserver(t);
      if (target == "H") return classify_h_preserver(t);
      if (target == "J") return classify_j_preserver(t);
      if (target == "rank1") return classify_bijective_rank1(t);
      throw std::runtime_error("--target must be L, R, H, J or rank1");
    }();
    std::ostringstream os;
    write_form(os, form);
    out << os.str();
    return 0;
  }

  if (construct->parsed()) {
    std::vector<Matrix> gens;
    auto op = [&]() -> LinearOperator {
      if (kind == "two-sided")
        return LinearOperator::two_sided(read_matrix_file(p_path),
                                         read_matrix_file(q_path), transposed);
      if (kind == "regular") {
        if (side != "left" && side != "right")
          throw std::runtime_error("--side must be left or right");
        return LinearOperator::regular(
            side == "left" ? Side::Left : Side::Right,
            read_matrix_file(p_path), read_matrix_file(x_path));
      }
      if (kind == "column") {
        std::vector<Matrix> c;
        for (const std::string& path : c_paths)
          c.push_back(read_matrix_file(path));
        return LinearOperator::column_functional(read_matrix_file(x_path), c,
                                                 transposed);
      }
      if (kind == "petrovic") {
        PetrovicConstruction pc = construct_petrovic(petrovic_n);
        gens = pc.generators;
        return pc.op;
      }
      if (kind == "botta") {
        FieldSpec spec = FieldSpec::parse(field_token);
        return construct_botta(spec, parse_poly(spec, poly_csv));
      }
      if (kind == "divalg") {
        DivisionAlgebraConstruction dc = construct_division_algebra(divalg_d);
        gens = dc.generators;
        return dc.op;
      }
      throw std::runtime_error("unknown --kind " + kind);
    }();
    std::ostringstream os;
    write_operator(os, op, images_form);
    emit(os.str(), out_path, out);
    if (!gens_out.empty()) {
      std::ostringstream gs;
      for (const Matrix& g : gens) write_matrix(gs, g);
      emit(gs.str(), gens_out, out);
    }
    return 0;
  }

  if (decompose->parsed()) {
    Matrix a = read_matrix_file(files[0]);
    auto [b, c] = rank_sum_decompose(a, k_arg);
    std::ostringstream os;
    write_matrix(os, b);
    write_matrix(os, c);
    out << os.str();
    return 0;
  }

  if (count_cmd->parsed()) {
    out << count_rank_matrices(count_n, count_q, count_r).str() << "\n";
    return 0;
  }

  if (pencil->parsed()) {
    Matrix a = read_matrix_file(files[0]);
    Matrix b = read_matrix_file(files[1]);
    std::vector<FieldElement> lambdas = pencil_lambda_set(a, b, pencil_r);
    for (size_t i = 0; i < lambdas.size(); ++i) {
      if (i) out << ' ';
      out << lambdas[i].str();
    }
    out << "\n";
    return 0;
  }

  if (census_cmd->parsed()) {
    FieldSpec spec = FieldSpec::parse(field_token);
    CensusReport rep =
        census_serial_flag ? census_serial(spec, census_n) : census(spec, census_n);
    out << rep.to_text();
    return 0;
  }

  err << "no command given\n";
  return 2;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace greenrel::cli
