// kalex: exact Alexander invariants, Wada invariants, dilation representation
// spaces, and derived presentations from the command line.
//
// Exit codes: 0 success, 2 input/parse error, 3 internal check failure,
// 4 relation violated, 5 theorem disagreement, 6 image not finite.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <kalex/crowell.hpp>
#include <kalex/dilation.hpp>

using namespace kalex;
using json = nlohmann::ordered_json;

namespace {

struct Options {
  std::string builtin, knot_file, braid;
  std::string rep_file;
  std::string action_file;
  std::string word;
  std::vector<std::string> alpha;
  bool inverse = false;
  long long rmax = 0;  // 0 picks the based matrix size
  long long cap = 2048;
  bool oracle = false;
  bool as_json = false;
  bool verbose = false;
};

int exit_code_for(const error& e) {
  switch (e.code()) {
    case errc::relation_violated: return 4;
    case errc::image_not_finite: return 6;
    case errc::internal_check_failed: return 3;
    default: return 2;
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error(errc::syntax_error, "cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

WirtingerPresentation load_knot(const Options& opt) {
  int sources = (!opt.builtin.empty() ? 1 : 0) + (!opt.knot_file.empty() ? 1 : 0) +
                (!opt.braid.empty() ? 1 : 0);
  if (sources != 1)
    throw error(errc::syntax_error, "need exactly one of --builtin, --knot, --braid");
  if (!opt.builtin.empty()) return builtin_knot(opt.builtin);
  if (!opt.knot_file.empty()) return parse_presentation(slurp(opt.knot_file));
  return from_braid(parse_braid_literal(opt.braid));
}

Representation load_rep(const Options& opt, const WirtingerPresentation& p) {
  if (opt.rep_file.empty()) return trivial_representation(p);
  Representation rep = parse_representation(slurp(opt.rep_file));
  validate_representation(p, rep);
  return rep;
}

// --alpha accepts a rational or Gaussian literal, or "root-of <minpoly>" for
// the generator of the extension field the minimal polynomial cuts out.
ExactScalar parse_alpha(const Options& opt) {
  if (opt.alpha.empty()) throw error(errc::syntax_error, "--alpha is required");
  std::string text = opt.alpha[0];
  for (std::size_t k = 1; k < opt.alpha.size(); ++k) text += " " + opt.alpha[k];
  while (!text.empty() && text.front() == ' ') text.erase(text.begin());

  ExactScalar a;
  const std::string key = "root-of";
  if (text.rfind(key, 0) == 0) {
    std::string minpoly = text.substr(key.size());
    FieldContext ctx = extension_context(minpoly);
    if (ctx.is_rational()) {
      // linear minimal polynomial: the root is the scalar itself
      LaurentPoly mp = parse_poly(minpoly, ctx);
      ExactScalar c0 = ExactScalar::zero(ctx), c1 = ExactScalar::zero(ctx);
      for (const auto& [e, c] : mp.terms()) {
        if (e == 0) c0 = c;
        if (e == 1) c1 = c;
      }
      a = -(c0 / c1);
    } else if (ctx.is_gaussian()) {
      a = parse_scalar("i", ctx);
    } else {
      qpoly::Vec v(ctx.degree(), Rational(0));
      v[1] = Rational(1);
      a = ExactScalar(ctx, std::move(v));
    }
  } else {
    FieldContext ctx = text.find('i') != std::string::npos ? FieldContext::gaussian()
                                                           : FieldContext::rationals();
    a = parse_scalar(text, ctx);
  }
  if (opt.inverse) {
    if (a.is_zero()) throw error(errc::zero_alpha, "cannot invert alpha = 0");
    a = a.inverse();
  }
  return a;
}

std::size_t pick_rmax(const Options& opt, const PolyMatrix& m) {
  if (opt.rmax > 0) return static_cast<std::size_t>(opt.rmax);
  return std::max<std::size_t>(m.cols(), 1);
}

void print_matrix(std::ostream& os, const PolyMatrix& m) {
  os << "matrix " << m.rows() << "x" << m.cols() << " over " << m.context().description() << "\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << "  [";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) os << ", ";
      os << m.at(r, c).str(true);
    }
    os << "]\n";
  }
}

json matrix_json(const PolyMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c).str(false));
    rows.push_back(std::move(row));
  }
  return rows;
}

json poly_list_json(const std::vector<LaurentPoly>& v) {
  json out = json::array();
  for (const LaurentPoly& p : v) out.push_back(p.str(false));
  return out;
}

void emit(const json& doc) { std::cout << doc.dump(2) << "\n"; }

int cmd_alex(const Options& opt) {
  WirtingerPresentation p = load_knot(opt);
  std::size_t rmax = pick_rmax(opt, alexander_matrix(p));
  InvariantReport rep = alexander_report(p, rmax, opt.oracle);

  if (opt.as_json) {
    json doc;
    doc["command"] = "alex";
    doc["knot"] = p.name;
    doc["twisted"] = false;
    doc["dropped_generator"] = rep.dropped_generator;
    doc["dropped_relation"] = rep.dropped_relation;
    doc["oracle_checked"] = rep.oracle_checked;
    doc["polynomials"] = poly_list_json(rep.polynomials);
    doc["matrix"] = matrix_json(rep.matrix);
    emit(doc);
    return 0;
  }
  for (std::size_t r = 0; r < rep.polynomials.size(); ++r)
    std::cout << "Δ_" << r + 1 << " = " << rep.polynomials[r].str(true) << "\n";
  if (opt.verbose) {
    print_matrix(std::cout, rep.matrix);
    std::cout << "dropped generator " << rep.dropped_generator << ", relation "
              << rep.dropped_relation << "\n";
  }
  if (rep.oracle_checked) std::cout << "oracle: agree\n";
  return 0;
}

int cmd_twisted(const Options& opt) {
  WirtingerPresentation p = load_knot(opt);
  Representation gamma = load_rep(opt, p);
  std::size_t rmax = pick_rmax(opt, twisted_alexander_matrix(p, gamma));
  InvariantReport rep = twisted_report(p, gamma, rmax, opt.oracle);
  RationalFunction wada = wada_invariant(p, gamma);

  bool have_verdict = gamma.context().is_rational();
  bool closed = false;
  if (have_verdict) closed = reciprocity_report(p, gamma).closed;

  if (opt.as_json) {
    json doc;
    doc["command"] = "twisted";
    doc["knot"] = p.name;
    doc["twisted"] = true;
    doc["dimension"] = gamma.dimension;
    doc["field"] = gamma.context().description();
    doc["dropped_generator"] = rep.dropped_generator;
    doc["dropped_relation"] = rep.dropped_relation;
    doc["oracle_checked"] = rep.oracle_checked;
    doc["polynomials"] = poly_list_json(rep.polynomials);
    doc["wada_numerator"] = wada.num.str(false);
    doc["wada_denominator"] = wada.den.str(false);
    doc["reciprocal"] = have_verdict ? json(closed) : json(nullptr);
    doc["matrix"] = matrix_json(rep.matrix);
    emit(doc);
    return 0;
  }
  for (std::size_t r = 0; r < rep.polynomials.size(); ++r)
    std::cout << "D_" << r + 1 << " = " << rep.polynomials[r].str(true) << "\n";
  std::cout << "wada = " << wada.str(true) << "\n";
  if (have_verdict)
    std::cout << "reciprocal: " << (closed ? "true" : "false") << "\n";
  else
    std::cout << "reciprocal: n/a over " << gamma.context().description() << "\n";
  if (opt.verbose) print_matrix(std::cout, rep.matrix);
  if (rep.oracle_checked) std::cout << "oracle: agree\n";
  return 0;
}

std::string vector_str(const std::vector<ExactScalar>& v) {
  std::string out = "[";
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += ", ";
    out += v[k].str();
  }
  return out + "]";
}

int cmd_verify(const Options& opt) {
  WirtingerPresentation p = load_knot(opt);
  Representation gamma = load_rep(opt, p);
  ExactScalar alpha = parse_alpha(opt);
  TheoremReport rep = verify_theorem(p, gamma, alpha, opt.oracle);

  // a second space element exercises the part (2) conjugation when dim = 1
  bool have_witness = false;
  ExactScalar beta;
  if (rep.space.dimension == 1) {
    FieldContext ctx = rep.alpha.context();
    ExactScalar half = ExactScalar::one(ctx) / (ExactScalar::one(ctx) + ExactScalar::one(ctx));
    std::vector<ExactScalar> scaled;
    for (const ExactScalar& x : rep.space.basis[0]) scaled.push_back(half * x);
    beta = conjugacy_witness(rep.space.basis[0], scaled);
    have_witness = true;
  }

  if (opt.as_json) {
    json doc;
    doc["command"] = "verify";
    doc["knot"] = p.name;
    doc["alpha"] = rep.alpha.str();
    doc["alpha_inv"] = rep.alpha_inv.str();
    doc["field"] = rep.alpha.context().description();
    doc["nullity"] = rep.nullity;
    doc["max_r"] = rep.max_r;
    doc["agree"] = rep.agree;
    doc["polynomials"] = poly_list_json(rep.polynomials);
    json basis = json::array();
    for (const auto& v : rep.space.basis) {
      json vec = json::array();
      for (const ExactScalar& x : v) vec.push_back(x.str());
      basis.push_back(std::move(vec));
    }
    doc["basis"] = basis;
    doc["witness_beta"] = have_witness ? json(beta.str()) : json(nullptr);
    emit(doc);
    return rep.agree ? 0 : 5;
  }
  std::cout << "alpha = " << rep.alpha.str() << "\n";
  std::cout << "alpha_inv = " << rep.alpha_inv.str() << "\n";
  std::cout << "nullity = " << rep.nullity << "\n";
  std::cout << "max_r = " << rep.max_r << "\n";
  std::cout << "agree: " << (rep.agree ? "true" : "false") << "\n";
  for (std::size_t k = 0; k < rep.space.basis.size(); ++k)
    std::cout << "basis[" << k << "] = " << vector_str(rep.space.basis[k]) << "\n";
  if (have_witness) std::cout << "witness beta = " << beta.str() << "\n";
  if (opt.verbose) {
    for (std::size_t r = 0; r < rep.polynomials.size(); ++r)
      std::cout << "D_" << r + 1 << " = " << rep.polynomials[r].str(true) << "\n";
  }
  return rep.agree ? 0 : 5;
}

int cmd_crowell(const Options& opt) {
  if (!opt.word.empty()) {
    if (opt.action_file.empty())
      throw error(errc::syntax_error, "--word needs --action for generator names");
    FiniteAction a = parse_action(slurp(opt.action_file));
    DerivedWord nf = normal_form(parse_derived_word(opt.word, a), a);
    if (opt.as_json) {
      json doc;
      doc["command"] = "crowell";
      doc["word"] = derived_word_str(nf, a);
      emit(doc);
    } else {
      std::cout << derived_word_str(nf, a) << "\n";
    }
    return 0;
  }

  WirtingerPresentation p = load_knot(opt);
  DerivedPresentation dp;
  if (!opt.action_file.empty()) {
    dp = derived_presentation(p, parse_action(slurp(opt.action_file)));
  } else if (!opt.rep_file.empty()) {
    Representation gamma = parse_representation(slurp(opt.rep_file));
    validate_representation(p, gamma);
    dp = derived_presentation(p, gamma, static_cast<std::size_t>(opt.cap));
  } else {
    throw error(errc::syntax_error, "crowell needs --rep or --action");
  }

  if (opt.as_json) {
    json doc;
    doc["command"] = "crowell";
    doc["knot"] = p.name;
    doc["sset"] = dp.sset;
    doc["base_generators"] = dp.base_generators;
    doc["generators"] = dp.num_generators();
    doc["dropped_family"] = dp.dropped_family;
    json rels = json::array();
    for (const DerivedRelation& rel : dp.relations) {
      json r;
      r["s"] = rel.s;
      r["i"] = rel.triple[0];
      r["j"] = rel.triple[1];
      r["k"] = rel.triple[2];
      rels.push_back(std::move(r));
    }
    doc["relations"] = rels;
    emit(doc);
    return 0;
  }
  std::cout << "derived generators: " << dp.num_generators() << "\n";
  std::cout << "derived relations: " << dp.relations.size() << "\n";
  std::cout << render_derived_presentation(dp);
  return 0;
}

int cmd_reciprocal(const Options& opt) {
  WirtingerPresentation p = load_knot(opt);
  ReciprocityReport rep =
      opt.rep_file.empty() ? reciprocity_report(p) : reciprocity_report(p, load_rep(opt, p));

  if (opt.as_json) {
    json doc;
    doc["command"] = "reciprocal";
    doc["knot"] = p.name;
    doc["polynomial"] = rep.polynomial.str(false);
    doc["reciprocal"] = rep.closed;
    emit(doc);
    return 0;
  }
  std::cout << "polynomial = " << rep.polynomial.str(true) << "\n";
  std::cout << "reciprocal: " << (rep.closed ? "true" : "false") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Alexander invariants and dilation representation spaces"};
  app.require_subcommand(1);
  Options opt;

  auto add_knot_flags = [&](CLI::App* sub) {
    sub->add_option("--builtin", opt.builtin, "built-in knot: unknot, trefoil, figure8");
    sub->add_option("--knot", opt.knot_file, "presentation file");
    sub->add_option("--braid", opt.braid, "braid literal \"strands: l1 l2 ...\"");
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", opt.as_json, "machine-readable output");
    sub->add_flag("--verbose", opt.verbose, "include matrices and extra detail");
  };

  CLI::App* alex = app.add_subcommand("alex", "classical Alexander polynomials");
  add_knot_flags(alex);
  add_common(alex);
  alex->add_option("--rmax", opt.rmax, "how many elementary polynomials");
  alex->add_flag("--oracle", opt.oracle, "cross-check against the minors gcd");

  CLI::App* twisted = app.add_subcommand("twisted", "twisted Alexander and Wada invariants");
  add_knot_flags(twisted);
  add_common(twisted);
  twisted->add_option("--rep", opt.rep_file, "representation file")->required();
  twisted->add_option("--rmax", opt.rmax, "how many elementary polynomials");
  twisted->add_flag("--oracle", opt.oracle, "cross-check against the minors gcd");

  CLI::App* verify = app.add_subcommand("verify", "verify the dimension theorem at a ratio");
  add_knot_flags(verify);
  add_common(verify);
  verify->add_option("--rep", opt.rep_file, "representation file (default: trivial)");
  verify->add_option("--alpha", opt.alpha, "ratio: literal or root-of <minpoly>")
      ->required()
      ->expected(1, 2);
  verify->add_flag("--inverse", opt.inverse, "use the inverse of the given ratio");
  verify->add_flag("--oracle", opt.oracle, "cross-check against the minors gcd");

  CLI::App* crowell = app.add_subcommand("crowell", "derived presentations and normal forms");
  add_knot_flags(crowell);
  add_common(crowell);
  crowell->add_option("--rep", opt.rep_file, "finite-image representation file");
  crowell->add_option("--action", opt.action_file, "action table file");
  crowell->add_option("--word", opt.word, "derived word to normalize");
  crowell->add_option("--cap", opt.cap, "image enumeration cap")->check(CLI::PositiveNumber);

  CLI::App* reciprocal = app.add_subcommand("reciprocal", "inversion-closure of the zero set");
  add_knot_flags(reciprocal);
  add_common(reciprocal);
  reciprocal->add_option("--rep", opt.rep_file, "representation file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (alex->parsed()) return cmd_alex(opt);
    if (twisted->parsed()) return cmd_twisted(opt);
    if (verify->parsed()) return cmd_verify(opt);
    if (crowell->parsed()) return cmd_crowell(opt);
    if (reciprocal->parsed()) return cmd_reciprocal(opt);
  } catch (const error& e) {
    std::cerr << errc_name(e.code()) << ": " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
