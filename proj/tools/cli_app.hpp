#pragma once

// Command-line front end. `run` is the whole program minus process plumbing
// so tests can drive it in-process.
//
// Exit codes: 0 success, 1 a checked property failed, 2 input error.

#include <chrono>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hermlie/hermlie.hpp"
#include "hermlie/io/report.hpp"

namespace hermlie::cli {

using io::num;
using io::ordered_json;

struct Globals {
  double tol = kDefaultTol;
  bool json = false;
  std::uint64_t seed = 0;
  bool timing = false;
};

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

namespace detail {

inline ordered_json header(const std::string& command, const std::string& digest, const Globals& g) {
  ordered_json r;
  r["command"] = command;
  r["input_digest"] = digest;
  r["tolerance"] = g.tol;
  return r;
}

inline MixedParams mixed_params(const std::optional<double>& a, const std::optional<double>& b) {
  if (!a || !b) throw InputError("--alpha and --beta are required");
  return MixedParams(*a, *b);
}

inline std::string search_digest(const SearchProblem& pr) {
  ordered_json canon{{"family", std::string(to_string(pr.family))},
                     {"n", pr.n},
                     {"alpha", pr.mp.alpha},
                     {"beta", pr.mp.beta},
                     {"fixed_c", pr.fixed_c ? ordered_json(*pr.fixed_c) : ordered_json(nullptr)},
                     {"seed", pr.seed},
                     {"restarts", pr.restarts},
                     {"max_iters", pr.max_iters},
                     {"unimodular", pr.unimodular}};
  return "fnv1a64:" + io::hex64(io::fnv1a64(canon.dump()));
}

}  // namespace detail

// Subcommands return an exit code and fill in the report.

inline int cmd_validate(const io::AlgebraDocument& doc, const Globals& g, ordered_json& r) {
  const HermitianLieAlgebra& alg = doc.require_algebra("validate");
  const ValidationReport v = validate(alg, g.tol);
  r = detail::header("validate", io::document_digest(doc), g);
  r["n"] = doc.n;
  r["frame_kind"] = std::string(to_string(alg.frame_kind()));
  r["residuals"] = {{"antisymmetry", num(v.antisymmetry_residual)},
                    {"jacobi", num(v.jacobi_residual)},
                    {"d_squared", num(v.dphi_squared_residual)},
                    {"unimodularity", num(unimodularity_defect(alg))}};
  r["pattern"] = {{"residual", num(v.pattern.residual)}, {"ok", v.pattern.ok}, {"detail", v.pattern.detail}};
  r["verdicts"] = {{"valid", v.passed}};
  return v.passed ? 0 : 1;
}

inline int cmd_curvature(const io::AlgebraDocument& doc, bool bismut, const Globals& g, ordered_json& r) {
  if (bismut) doc.require_algebra("curvature --bismut");
  const CurvatureTensor R = doc.curvature();
  const RicciMatrix ric = first_ricci(R);
  Eigen::VectorXd h(static_cast<Eigen::Index>(doc.n));
  for (std::size_t i = 0; i < doc.n; ++i) h(static_cast<Eigen::Index>(i)) = R(i, i, i, i).real();

  r = detail::header("curvature", io::document_digest(doc), g);
  r["n"] = doc.n;
  r["style"] = std::string(to_string(doc.style));
  if (doc.algebra) {
    const TorsionTensor T = chern_torsion(*doc.algebra);
    const StreetsTian st = streets_tian(T, g.tol);
    r["T"] = io::sparse(T);
    r["R"] = io::sparse(R);
    r["Ric"] = io::sparse(ric);
    r["H"] = io::real_vector(h);
    r["Rhat"] = io::sparse(symmetrize(R));
    r["B"] = {{"matrix", io::sparse(st.B)}, {"rank", st.rank}};
  } else {
    r["T"] = nullptr;
    r["R"] = io::sparse(R);
    r["Ric"] = io::sparse(ric);
    r["H"] = io::real_vector(h);
    r["Rhat"] = io::sparse(symmetrize(R));
    r["B"] = nullptr;
  }
  if (bismut) {
    const HermitianLieAlgebra& alg = *doc.algebra;
    const bool btp = is_btp(alg, g.tol);
    r["bismut"] = {{"Rb", io::sparse(bismut_curvature(alg))},
                   {"is_btp", btp},
                   {"torsion_derivative_max_abs", num(covariant_torsion_derivative(alg).max_abs())},
                   {"symmetrization_residual", btp ? ordered_json(num(btp_symmetrization_residual(alg, g.tol)))
                                                   : ordered_json(nullptr)}};
  }
  r["residuals"] = {{"hermitian_symmetry", num(hermitian_symmetry_defect(R))}};
  return 0;
}

inline int cmd_mixed(const io::AlgebraDocument& doc, const MixedParams& mp, std::optional<double> given_c,
                     const Globals& g, ordered_json& r) {
  const CurvatureTensor R = doc.curvature();
  const RicciMatrix ric = first_ricci(R);
  const ConstantMixedResult cm = constant_mixed_test(R, mp, g.tol, g.seed);
  r = detail::header("mixed", io::document_digest(doc), g);
  r["n"] = doc.n;
  r["alpha"] = mp.alpha;
  r["beta"] = mp.beta;
  r["c"] = num(cm.c);
  r["residual"] = num(cm.residual);
  r["sampled_spread"] = num(cm.sampled_spread);
  r["verdict"] = cm.is_constant ? "constant" : "nonconstant";
  int code = 0;
  if (given_c) {
    const double res = mixed_identity_defect(R, ric, mp, *given_c).max_abs();
    const bool ok = res <= g.tol;
    r["asserted_c"] = {{"c", *given_c}, {"residual", num(res)}, {"holds", ok}};
    code = ok ? 0 : 1;
  }
  return code;
}

inline int cmd_classify(const io::AlgebraDocument& doc, const Globals& g, ordered_json& r) {
  const HermitianLieAlgebra& alg = doc.require_algebra("classify");
  const ClassificationFlags f = classify(alg, g.tol);
  r = detail::header("classify", io::document_digest(doc), g);
  r["n"] = doc.n;
  r["flags"] = {{"nilpotent", f.is_nilpotent},
                {"solvable", f.is_solvable},
                {"commutator_J_invariant", f.commutator_J_invariant},
                {"commutator_plus_J_nilpotent", f.commutator_plus_J_nilpotent},
                {"unimodular", f.is_unimodular}};
  const std::string hyp = theorem1_hypothesis(alg, f, g.tol);
  r["theorem1_hypothesis"] = hyp.empty() ? ordered_json(nullptr) : ordered_json(hyp);
  r["unimodularity_defect"] = num(unimodularity_defect(alg));
  return 0;
}

struct VerifyOptions {
  std::string theorem;
  std::optional<double> alpha, beta, c;
  std::optional<std::size_t> r;
  double x = 0.0, y = 0.0, a1 = 1.0;
  std::size_t n = 3;
};

inline int cmd_verify(const std::optional<io::AlgebraDocument>& doc, const VerifyOptions& o, const Globals& g,
                      ordered_json& r) {
  const auto need_doc = [&doc, &o]() -> const HermitianLieAlgebra& {
    if (!doc) throw InputError("verify --theorem " + o.theorem + " needs an input file");
    return doc->require_algebra("verify --theorem " + o.theorem);
  };
  VerificationReport rep;
  std::string digest = "none";
  if (o.theorem == "1") {
    const HermitianLieAlgebra& alg = need_doc();
    rep = verify_theorem1(alg, detail::mixed_params(o.alpha, o.beta), g.tol);
  } else if (o.theorem == "lemma-cd0") {
    const HermitianLieAlgebra& alg = need_doc();
    const std::size_t split = o.r.value_or(alg.n());
    if (split < 1 || split > alg.n()) throw InputError("--r must lie in 1..n");
    rep = verify_lemma_cd0(alg, detail::mixed_params(o.alpha, o.beta), split, g.tol);
  } else if (o.theorem == "wallach") {
    rep = wallach_nonconstancy(detail::mixed_params(o.alpha, o.beta));
  } else if (o.theorem == "middle-type") {
    MiddleTypeState st;
    st.x = o.x;
    st.y = o.y;
    st.a1 = o.a1;
    st.mp = detail::mixed_params(o.alpha, o.beta);
    st.c = o.c.value_or(0.0);
    rep = middle_type_feasibility(st, g.tol);
  } else if (o.theorem == "thm3") {
    if (o.n < 2 || o.n > 64) throw InputError("--n must lie in 2..64");
    Rng rng = make_rng(g.seed);
    const NonBalancedBTPFrameData fd = random_nonbalanced_frame(o.n, rng);
    rep = nonbalanced_btp_check(fd, detail::mixed_params(o.alpha, o.beta), g.tol);
  } else {
    throw InputError("--theorem must be one of 1, lemma-cd0, wallach, middle-type, thm3");
  }
  if (doc) digest = io::document_digest(*doc);
  r = detail::header("verify", digest, g);
  r["theorem"] = o.theorem;
  r["report"] = io::verification_json(rep);
  return rep.pass ? 0 : 1;
}

struct SearchOptions {
  std::string family = "almost_abelian";
  std::size_t n = 2;
  std::optional<double> alpha, beta, c;
  int restarts = 20;
  int max_iters = 200;
  int threads = 1;
  bool non_unimodular = false;
};

inline int cmd_search(const SearchOptions& o, const Globals& g, ordered_json& r) {
  SearchProblem pr;
  pr.family = parse_search_family(o.family);
  pr.n = o.n;
  pr.mp = detail::mixed_params(o.alpha, o.beta);
  pr.fixed_c = o.c;
  pr.seed = g.seed;
  pr.restarts = o.restarts;
  pr.max_iters = o.max_iters;
  pr.unimodular = !o.non_unimodular;
  pr.threads = o.threads;
  if (pr.n > 16) throw InputError("--n must be at most 16 for search");
  const SearchResult res = minimize(pr);

  ordered_json dist = ordered_json::object();
  double max_dist = 0.0;
  for (const auto& [k, v] : res.flat_distances) {
    dist[k] = num(v);
    max_dist = std::max(max_dist, v);
  }
  bool monotone = true;
  for (std::size_t q = 1; q < res.trace.size(); ++q) monotone = monotone && res.trace[q] <= res.trace[q - 1];
  ordered_json per_restart = ordered_json::array();
  for (double v : res.restart_residuals) per_restart.push_back(num(v));

  // On the unimodular almost-abelian family with β ≠ 0 a near-zero residual
  // must sit on the flat locus.
  const bool contract_applies = pr.family == SearchFamily::AlmostAbelian && pr.unimodular && pr.mp.beta != 0.0 &&
                                !pr.fixed_c && res.residual <= 1e-10;
  const bool contract_ok = !contract_applies || max_dist <= 1e-4;

  r = detail::header("search", detail::search_digest(pr), g);
  r["problem"] = {{"family", o.family},     {"n", pr.n},
                  {"alpha", pr.mp.alpha},   {"beta", pr.mp.beta},
                  {"target", pr.fixed_c ? ordered_json(*pr.fixed_c) : ordered_json("fitted")},
                  {"seed", pr.seed},        {"restarts", pr.restarts},
                  {"max_iters", pr.max_iters}, {"unimodular", pr.unimodular}};
  r["residual"] = num(res.residual);
  r["max_defect"] = num(res.max_residual);
  r["c"] = num(res.c);
  r["best_restart"] = res.best_restart;
  r["flat_distances"] = std::move(dist);
  r["trace"] = {{"iterations", res.trace.empty() ? 0 : res.trace.size() - 1},
                {"initial", num(res.trace.front())},
                {"final", num(res.trace.back())},
                {"monotone", monotone}};
  r["restart_residuals"] = std::move(per_restart);
  r["best"] = io::family_to_document(res.best);
  r["verdicts"] = {{"flat_locus_contract", contract_ok}};
  return contract_ok ? 0 : 1;
}

inline int cmd_fixtures(bool list, const std::string& emit, ordered_json& r) {
  if (list == !emit.empty()) throw InputError("fixtures needs exactly one of --list or --emit NAME");
  r = list ? ordered_json{{"fixtures", fixture_names()}} : io::fixture_to_document(fixture(emit));
  return 0;
}

/// Parses argv (without the program name) and runs one subcommand.
inline int run(const std::vector<std::string>& args, Streams io_streams) {
  CLI::App app{"Chern and Bismut curvature of left-invariant Hermitian structures", "hermlie"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--tol", g.tol, "Tolerance for every residual check")->check(CLI::PositiveNumber);
  app.add_flag("--json", g.json, "Machine-readable JSON output");
  app.add_option("--seed", g.seed, "Seed for sampling and search");
  app.add_flag("--timing", g.timing, "Append wall-clock timing to the report");

  std::string file;
  bool bismut = false;
  std::optional<double> alpha, beta, c;
  VerifyOptions vo;
  SearchOptions so;
  bool list = false;
  std::string emit_name;

  auto* validate_cmd = app.add_subcommand("validate", "Structural checks on an algebra document");
  validate_cmd->add_option("file", file, "Document path, '-' for stdin, or fixture:NAME")->required();

  auto* curvature_cmd = app.add_subcommand("curvature", "Torsion, curvature, Ricci, symmetrized curvature, B");
  curvature_cmd->add_option("file", file)->required();
  curvature_cmd->add_flag("--bismut", bismut, "Also report the Bismut curvature");

  auto* mixed_cmd = app.add_subcommand("mixed", "Constancy of the mixed curvature alpha Ric + beta H");
  mixed_cmd->add_option("file", file)->required();
  mixed_cmd->add_option("--alpha", alpha)->required();
  mixed_cmd->add_option("--beta", beta)->required();
  mixed_cmd->add_option("--c", c, "Assert this constant; exit 1 if it fails");

  auto* classify_cmd = app.add_subcommand("classify", "Nilpotency, solvability and commutator flags");
  classify_cmd->add_option("file", file)->required();

  auto* verify_cmd = app.add_subcommand("verify", "Run one theorem check");
  verify_cmd->add_option("file", file);
  verify_cmd->add_option("--theorem", vo.theorem)->required();
  verify_cmd->add_option("--alpha", vo.alpha);
  verify_cmd->add_option("--beta", vo.beta);
  verify_cmd->add_option("--c", vo.c, "middle-type: the constant c");
  verify_cmd->add_option("--r", vo.r, "lemma-cd0: Salamon split index (default n)");
  verify_cmd->add_option("--x", vo.x, "middle-type: curvature entry x");
  verify_cmd->add_option("--y", vo.y, "middle-type: curvature entry y");
  verify_cmd->add_option("--a1", vo.a1, "middle-type: torsion constant a1 > 0");
  verify_cmd->add_option("--n", vo.n, "thm3: dimension of the random admissible frame");

  auto* search_cmd = app.add_subcommand("search", "Minimize the constant-mixed-curvature defect over a family");
  search_cmd->add_option("--family", so.family)->check(CLI::IsMember({"almost_abelian", "codim2"}));
  search_cmd->add_option("--n", so.n)->check(CLI::Range(2, 16));
  search_cmd->add_option("--alpha", so.alpha)->required();
  search_cmd->add_option("--beta", so.beta)->required();
  search_cmd->add_option("--c", so.c, "Fixed target constant instead of the fitted one");
  search_cmd->add_option("--restarts", so.restarts)->check(CLI::PositiveNumber);
  search_cmd->add_option("--max-iters", so.max_iters)->check(CLI::PositiveNumber);
  search_cmd->add_option("--threads", so.threads)->check(CLI::PositiveNumber);
  search_cmd->add_flag("--non-unimodular", so.non_unimodular, "Drop the unimodular projection");

  auto* fixtures_cmd = app.add_subcommand("fixtures", "List or emit built-in fixtures");
  fixtures_cmd->add_flag("--list", list);
  fixtures_cmd->add_option("--emit", emit_name);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, io_streams.out, io_streams.err);
    return code == 0 ? 0 : 2;
  }

  const auto start = std::chrono::steady_clock::now();
  ordered_json report;
  int code = 0;
  try {
    auto load = [&]() { return io::load_document(file, io_streams.in, g.tol); };
    if (validate_cmd->parsed()) code = cmd_validate(load(), g, report);
    else if (curvature_cmd->parsed()) code = cmd_curvature(load(), bismut, g, report);
    else if (mixed_cmd->parsed()) code = cmd_mixed(load(), MixedParams(*alpha, *beta), c, g, report);
    else if (classify_cmd->parsed()) code = cmd_classify(load(), g, report);
    else if (verify_cmd->parsed()) {
      std::optional<io::AlgebraDocument> doc;
      if (!file.empty()) doc = load();
      code = cmd_verify(doc, vo, g, report);
    } else if (search_cmd->parsed()) code = cmd_search(so, g, report);
    else code = cmd_fixtures(list, emit_name, report);
  } catch (const InputError& e) {
    io_streams.err << "error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    io_streams.err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InternalError& e) {
    io_streams.err << "internal consistency check failed: " << e.what() << "\n";
    return 1;
  }
  if (g.timing) {
    report["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  // Emitted documents are always JSON so they can be piped back in.
  const bool raw = fixtures_cmd->parsed() && !emit_name.empty();
  if (raw || g.json) {
    io_streams.out << io::to_json_text(report);
  } else {
    io::render_text(io_streams.out, report);
  }
  return code;
}

}  // namespace hermlie::cli
