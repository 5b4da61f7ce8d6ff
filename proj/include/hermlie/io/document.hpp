#pragma once

// Reading and writing algebra documents. Four mutually exclusive input
// styles share one top-level object:
//   {"n", "frame_kind"?, "C", "D"}                   structure constants
//   {"n", "frame_kind"?, "family", params...}        a closed-form family
//   {"n", "real_presentation": {bracket, J, gram}}   real basis data
//   {"n", "pointwise": {"R": [[i,j,k,l,[re,im]],...]}}  curvature at a point
// Complex numbers are [re, im]; a bare number is read as real.

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "hermlie/fixtures.hpp"
#include "hermlie/real_presentation.hpp"
#include "hermlie/search.hpp"

namespace hermlie::io {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

enum class DocumentStyle { Constants, Family, RealPresentation, Pointwise };

inline std::string_view to_string(DocumentStyle s) {
  switch (s) {
    case DocumentStyle::Constants: return "constants";
    case DocumentStyle::Family: return "family";
    case DocumentStyle::RealPresentation: return "real_presentation";
    case DocumentStyle::Pointwise: return "pointwise";
  }
  return "?";
}

struct AlgebraDocument {
  std::size_t n = 0;
  DocumentStyle style = DocumentStyle::Constants;
  std::optional<HermitianLieAlgebra> algebra;
  std::optional<FamilyPoint> family;
  std::optional<PointwiseCurvature> pointwise;

  bool is_pointwise() const { return pointwise.has_value(); }

  const HermitianLieAlgebra& require_algebra(std::string_view what) const {
    if (!algebra) throw InputError(std::string(what) + " needs structure constants, but the document is pointwise");
    return *algebra;
  }

  CurvatureTensor curvature() const { return pointwise ? pointwise->R : chern_curvature(*algebra); }
};

/// An InputError whose message already starts with a member path.
struct DocumentError : InputError {
  using InputError::InputError;
};

namespace detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& msg) {
  throw DocumentError(path + ": " + msg);
}

inline cplx read_complex(const json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(path, "expected a number or an [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline double read_real(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a real number");
  return j.get<double>();
}

inline const json& read_array(const json& j, std::size_t len, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  if (j.size() != len) fail(path, "expected " + std::to_string(len) + " entries, found " + std::to_string(j.size()));
  return j;
}

inline Tensor3 read_tensor3(const json& j, std::size_t n, const std::string& name) {
  Tensor3 t(n);
  read_array(j, n, name);
  for (std::size_t a = 0; a < n; ++a) {
    const std::string pa = name + "[" + std::to_string(a) + "]";
    read_array(j[a], n, pa);
    for (std::size_t b = 0; b < n; ++b) {
      const std::string pb = pa + "[" + std::to_string(b) + "]";
      read_array(j[a][b], n, pb);
      for (std::size_t c = 0; c < n; ++c) t(a, b, c) = read_complex(j[a][b][c], pb + "[" + std::to_string(c) + "]");
    }
  }
  return t;
}

inline Eigen::VectorXcd read_cvector(const json& j, std::size_t m, const std::string& name) {
  read_array(j, m, name);
  Eigen::VectorXcd v(static_cast<Eigen::Index>(m));
  for (std::size_t a = 0; a < m; ++a) v(static_cast<Eigen::Index>(a)) = read_complex(j[a], name + "[" + std::to_string(a) + "]");
  return v;
}

inline Eigen::MatrixXcd read_cmatrix(const json& j, std::size_t m, const std::string& name) {
  read_array(j, m, name);
  Eigen::MatrixXcd x(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t a = 0; a < m; ++a) {
    const std::string pa = name + "[" + std::to_string(a) + "]";
    read_array(j[a], m, pa);
    for (std::size_t b = 0; b < m; ++b)
      x(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = read_complex(j[a][b], pa + "[" + std::to_string(b) + "]");
  }
  return x;
}

inline Eigen::MatrixXd read_rmatrix(const json& j, std::size_t m, const std::string& name) {
  read_array(j, m, name);
  Eigen::MatrixXd x(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t a = 0; a < m; ++a) {
    const std::string pa = name + "[" + std::to_string(a) + "]";
    read_array(j[a], m, pa);
    for (std::size_t b = 0; b < m; ++b)
      x(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = read_real(j[a][b], pa + "[" + std::to_string(b) + "]");
  }
  return x;
}

inline const json& member(const json& doc, const char* key) {
  if (!doc.contains(key)) fail(key, "missing");
  return doc.at(key);
}

inline void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& prefix) {
  for (const auto& [k, v] : obj.items())
    if (!allowed.count(k)) fail(prefix + k, "unexpected member");
}

inline FamilyPoint read_family(const json& doc, std::size_t n) {
  const json& fam = member(doc, "family");
  if (!fam.is_string()) fail("family", "expected \"almost_abelian\" or \"codim2\"");
  const std::string name = fam.get<std::string>();
  if (n < 2) fail("n", "families need n >= 2");
  const std::size_t m = n - 1;
  if (name == "almost_abelian") {
    reject_unknown(doc, {"n", "frame_kind", "family", "lambda", "v", "A"}, "");
    AlmostAbelianParams p = AlmostAbelianParams::zero(n);
    p.lambda = read_real(member(doc, "lambda"), "lambda");
    p.v = read_cvector(member(doc, "v"), m, "v");
    p.A = read_cmatrix(member(doc, "A"), m, "A");
    return p;
  }
  if (name == "codim2") {
    reject_unknown(doc, {"n", "frame_kind", "family", "lambda", "v", "X", "Y", "Z"}, "");
    Codim2Params p = Codim2Params::zero(n);
    p.lambda = read_real(member(doc, "lambda"), "lambda");
    p.v = read_cvector(member(doc, "v"), m, "v");
    p.X = read_cmatrix(member(doc, "X"), m, "X");
    p.Y = read_cmatrix(member(doc, "Y"), m, "Y");
    p.Z = read_cmatrix(member(doc, "Z"), m, "Z");
    return p;
  }
  fail("family", "unknown family '" + name + "'");
}

inline RealPresentation read_real_presentation(const json& j, std::size_t n) {
  if (!j.is_object()) fail("real_presentation", "expected an object");
  reject_unknown(j, {"bracket", "J", "gram"}, "real_presentation.");
  const std::size_t d = 2 * n;
  RealPresentation rp(d);
  const std::string base = "real_presentation.bracket";
  if (!j.contains("bracket")) fail(base, "missing");
  read_array(j["bracket"], d, base);
  for (std::size_t c = 0; c < d; ++c) {
    const std::string pc = base + "[" + std::to_string(c) + "]";
    read_array(j["bracket"][c], d, pc);
    for (std::size_t a = 0; a < d; ++a) {
      const std::string pa = pc + "[" + std::to_string(a) + "]";
      read_array(j["bracket"][c][a], d, pa);
      for (std::size_t b = 0; b < d; ++b) rp.f(c, a, b) = read_real(j["bracket"][c][a][b], pa + "[" + std::to_string(b) + "]");
    }
  }
  if (!j.contains("J")) fail("real_presentation.J", "missing");
  rp.J = read_rmatrix(j["J"], d, "real_presentation.J");
  if (j.contains("gram")) rp.gram = read_rmatrix(j["gram"], d, "real_presentation.gram");
  return rp;
}

inline PointwiseCurvature read_pointwise(const json& j, std::size_t n, double tol) {
  if (!j.is_object()) fail("pointwise", "expected an object");
  reject_unknown(j, {"R"}, "pointwise.");
  if (!j.contains("R") || !j["R"].is_array()) fail("pointwise.R", "expected a list of [i, j, k, l, [re, im]] entries");
  Tensor4 r(n);
  std::size_t q = 0;
  for (const auto& e : j["R"]) {
    const std::string path = "pointwise.R[" + std::to_string(q++) + "]";
    if (!e.is_array() || e.size() != 5) fail(path, "expected [i, j, k, l, [re, im]]");
    std::size_t idx[4];
    for (int a = 0; a < 4; ++a) {
      if (!e[a].is_number_integer() || e[a].get<long long>() < 1 || e[a].get<long long>() > static_cast<long long>(n))
        fail(path, "indices must be integers in 1.." + std::to_string(n));
      idx[a] = static_cast<std::size_t>(e[a].get<long long>() - 1);
    }
    r(idx[0], idx[1], idx[2], idx[3]) = read_complex(e[4], path + "[4]");
  }
  for (const auto& z : r.data())
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) fail("pointwise.R", "entries must be finite");
  const double defect = hermitian_symmetry_defect(r);
  if (defect > tol * std::max(1.0, r.max_abs()))
    fail("pointwise.R", "violates conj(R_{ijkl}) = R_{jilk} by " + std::to_string(defect));
  return {r, first_ricci(r)};
}

}  // namespace detail

/// Parses an already-decoded document. Every failure is an InputError whose
/// message starts with the path of the offending member.
inline AlgebraDocument parse_document(const json& doc, double tol = kDefaultTol) {
  using detail::fail;
  if (!doc.is_object()) fail("$", "expected a JSON object");
  const json& nj = detail::member(doc, "n");
  if (!nj.is_number_integer() || nj.get<long long>() < 1 || nj.get<long long>() > 64)
    fail("n", "expected an integer in 1..64");
  AlgebraDocument out;
  out.n = static_cast<std::size_t>(nj.get<long long>());

  const int styles = static_cast<int>(doc.contains("C") || doc.contains("D")) + static_cast<int>(doc.contains("family")) +
                     static_cast<int>(doc.contains("real_presentation")) + static_cast<int>(doc.contains("pointwise"));
  if (styles != 1) fail("$", "exactly one of C/D, family, real_presentation or pointwise must be present");

  std::optional<FrameKind> kind;
  if (doc.contains("frame_kind")) {
    if (!doc["frame_kind"].is_string()) fail("frame_kind", "expected a string");
    try {
      kind = parse_frame_kind(doc["frame_kind"].get<std::string>());
    } catch (const InputError& e) {
      fail("frame_kind", e.what());
    }
  }

  try {
    if (doc.contains("family")) {
      out.style = DocumentStyle::Family;
      out.family = detail::read_family(doc, out.n);
      HermitianLieAlgebra alg = build_family(*out.family, tol);
      out.algebra = kind ? alg.with_frame_kind(*kind) : alg;
    } else if (doc.contains("real_presentation")) {
      out.style = DocumentStyle::RealPresentation;
      detail::reject_unknown(doc, {"n", "frame_kind", "real_presentation"}, "");
      const HermitianLieAlgebra alg = from_real_presentation(detail::read_real_presentation(doc["real_presentation"], out.n), tol);
      out.algebra = kind ? alg.with_frame_kind(*kind) : alg;
    } else if (doc.contains("pointwise")) {
      out.style = DocumentStyle::Pointwise;
      detail::reject_unknown(doc, {"n", "pointwise"}, "");
      out.pointwise = detail::read_pointwise(doc["pointwise"], out.n, tol);
    } else {
      out.style = DocumentStyle::Constants;
      detail::reject_unknown(doc, {"n", "frame_kind", "C", "D"}, "");
      Tensor3 c = detail::read_tensor3(detail::member(doc, "C"), out.n, "C");
      Tensor3 d = detail::read_tensor3(detail::member(doc, "D"), out.n, "D");
      out.algebra = HermitianLieAlgebra::make(std::move(c), std::move(d), kind.value_or(FrameKind::GenericUnitary), tol);
    }
  } catch (const DocumentError&) {
    throw;
  } catch (const InputError& e) {
    // Builder errors name a quantity, not a member.
    const std::string msg = e.what();
    const char* where = out.style == DocumentStyle::Family ? "family"
                        : out.style == DocumentStyle::RealPresentation ? "real_presentation"
                        : out.style == DocumentStyle::Pointwise ? "pointwise"
                                                                : "C";
    fail(where, msg);
  }
  return out;
}

inline AlgebraDocument parse_document_text(const std::string& text, double tol = kDefaultTol) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DocumentError(std::string("$: malformed JSON (") + e.what() + ")");
  }
  return parse_document(doc, tol);
}

/// Reads a document from a path, "-" for `in`, or "fixture:NAME".
inline AlgebraDocument load_document(const std::string& source, std::istream& in, double tol = kDefaultTol);

namespace detail {

inline ordered_json complex_json(cplx z) { return ordered_json::array({z.real(), z.imag()}); }

inline ordered_json dense_tensor3(const Tensor3& t) {
  const std::size_t n = t.dim();
  ordered_json out = ordered_json::array();
  for (std::size_t a = 0; a < n; ++a) {
    ordered_json ra = ordered_json::array();
    for (std::size_t b = 0; b < n; ++b) {
      ordered_json rb = ordered_json::array();
      for (std::size_t c = 0; c < n; ++c) rb.push_back(complex_json(t(a, b, c)));
      ra.push_back(std::move(rb));
    }
    out.push_back(std::move(ra));
  }
  return out;
}

}  // namespace detail

/// Structure-constant document for an algebra; parse_document inverts it
/// exactly since doubles are written with round-trip precision.
inline ordered_json algebra_to_document(const HermitianLieAlgebra& alg) {
  ordered_json doc;
  doc["n"] = alg.n();
  doc["frame_kind"] = std::string(to_string(alg.frame_kind()));
  doc["C"] = detail::dense_tensor3(alg.C());
  doc["D"] = detail::dense_tensor3(alg.D());
  return doc;
}

inline ordered_json pointwise_to_document(const PointwiseCurvature& pw) {
  const std::size_t n = pw.R.dim();
  ordered_json entries = ordered_json::array();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          const cplx z = pw.R(i, j, k, l);
          if (z != cplx{}) entries.push_back(ordered_json::array({i + 1, j + 1, k + 1, l + 1, detail::complex_json(z)}));
        }
  ordered_json doc;
  doc["n"] = n;
  doc["pointwise"] = {{"R", std::move(entries)}};
  return doc;
}

inline ordered_json family_to_document(const FamilyPoint& p) {
  auto vec = [](const Eigen::VectorXcd& v) {
    ordered_json out = ordered_json::array();
    for (Eigen::Index a = 0; a < v.size(); ++a) out.push_back(detail::complex_json(v(a)));
    return out;
  };
  auto mat = [](const Eigen::MatrixXcd& m) {
    ordered_json out = ordered_json::array();
    for (Eigen::Index a = 0; a < m.rows(); ++a) {
      ordered_json row = ordered_json::array();
      for (Eigen::Index b = 0; b < m.cols(); ++b) row.push_back(detail::complex_json(m(a, b)));
      out.push_back(std::move(row));
    }
    return out;
  };
  ordered_json doc;
  if (const auto* aa = std::get_if<AlmostAbelianParams>(&p)) {
    doc["n"] = aa->n;
    doc["family"] = "almost_abelian";
    doc["lambda"] = aa->lambda;
    doc["v"] = vec(aa->v);
    doc["A"] = mat(aa->A);
  } else {
    const auto& c2 = std::get<Codim2Params>(p);
    doc["n"] = c2.n;
    doc["family"] = "codim2";
    doc["lambda"] = c2.lambda;
    doc["v"] = vec(c2.v);
    doc["X"] = mat(c2.X);
    doc["Y"] = mat(c2.Y);
    doc["Z"] = mat(c2.Z);
  }
  return doc;
}

inline ordered_json fixture_to_document(const Fixture& f) {
  return f.is_pointwise() ? pointwise_to_document(*f.pointwise) : algebra_to_document(*f.algebra);
}

inline AlgebraDocument document_from_fixture(const Fixture& f) {
  AlgebraDocument d;
  if (f.is_pointwise()) {
    d.n = f.pointwise->R.dim();
    d.style = DocumentStyle::Pointwise;
    d.pointwise = f.pointwise;
  } else {
    d.n = f.algebra->n();
    d.algebra = f.algebra;
  }
  return d;
}

inline AlgebraDocument load_document(const std::string& source, std::istream& in, double tol) {
  if (source.rfind("fixture:", 0) == 0) return document_from_fixture(fixture(source.substr(8)));
  std::string text;
  if (source == "-") {
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  } else {
    std::ifstream f(source, std::ios::binary);
    if (!f) throw DocumentError(source + ": cannot open file");
    text.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
  }
  return parse_document_text(text, tol);
}

}  // namespace hermlie::io
