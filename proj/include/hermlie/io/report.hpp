#pragma once

// Report building blocks. Every floating value passes through `num`, which
// rounds to 12 significant digits, flushes |x| < 1e-13 to zero and drops the
// sign of zero, so golden files do not depend on last-bit noise.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <iomanip>
#include <sstream>
#include <string>

#include "hermlie/io/document.hpp"
#include "hermlie/verifier.hpp"

namespace hermlie::io {

inline constexpr double kFlushBelow = 1e-13;

inline double num(double x) {
  if (!std::isfinite(x)) return x;
  if (std::abs(x) < kFlushBelow) return 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

inline ordered_json num_pair(cplx z) { return ordered_json::array({num(z.real()), num(z.imag())}); }

inline bool negligible(cplx z) { return num(z.real()) == 0.0 && num(z.imag()) == 0.0; }

/// {"shape": [...], "entries": [[[i,...], [re, im]], ...]} with 1-based
/// indices in lexicographic order.
inline ordered_json sparse(const Tensor3& t) {
  const std::size_t n = t.dim();
  ordered_json e = ordered_json::array();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (!negligible(t(a, b, c))) e.push_back({{a + 1, b + 1, c + 1}, num_pair(t(a, b, c))});
  return {{"shape", {n, n, n}}, {"entries", std::move(e)}};
}

inline ordered_json sparse(const Tensor4& t) {
  const std::size_t n = t.dim();
  ordered_json e = ordered_json::array();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d)
          if (!negligible(t(a, b, c, d))) e.push_back({{a + 1, b + 1, c + 1, d + 1}, num_pair(t(a, b, c, d))});
  return {{"shape", {n, n, n, n}}, {"entries", std::move(e)}};
}

inline ordered_json sparse(const Eigen::MatrixXcd& m) {
  ordered_json e = ordered_json::array();
  for (Eigen::Index a = 0; a < m.rows(); ++a)
    for (Eigen::Index b = 0; b < m.cols(); ++b)
      if (!negligible(m(a, b))) e.push_back({{a + 1, b + 1}, num_pair(m(a, b))});
  return {{"shape", {m.rows(), m.cols()}}, {"entries", std::move(e)}};
}

inline ordered_json real_vector(const Eigen::VectorXd& v) {
  ordered_json out = ordered_json::array();
  for (Eigen::Index a = 0; a < v.size(); ++a) out.push_back(num(v(a)));
  return out;
}

inline ordered_json complex_vector(const Eigen::VectorXcd& v) {
  ordered_json out = ordered_json::array();
  for (Eigen::Index a = 0; a < v.size(); ++a) out.push_back(num_pair(v(a)));
  return out;
}

inline ordered_json complex_matrix(const Eigen::MatrixXcd& m) {
  ordered_json out = ordered_json::array();
  for (Eigen::Index a = 0; a < m.rows(); ++a) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index b = 0; b < m.cols(); ++b) row.push_back(num_pair(m(a, b)));
    out.push_back(std::move(row));
  }
  return out;
}

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t h) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

/// Digest of the parsed content, independent of the input's formatting or
/// style: family and real-presentation inputs hash as the structure
/// constants they produce.
inline std::string document_digest(const AlgebraDocument& d) {
  const ordered_json canon =
      d.is_pointwise() ? pointwise_to_document(*d.pointwise) : algebra_to_document(*d.algebra);
  return "fnv1a64:" + hex64(fnv1a64(canon.dump()));
}

inline ordered_json verification_json(const VerificationReport& r) {
  ordered_json q = ordered_json::object();
  for (const auto& x : r.quantities) q[x.name] = num(x.value);
  ordered_json v = ordered_json::object();
  for (const auto& x : r.verdicts) v[x.name] = x.value;
  return {{"check", r.check}, {"pass", r.pass}, {"informational", r.informational},
          {"quantities", std::move(q)}, {"verdicts", std::move(v)}, {"notes", r.notes}};
}

namespace detail {

inline bool is_sparse_listing(const ordered_json& j) {
  return j.is_object() && j.size() == 2 && j.contains("shape") && j.contains("entries");
}

inline std::string complex_text(const ordered_json& z) {
  std::ostringstream s;
  s << z[0].get<double>();
  const double im = z[1].get<double>();
  if (im != 0.0) s << (im < 0 ? " - " : " + ") << std::abs(im) << "i";
  return s.str();
}

inline std::string scalar_text(const ordered_json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

inline bool is_flat(const ordered_json& j) {
  if (!j.is_array()) return !j.is_object();
  for (const auto& e : j)
    if (e.is_object() || (e.is_array() && !std::all_of(e.begin(), e.end(), [](const auto& x) { return x.is_primitive(); })))
      return false;
  return true;
}

inline void write_json(std::ostream& out, const ordered_json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * depth + 2), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  if (j.is_object() && !j.empty()) {
    out << "{\n";
    std::size_t q = 0;
    for (const auto& [k, v] : j.items()) {
      out << pad << ordered_json(k).dump() << ": ";
      write_json(out, v, depth + 1);
      out << (++q < j.size() ? ",\n" : "\n");
    }
    out << close << "}";
  } else if (j.is_array() && !is_flat(j)) {
    out << "[\n";
    for (std::size_t q = 0; q < j.size(); ++q) {
      out << pad;
      write_json(out, j[q], depth + 1);
      out << (q + 1 < j.size() ? ",\n" : "\n");
    }
    out << close << "]";
  } else {
    out << j.dump(-1, ' ', false, nlohmann::detail::error_handler_t::strict);
  }
}

inline void render(std::ostream& out, const std::string& key, const ordered_json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  if (is_sparse_listing(j)) {
    out << pad << key << ": " << j["entries"].size() << " nonzero\n";
    for (const auto& e : j["entries"]) {
      std::string idx;
      for (const auto& i : e[0]) idx += (idx.empty() ? "" : ",") + std::to_string(i.get<int>());
      out << pad << "  " << key << "[" << idx << "] = " << complex_text(e[1]) << "\n";
    }
  } else if (j.is_object()) {
    out << pad << key << ":\n";
    for (const auto& [k, v] : j.items()) render(out, k, v, depth + 1);
  } else if (j.is_array() && !j.empty() && j[0].is_string()) {
    out << pad << key << ":\n";
    for (const auto& s : j) out << pad << "  - " << s.get<std::string>() << "\n";
  } else {
    out << pad << key << ": " << scalar_text(j) << "\n";
  }
}

}  // namespace detail

/// JSON with two-space indentation, but arrays of scalars or of scalar
/// pairs stay on one line so sparse listings read one entry per line.
inline std::string to_json_text(const ordered_json& j) {
  std::ostringstream out;
  detail::write_json(out, j, 0);
  out << "\n";
  return out.str();
}

/// Indented plain-text rendering of a report; sparse listings are expanded
/// one entry per line.
inline void render_text(std::ostream& out, const ordered_json& report) {
  for (const auto& [k, v] : report.items()) detail::render(out, k, v, 0);
}

}  // namespace hermlie::io
