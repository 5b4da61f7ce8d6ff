#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <string_view>

#include "hermlie/errors.hpp"
#include "hermlie/tensor.hpp"

namespace hermlie {

inline constexpr double kDefaultTol = 1e-9;

// Which sparse normal form the frame claims to be in. Determines which
// pattern validator `validate` runs.
enum class FrameKind {
  GenericUnitary,
  Salamon,
  AdmissibleAlmostAbelian,
  AdmissibleCodim2,
  SpecialBtp,
  AdmissibleNonbalancedBtp,
};

inline std::string_view to_string(FrameKind k) {
  switch (k) {
    case FrameKind::GenericUnitary: return "generic-unitary";
    case FrameKind::Salamon: return "salamon";
    case FrameKind::AdmissibleAlmostAbelian: return "admissible-almost-abelian";
    case FrameKind::AdmissibleCodim2: return "admissible-codim2";
    case FrameKind::SpecialBtp: return "special-btp";
    case FrameKind::AdmissibleNonbalancedBtp: return "admissible-nonbalanced-btp";
  }
  return "generic-unitary";
}

inline FrameKind parse_frame_kind(std::string_view s) {
  for (auto k : {FrameKind::GenericUnitary, FrameKind::Salamon, FrameKind::AdmissibleAlmostAbelian,
                 FrameKind::AdmissibleCodim2, FrameKind::SpecialBtp,
                 FrameKind::AdmissibleNonbalancedBtp}) {
    if (to_string(k) == s) return k;
  }
  throw InputError("unknown frame_kind '" + std::string(s) + "'");
}

/// Structure constants of a Hermitian Lie algebra under a unitary frame
/// e_1..e_n of g^{1,0}:
///
///   [e_i, e_j]  = Σ_k C^k_{ij} e_k
///   [e_i, ē_j]  = Σ_k ( conj(D^i_{kj}) e_k − D^j_{ki} ē_k )
///
/// C(j,i,k) = C^j_{ik}, D(j,i,k) = D^j_{ik}, indices 0-based. The metric is
/// implicit: g(e_i, ē_j) = δ_ij. Instances are immutable once built.
class HermitianLieAlgebra {
 public:
  /// Checks shapes and finiteness, and antisymmetrizes C. C entries whose
  /// antisymmetry defect exceeds `tol` are rejected.
  static HermitianLieAlgebra make(Tensor3 c, Tensor3 d, FrameKind kind = FrameKind::GenericUnitary,
                                  double tol = kDefaultTol) {
    const std::size_t n = c.dim();
    if (n == 0) throw InputError("n must be at least 1");
    if (d.dim() != n) throw InputError("C and D must both be n×n×n");
    for (const auto* t : {&c, &d}) {
      for (const auto& z : t->data()) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
          throw InputError("structure constants must be finite");
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = i; k < n; ++k) {
          const cplx s = c(j, i, k) + c(j, k, i);
          if (std::abs(s) > tol) {
            throw InputError("C is not antisymmetric in its lower indices at C^" +
                             std::to_string(j + 1) + "_{" + std::to_string(i + 1) +
                             std::to_string(k + 1) + "}");
          }
          const cplx a = 0.5 * (c(j, i, k) - c(j, k, i));
          c(j, i, k) = a;
          c(j, k, i) = cplx{} - a;  // avoids negative zeros
        }
      }
    }
    return HermitianLieAlgebra(std::move(c), std::move(d), kind);
  }

  static HermitianLieAlgebra abelian(std::size_t n) {
    return make(Tensor3(n), Tensor3(n));
  }

  std::size_t n() const { return c_.dim(); }
  const Tensor3& C() const { return c_; }
  const Tensor3& D() const { return d_; }
  FrameKind frame_kind() const { return kind_; }

  cplx C(std::size_t j, std::size_t i, std::size_t k) const { return c_(j, i, k); }
  cplx D(std::size_t j, std::size_t i, std::size_t k) const { return d_(j, i, k); }

  HermitianLieAlgebra with_frame_kind(FrameKind k) const {
    return HermitianLieAlgebra(c_, d_, k);
  }

 private:
  HermitianLieAlgebra(Tensor3 c, Tensor3 d, FrameKind kind)
      : c_(std::move(c)), d_(std::move(d)), kind_(kind) {}

  Tensor3 c_;
  Tensor3 d_;
  FrameKind kind_ = FrameKind::GenericUnitary;
};

/// Max |LHS| over the three first-Bianchi identities
///   Σ_r ( C^r_{ij}C^l_{rk} + C^r_{jk}C^l_{ri} + C^r_{ki}C^l_{rj} ),
///   Σ_r ( C^r_{ik}D^l_{jr} + D^r_{ji}D^l_{rk} − D^r_{jk}D^l_{ri} ),
///   Σ_r ( C^r_{ik}D̄^r_{jl} − C^j_{rk}D̄^i_{rl} + C^j_{ri}D̄^k_{rl}
///         − D^l_{ri}D̄^k_{jr} + D^l_{rk}D̄^i_{jr} ).
/// Zero exactly when (C, D) is a Lie algebra with integrable J.
inline double jacobi_residual(const HermitianLieAlgebra& alg) {
  const std::size_t n = alg.n();
  const auto& C = alg.C();
  const auto& D = alg.D();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          cplx a{}, b{}, c{};
          for (std::size_t r = 0; r < n; ++r) {
            a += C(r, i, j) * C(l, r, k) + C(r, j, k) * C(l, r, i) + C(r, k, i) * C(l, r, j);
            b += C(r, i, k) * D(l, j, r) + D(r, j, i) * D(l, r, k) - D(r, j, k) * D(l, r, i);
            c += C(r, i, k) * std::conj(D(r, j, l)) - C(j, r, k) * std::conj(D(i, r, l)) +
                 C(j, r, i) * std::conj(D(k, r, l)) - D(l, r, i) * std::conj(D(k, j, r)) +
                 D(l, r, k) * std::conj(D(i, j, r));
          }
          worst = std::max({worst, std::abs(a), std::abs(b), std::abs(c)});
        }
  return worst;
}

/// max_i |Σ_r (C^r_{ri} + D^r_{ri})|; zero iff tr(ad_x) = 0 for all x.
inline double unimodularity_defect(const HermitianLieAlgebra& alg) {
  const std::size_t n = alg.n();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cplx s{};
    for (std::size_t r = 0; r < n; ++r) s += alg.C(r, r, i) + alg.D(r, r, i);
    worst = std::max(worst, std::abs(s));
  }
  return worst;
}

/// Structure constants in the frame e'_i = Σ_a U_{ia} e_a (U unitary).
inline HermitianLieAlgebra unitary_change(const HermitianLieAlgebra& alg, const Eigen::MatrixXcd& U) {
  const std::size_t n = alg.n();
  if (static_cast<std::size_t>(U.rows()) != n || static_cast<std::size_t>(U.cols()) != n)
    throw InputError("frame change matrix must be n×n");
  const double defect = (U * U.adjoint() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (defect > 1e-10) throw InputError("frame change matrix is not unitary");

  // Contract one index at a time: C'^k_{ij} = Σ U_ia U_jb conj(U_kc) C^c_{ab},
  // D'^j_{ik} = Σ U_ia conj(U_jb) U_kc D^b_{ac}.
  auto contract = [n](const Tensor3& t, const Eigen::MatrixXcd& up, const Eigen::MatrixXcd& lo1,
                      const Eigen::MatrixXcd& lo2) {
    Tensor3 s1(n), s2(n), s3(n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          cplx acc{};
          for (std::size_t c = 0; c < n; ++c) acc += up(x, c) * t(c, a, b);
          s1(x, a, b) = acc;
        }
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t b = 0; b < n; ++b) {
          cplx acc{};
          for (std::size_t a = 0; a < n; ++a) acc += lo1(y, a) * s1(x, a, b);
          s2(x, y, b) = acc;
        }
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z) {
          cplx acc{};
          for (std::size_t b = 0; b < n; ++b) acc += lo2(z, b) * s2(x, y, b);
          s3(x, y, z) = acc;
        }
    return s3;
  };
  const Eigen::MatrixXcd Ub = U.conjugate();
  Tensor3 c2 = contract(alg.C(), Ub, U, U);
  Tensor3 d2 = contract(alg.D(), Ub, U, U);
  return HermitianLieAlgebra::make(std::move(c2), std::move(d2), FrameKind::GenericUnitary, 1e-8);
}

}  // namespace hermlie
