#pragma once

#include <string>

#include "hermlie/algebra.hpp"
#include "hermlie/curvature.hpp"
#include "hermlie/forms.hpp"

namespace hermlie {

/// Largest |C^j_{ik} + C^j_{ki}| of a raw (not yet antisymmetrized) tensor.
inline double antisymmetry_residual(const Tensor3& c) {
  const std::size_t n = c.dim();
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, std::abs(c(j, i, k) + c(j, k, i)));
  return worst;
}

/// Split frame with e_1..e_r a Salamon frame of 𝔤'+J𝔤' (1-based r):
///   C^γ_{ab} = D^a_{γb} = 0 for γ > r, and for i, j, k ≤ r
///   C^j_{ik} = 0 unless j > i or j > k;  D^j_{ik} = 0 unless i > j.
/// Returns the largest modulus among entries the pattern forces to vanish.
inline double salamon_pattern_residual(const HermitianLieAlgebra& alg, std::size_t r) {
  const std::size_t n = alg.n();
  if (r < 1 || r > n) throw InputError("split index r must satisfy 1 <= r <= n");
  double worst = 0.0;
  auto take = [&worst](cplx z) { worst = std::max(worst, std::abs(z)); };
  for (std::size_t g = r; g < n; ++g)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        take(alg.C(g, a, b));
        take(alg.D(a, g, b));
      }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k) {
        if (!(j > i || j > k)) take(alg.C(j, i, k));
        if (!(i > j)) take(alg.D(j, i, k));
      }
  return worst;
}

/// Result of the sparsity check implied by frame_kind.
struct PatternCheck {
  double residual = 0.0;
  bool ok = true;
  std::string detail;
};

namespace detail {

inline PatternCheck almost_abelian_pattern(const HermitianLieAlgebra& alg, double tol) {
  // Allowed: D^1_{11}, D^1_{i1}, D^j_{i1}, C^j_{1i} = −conj(D^i_{j1}) for i, j ≥ 2.
  const std::size_t n = alg.n();
  double worst = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        const bool d_allowed = c == 0 && (a == 0 || b != 0);
        if (!d_allowed) worst = std::max(worst, std::abs(alg.D(a, b, c)));
        const bool c_allowed = a != 0 && ((b == 0) != (c == 0));
        if (!c_allowed) worst = std::max(worst, std::abs(alg.C(a, b, c)));
      }
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 1; j < n; ++j)
      worst = std::max(worst, std::abs(alg.C(j, 0, i) + std::conj(alg.D(i, j, 0))));
  worst = std::max(worst, std::abs(alg.D(0, 0, 0).imag()));
  return {worst, worst <= tol, "almost-abelian admissible sparsity with C^j_{1i} = -conj(A_ji)"};
}

inline PatternCheck codim2_pattern(const HermitianLieAlgebra& alg, double tol) {
  // Allowed: C^j_{1i}, D^1_{11} = λ ≥ 0, D^j_{i1}, D^1_{ij}, D^1_{i1} for i, j ≥ 2.
  const std::size_t n = alg.n();
  double worst = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        const bool d_allowed = (a == 0) || (b != 0 && c == 0);
        if (!d_allowed) worst = std::max(worst, std::abs(alg.D(a, b, c)));
        const bool c_allowed = a != 0 && ((b == 0) != (c == 0));
        if (!c_allowed) worst = std::max(worst, std::abs(alg.C(a, b, c)));
      }
  // D^1_{1j} for j ≥ 2 is not in the family.
  for (std::size_t j = 1; j < n; ++j) worst = std::max(worst, std::abs(alg.D(0, 0, j)));
  const cplx lam = alg.D(0, 0, 0);
  worst = std::max({worst, std::abs(lam.imag()), std::max(0.0, -lam.real())});
  return {worst, worst <= tol, "codimension-2 admissible sparsity with real lambda >= 0"};
}

inline PatternCheck special_btp_pattern(const HermitianLieAlgebra& alg, double tol) {
  if (alg.n() != 3) return {0.0, false, "special frames exist only in complex dimension 3"};
  const Tensor3 t = chern_torsion(alg);
  double worst = 0.0;
  cplx a[3] = {t(0, 1, 2), t(1, 2, 0), t(2, 0, 1)};
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        const bool cyclic = i != j && i != k && j != k;
        if (!cyclic) worst = std::max(worst, std::abs(t(k, i, j)));
      }
  for (std::size_t q = 0; q < 3; ++q) {
    worst = std::max({worst, std::abs(a[q].imag()), std::max(0.0, -a[q].real())});
    if (q > 0) {
      // a_1 ≥ a_2 ≥ a_3 with every nonzero value equal to a_1.
      worst = std::max(worst, std::max(0.0, a[q].real() - a[q - 1].real()));
      worst = std::max(worst, std::min(std::abs(a[q]), std::abs(a[q] - a[0])));
    }
  }
  return {worst, worst <= tol, "torsion supported on T^i_{jk} with (ijk) cyclic, a_1 = .. = a_r > 0"};
}

inline PatternCheck nonbalanced_btp_pattern(const HermitianLieAlgebra& alg, double tol) {
  const std::size_t n = alg.n();
  const Tensor3 t = chern_torsion(alg);
  const std::size_t last = n - 1;
  double worst = 0.0;
  double lambda = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      worst = std::max(worst, std::abs(t(last, i, j)));
      if (i != j) worst = std::max(worst, std::abs(t(j, i, last)));
    }
  for (std::size_t i = 0; i < n; ++i) {
    const cplx ai = t(i, i, last);
    worst = std::max(worst, std::abs(ai.imag()));
    if (i < last) lambda += ai.real();
  }
  const bool positive = lambda > tol;
  return {worst, worst <= tol && positive,
          positive ? "T^n_{ij} = 0, T^j_{in} = delta_ij a_i, lambda = sum a_i > 0"
                   : "Gauduchon constant lambda = sum a_i must be positive"};
}

}  // namespace detail

/// Frame-kind specific sparsity check; generic-unitary imposes nothing.
inline PatternCheck pattern_check(const HermitianLieAlgebra& alg, double tol) {
  switch (alg.frame_kind()) {
    case FrameKind::GenericUnitary: return {0.0, true, "no pattern imposed"};
    case FrameKind::Salamon: {
      const double r = salamon_pattern_residual(alg, alg.n());
      return {r, r <= tol, "Salamon pattern with r = n"};
    }
    case FrameKind::AdmissibleAlmostAbelian: return detail::almost_abelian_pattern(alg, tol);
    case FrameKind::AdmissibleCodim2: return detail::codim2_pattern(alg, tol);
    case FrameKind::SpecialBtp: return detail::special_btp_pattern(alg, tol);
    case FrameKind::AdmissibleNonbalancedBtp: return detail::nonbalanced_btp_pattern(alg, tol);
  }
  return {};
}

struct ValidationReport {
  double antisymmetry_residual = 0.0;
  double jacobi_residual = 0.0;
  double dphi_squared_residual = 0.0;
  PatternCheck pattern;
  bool passed = false;
};

/// `raw_antisymmetry` is the defect of C as supplied, before construction
/// antisymmetrized it.
inline ValidationReport validate(const HermitianLieAlgebra& alg, double tol = kDefaultTol,
                                 double raw_antisymmetry = 0.0) {
  ValidationReport rep;
  rep.antisymmetry_residual = std::max(raw_antisymmetry, antisymmetry_residual(alg.C()));
  rep.jacobi_residual = jacobi_residual(alg);
  rep.dphi_squared_residual = dphi_squared_residual(alg);
  rep.pattern = pattern_check(alg, tol);
  rep.passed = rep.antisymmetry_residual <= tol && rep.jacobi_residual <= tol && rep.pattern.ok;
  return rep;
}

}  // namespace hermlie
