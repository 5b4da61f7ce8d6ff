#pragma once

#include "hermlie/curvature.hpp"

namespace hermlie {

/// θ^b = θ + γ with γ_{ij} = Σ_k ( T^j_{ik} φ_k − conj(T^i_{jk}) φ̄_k ).
inline ConnectionCoefficients bismut_connection(const HermitianLieAlgebra& alg) {
  const std::size_t n = alg.n();
  const Tensor3 t = chern_torsion(alg);
  ConnectionCoefficients cc = chern_connection(alg);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        cc.P(i, j, k) += t(j, i, k);
        cc.Q(i, j, k) -= std::conj(t(i, j, k));
      }
  return cc;
}

/// Bismut covariant derivative of the Chern torsion. holo(l,i,k,m) holds
/// T^l_{ik;m} and anti(l,i,k,m) holds T^l_{ik;m̄}.
struct TorsionDerivative {
  Tensor4 holo;
  Tensor4 anti;

  double max_abs() const { return std::max(holo.max_abs(), anti.max_abs()); }
};

/// Frame derivatives of T vanish for left-invariant data, so only connection
/// terms survive:
///   (∇_m T)^l_{ik} = Σ_r ( T^r_{ik} P^b(r,l,m) − T^l_{rk} P^b(i,r,m) − T^l_{ir} P^b(k,r,m) ),
/// with Q^b in place of P^b for the barred direction. This sign choice is the
/// one under which the BTP symmetrization identity holds exactly.
inline TorsionDerivative covariant_torsion_derivative(const HermitianLieAlgebra& alg) {
  const std::size_t n = alg.n();
  const Tensor3 t = chern_torsion(alg);
  const ConnectionCoefficients cb = bismut_connection(alg);
  TorsionDerivative out{Tensor4(n), Tensor4(n)};
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t m = 0; m < n; ++m) {
          cplx h{}, a{};
          for (std::size_t r = 0; r < n; ++r) {
            h += t(r, i, k) * cb.P(r, l, m) - t(l, r, k) * cb.P(i, r, m) - t(l, i, r) * cb.P(k, r, m);
            a += t(r, i, k) * cb.Q(r, l, m) - t(l, r, k) * cb.Q(i, r, m) - t(l, i, r) * cb.Q(k, r, m);
          }
          out.holo(l, i, k, m) = h;
          out.anti(l, i, k, m) = a;
        }
  return out;
}

inline bool is_btp(const HermitianLieAlgebra& alg, double tol = kDefaultTol) {
  return covariant_torsion_derivative(alg).max_abs() <= tol;
}

/// Torsion quadratics attached to a quadruple (i, j, k, l).
struct QuadraticTorsionTerms {
  cplx w, v_ji, v_li, v_jk, v_lk, v_hat;
};

inline QuadraticTorsionTerms quadratic_torsion_terms(const TorsionTensor& t, std::size_t i, std::size_t j,
                                                     std::size_t k, std::size_t l) {
  QuadraticTorsionTerms q{};
  for (std::size_t r = 0; r < t.dim(); ++r) {
    q.w += t(r, i, k) * std::conj(t(r, j, l));
    q.v_ji += t(j, i, r) * std::conj(t(k, l, r));
    q.v_li += t(l, i, r) * std::conj(t(k, j, r));
    q.v_jk += t(j, k, r) * std::conj(t(i, l, r));
    q.v_lk += t(l, k, r) * std::conj(t(i, j, r));
  }
  q.v_hat = (q.v_ji + q.v_lk + q.v_li + q.v_jk) / 4.0;
  return q;
}

/// (1,1)-part of the Bismut curvature:
///   R^b_{i j̄ k l̄} = R_{i j̄ k l̄} + T^l_{ik;j̄} + conj(T^k_{jl;ī}) + v^l_i − v^j_i − v^l_k − w.
inline CurvatureTensor bismut_curvature(const HermitianLieAlgebra& alg) {
  const std::size_t n = alg.n();
  const Tensor3 t = chern_torsion(alg);
  const Tensor4 r = chern_curvature(alg);
  const TorsionDerivative dt = covariant_torsion_derivative(alg);
  Tensor4 rb(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          const auto q = quadratic_torsion_terms(t, i, j, k, l);
          rb(i, j, k, l) = r(i, j, k, l) + dt.anti(l, i, k, j) + std::conj(dt.anti(k, j, l, i)) + q.v_li - q.v_ji -
                           q.v_lk - q.w;
        }
  detail::require_hermitian(rb, "Bismut curvature");
  return rb;
}

/// max |R̂^b − R^b − ½(w + v^j_i + v^l_k − v^l_i − v^j_k)|, defined only when ∇^b T = 0.
inline double btp_symmetrization_residual(const HermitianLieAlgebra& alg, double tol = kDefaultTol) {
  if (!is_btp(alg, tol)) throw PreconditionError("BTP symmetrization identity requires a Bismut torsion-parallel algebra");
  const std::size_t n = alg.n();
  const Tensor3 t = chern_torsion(alg);
  const Tensor4 rb = bismut_curvature(alg);
  const Tensor4 rbh = symmetrize(rb);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          const auto q = quadratic_torsion_terms(t, i, j, k, l);
          const cplx rhs = rb(i, j, k, l) + 0.5 * (q.w + q.v_ji + q.v_lk - q.v_li - q.v_jk);
          worst = std::max(worst, std::abs(rbh(i, j, k, l) - rhs));
        }
  return worst;
}

}  // namespace hermlie
