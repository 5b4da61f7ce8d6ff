#pragma once

#include <vector>

#include "hermlie/algebra.hpp"

namespace hermlie {

// Left-invariant forms with constant coefficients in the coframe
// ω = (φ_1..φ_n, φ̄_1..φ̄_n). A 2-form is stored as an antisymmetric
// 2n×2n matrix F with form = ½ Σ F_ab ω_a∧ω_b.
using TwoForm = Eigen::MatrixXcd;

/// dω_a for every coframe element, read off the structure equation
///   dφ_i = −½ Σ C^i_{jk} φ_j∧φ_k − Σ conj(D^j_{ik}) φ_j∧φ̄_k
/// and its conjugate.
inline std::vector<TwoForm> coframe_differentials(const HermitianLieAlgebra& alg) {
  const std::size_t n = alg.n();
  const Eigen::Index N = static_cast<Eigen::Index>(2 * n);
  std::vector<TwoForm> d(2 * n, TwoForm::Zero(N, N));
  for (std::size_t i = 0; i < n; ++i) {
    auto& f = d[i];
    auto& fb = d[n + i];
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const auto J = static_cast<Eigen::Index>(j);
        const auto K = static_cast<Eigen::Index>(k);
        const auto nn = static_cast<Eigen::Index>(n);
        f(J, K) -= alg.C(i, j, k);
        f(J, nn + K) -= std::conj(alg.D(j, i, k));
        f(nn + K, J) += std::conj(alg.D(j, i, k));
        fb(nn + J, nn + K) -= std::conj(alg.C(i, j, k));
        fb(nn + J, K) -= alg.D(j, i, k);
        fb(K, nn + J) += alg.D(j, i, k);
      }
  }
  return d;
}

/// max over coframe elements and basis 3-forms of |coefficient of d(dω_a)|.
/// Equals jacobi_residual on every input (the two are the same identities
/// reached by different routes).
inline double dphi_squared_residual(const HermitianLieAlgebra& alg) {
  const auto d = coframe_differentials(alg);
  const Eigen::Index N = static_cast<Eigen::Index>(d.size());
  double worst = 0.0;
  std::vector<cplx> g(static_cast<std::size_t>(N * N * N));
  auto at = [N, &g](Eigen::Index a, Eigen::Index b, Eigen::Index c) -> cplx& {
    return g[static_cast<std::size_t>((a * N + b) * N + c)];
  };
  for (const auto& p : d) {
    std::fill(g.begin(), g.end(), cplx{});
    // d(½ Σ P_ab ω_a∧ω_b) = Σ P_ab dω_a ∧ ω_b; (Q∧ω_b)_{cde} is the cyclic
    // sum Q_cd δ_be + Q_de δ_bc + Q_ec δ_bd.
    for (Eigen::Index a = 0; a < N; ++a)
      for (Eigen::Index b = 0; b < N; ++b) {
        const cplx pab = p(a, b);
        if (pab == cplx{}) continue;
        const auto& q = d[static_cast<std::size_t>(a)];
        for (Eigen::Index x = 0; x < N; ++x)
          for (Eigen::Index y = 0; y < N; ++y) {
            const cplx qxy = pab * q(x, y);
            if (qxy == cplx{}) continue;
            at(x, y, b) += qxy;
            at(b, x, y) += qxy;
            at(y, b, x) += qxy;
          }
      }
    for (Eigen::Index x = 0; x < N; ++x)
      for (Eigen::Index y = x + 1; y < N; ++y)
        for (Eigen::Index z = y + 1; z < N; ++z) worst = std::max(worst, std::abs(at(x, y, z)));
  }
  return worst;
}

}  // namespace hermlie
