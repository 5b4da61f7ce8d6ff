#pragma once

// Random instances shared by the unit tests and the acceptance binary.

#include <string>
#include <vector>

#include "hermlie/hermlie.hpp"

namespace testsupport {

using namespace hermlie;

/// A valid algebra drawn from one of the families or fixtures, optionally
/// moved to a random unitary frame.
inline HermitianLieAlgebra random_valid_algebra(Rng& rng, bool rotate = true) {
  std::uniform_int_distribution<int> pick(0, 5);
  std::uniform_int_distribution<int> dim(2, 4);
  const int which = pick(rng);
  HermitianLieAlgebra alg = HermitianLieAlgebra::abelian(2);
  if (which <= 1) {
    alg = almost_abelian_build(random_almost_abelian(static_cast<std::size_t>(dim(rng)), rng, which == 0));
  } else if (which <= 3) {
    alg = codim2_build(random_codim2(static_cast<std::size_t>(dim(rng)), rng, which == 2));
  } else {
    const char* names[] = {"heisenberg", "kodaira", "sl2c"};
    std::uniform_int_distribution<int> f(0, 2);
    alg = *fixture(names[f(rng)]).algebra;
  }
  if (!rotate) return alg;
  const auto n = static_cast<Eigen::Index>(alg.n());
  return unitary_change(alg, random_unitary(rng, n)).with_frame_kind(FrameKind::GenericUnitary);
}

/// Structure constants with no Lie structure: antisymmetric C, arbitrary D.
inline HermitianLieAlgebra random_raw_algebra(Rng& rng, std::size_t n) {
  Tensor3 c(n), d(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        d(j, i, k) = unit_disk(rng);
        if (i < k) {
          const cplx z = unit_disk(rng);
          c(j, i, k) = z;
          c(j, k, i) = -z;
        }
      }
  return HermitianLieAlgebra::make(std::move(c), std::move(d));
}

inline double max_abs(const Eigen::MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

/// Frame-independent scalars: norms, traces and spectra.
inline std::vector<double> invariants(const HermitianLieAlgebra& alg) {
  const Tensor4 r = chern_curvature(alg);
  const RicciMatrix ric = first_ricci(r);
  const Tensor3 t = chern_torsion(alg);
  const Tensor4 rb = bismut_curvature(alg);
  auto fro = [](const auto& x) {
    double s = 0.0;
    for (const auto& z : x.data()) s += std::norm(z);
    return std::sqrt(s);
  };
  std::vector<double> out{fro(r), fro(t), fro(rb), ric.trace().real(), ric.trace().imag()};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> e1(ric, Eigen::EigenvaluesOnly);
  for (Eigen::Index a = 0; a < e1.eigenvalues().size(); ++a) out.push_back(e1.eigenvalues()(a));
  const auto st = streets_tian(t);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> e2(st.B, Eigen::EigenvaluesOnly);
  for (Eigen::Index a = 0; a < e2.eigenvalues().size(); ++a) out.push_back(e2.eigenvalues()(a));
  out.push_back(st.rank);
  for (const auto& mp : {MixedParams(1.0, 0.0), MixedParams(0.0, 1.0), MixedParams(2.0, -3.0)}) {
    const auto cm = constant_mixed_test(r, mp, 1e-9);
    out.push_back(cm.is_constant ? 1.0 : 0.0);
    if (cm.is_constant) out.push_back(cm.c);
  }
  const auto f = classify(alg);
  for (bool b : {f.is_nilpotent, f.is_solvable, f.commutator_J_invariant, f.commutator_plus_J_nilpotent,
                 f.is_unimodular, is_btp(alg)})
    out.push_back(b ? 1.0 : 0.0);
  out.push_back(jacobi_residual(alg));
  return out;
}

}  // namespace testsupport
