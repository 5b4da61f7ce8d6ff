#include <gtest/gtest.h>

#include "support.hpp"

using namespace hermlie;

namespace {

// Near-flat draws: everything at `scale`, occasionally only one group on.
AlmostAbelianParams adversarial_aa(std::size_t n, Rng& rng, double scale) {
  auto p = random_almost_abelian(n, rng, false, scale);
  std::uniform_int_distribution<int> mode(0, 4);
  switch (mode(rng)) {
    case 0: p.v.setZero(); p.lambda = 0.0; break;                       // A only
    case 1: p.A.setZero(); break;                                        // λ, v only
    case 2: p.lambda = 0.0; p.A = (p.A + p.A.adjoint()).eval(); break;   // normal A plus v
    case 3: p.v.setZero(); p.lambda = 0.0; p.A = (p.A - p.A.adjoint()).eval(); break;  // flat
    default: break;
  }
  return p;
}

Codim2Params flat_codim2(std::size_t n, Rng& rng, double scale) {
  // λ = v = Z = 0 and X = −Y* with Y normal solve every constraint.
  auto p = Codim2Params::zero(n);
  const Eigen::MatrixXcd h = unit_disk_matrix(rng, static_cast<Eigen::Index>(n - 1));
  p.Y = scale * (h - h.adjoint());
  p.X = -p.Y.adjoint();
  return p;
}

}  // namespace

TEST(AlmostAbelian, ClosedFormCurvatureMatchesEngine) {
  Rng rng = make_rng(201);
  for (std::size_t n : {2u, 3u, 4u})
    for (int t = 0; t < 100; ++t) {
      const auto p = random_almost_abelian(n, rng, t % 2 == 0);
      const auto alg = almost_abelian_build(p);
      EXPECT_LE(max_abs_diff(almost_abelian_curvature(p), chern_curvature(alg)), 1e-10);
      EXPECT_LE(max_abs_diff(almost_abelian_torsion(p), chern_torsion(alg)), 1e-12);
      const Tensor4 r = chern_curvature(alg);
      const Eigen::VectorXd pd = almost_abelian_pair_diagonal(p);
      for (std::size_t k = 1; k < n; ++k) EXPECT_NEAR(pd(static_cast<Eigen::Index>(k - 1)), r(0, 0, k, k).real(), 1e-10);
    }
}

TEST(AlmostAbelian, BuildsValidAlgebras) {
  Rng rng = make_rng(202);
  for (int t = 0; t < 30; ++t) {
    const auto alg = almost_abelian_build(random_almost_abelian(2 + t % 4, rng, false));
    EXPECT_LE(jacobi_residual(alg), 1e-12);
    EXPECT_TRUE(pattern_check(alg, 1e-9).ok);
  }
}

TEST(AlmostAbelian, ParameterChecks) {
  auto p = AlmostAbelianParams::zero(3);
  p.v.resize(1);
  EXPECT_THROW(almost_abelian_build(p), InputError);
  auto q = AlmostAbelianParams::zero(2);
  q.lambda = std::numeric_limits<double>::infinity();
  EXPECT_THROW(almost_abelian_build(q), InputError);
}

TEST(AlmostAbelian, FlatnessBiconditional) {
  Rng rng = make_rng(203);
  int flat = 0;
  for (int t = 0; t < 200; ++t) {
    const double scale = t < 100 ? 1.0 : (t < 150 ? 1e-6 : 1e-4);
    const auto p = t < 100 ? random_almost_abelian(2 + t % 3, rng, t % 2 == 0) : adversarial_aa(2 + t % 3, rng, scale);
    const bool zero = chern_curvature(almost_abelian_build(p)).max_abs() <= 1e-9;
    flat += zero;
    EXPECT_EQ(almost_abelian_flags(p, 1e-9).chern_flat, zero) << "draw " << t;
  }
  EXPECT_GT(flat, 10);
}

TEST(AlmostAbelian, UnimodularFlagMatchesDefect) {
  Rng rng = make_rng(204);
  for (int t = 0; t < 50; ++t) {
    const auto p = random_almost_abelian(3, rng, t % 2 == 0);
    EXPECT_EQ(almost_abelian_flags(p).unimodular, unimodularity_defect(almost_abelian_build(p)) <= 1e-9);
  }
}

TEST(Codim2, ClosedFormsMatchEngine) {
  Rng rng = make_rng(205);
  for (std::size_t n : {2u, 3u, 4u})
    for (int t = 0; t < 100; ++t) {
      const auto p = random_codim2(n, rng, t % 2 == 0);
      const auto alg = codim2_build(p);
      EXPECT_LE(max_abs_diff(codim2_torsion(p), chern_torsion(alg)), 1e-12);
      const Tensor4 r = chern_curvature(alg);
      const Tensor4 rh = symmetrize(r);
      const RicciMatrix ric = first_ricci(r);
      const auto cf = codim2_curvature(p);
      EXPECT_NEAR(cf.R1111, r(0, 0, 0, 0).real(), 1e-10);
      EXPECT_NEAR(cf.Ric11, ric(0, 0).real(), 1e-10);
      cplx tr{};
      for (std::size_t i = 1; i < n; ++i) {
        const auto I = static_cast<Eigen::Index>(i - 1);
        EXPECT_NEAR(cf.Riiii(I), r(i, i, i, i).real(), 1e-10);
        tr += rh(0, 0, i, i);
        for (std::size_t j = 1; j < n; ++j) {
          const auto J = static_cast<Eigen::Index>(j - 1);
          EXPECT_LE(std::abs(cf.Rhat_11ij(I, J) - rh(0, 0, i, j)), 1e-10);
          if (i != j) {
            EXPECT_NEAR(cf.Rhat_iikk(I, J), rh(i, i, j, j).real(), 1e-10);
          }
          EXPECT_LE(std::abs(ric(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))), 1e-10);
        }
      }
      EXPECT_NEAR(cf.Rhat_11_trace, tr.real(), 1e-10);
    }
}

TEST(Codim2, ConstraintsAreJacobi) {
  Rng rng = make_rng(206);
  for (int t = 0; t < 40; ++t) {
    const auto p = random_codim2(2 + t % 3, rng, t % 2 == 0);
    const auto alg = codim2_build(p);
    EXPECT_LE(jacobi_residual(alg), 1e-12);
    EXPECT_TRUE(pattern_check(alg, 1e-9).ok);
    if (t % 2 == 0) {
      EXPECT_LE(unimodularity_defect(alg), 1e-12);
    }
  }
}

TEST(Codim2, BuildRejectsInadmissible) {
  auto p = Codim2Params::zero(2);
  p.lambda = -1.0;
  EXPECT_THROW(codim2_build(p), InputError);
  auto q = Codim2Params::zero(2);
  q.Z(0, 0) = 1.0;  // ZZ̄ term of the structure equation is left unbalanced
  EXPECT_THROW(codim2_build(q), InputError);
}

TEST(Codim2, SamplerIsReproducible) {
  Rng a = make_rng(207), b = make_rng(207);
  const auto p = random_codim2(3, a, true), q = random_codim2(3, b, true);
  EXPECT_EQ(p.X, q.X);
  EXPECT_EQ(p.Z, q.Z);
  EXPECT_EQ(p.lambda, q.lambda);
}

TEST(Codim2, FlatnessBiconditional) {
  Rng rng = make_rng(208);
  int flat = 0;
  for (int t = 0; t < 200; ++t) {
    Codim2Params p;
    if (t < 80) {
      p = random_codim2(2 + t % 3, rng, t % 2 == 0);
    } else if (t < 140) {
      p = flat_codim2(2 + t % 3, rng, t < 110 ? 1.0 : 1e-6);
      if (t % 3 == 0) {
        // Push off the flat locus at the adversarial scale and re-project.
        p.v = 1e-6 * unit_disk_vector(rng, p.v.size());
        p.lambda = 1e-6;
        codim2_project(p, false, 100, 1e-20);
      }
    } else {
      p = random_codim2(2 + t % 3, rng, false, t < 170 ? 1e-6 : 1e-4);
    }
    const bool zero = chern_curvature(codim2_build(p)).max_abs() <= 1e-9;
    flat += zero;
    EXPECT_EQ(codim2_flags(p, 1e-9).chern_flat, zero) << "draw " << t;
  }
  EXPECT_GT(flat, 10);
}

TEST(Codim2, OffDiagonalClosedFormWhenYVanishes) {
  // n = 2, Y = 0: the constraints force x = λ and |z| = λ.
  for (double theta : {0.0, 0.7, 2.1}) {
    auto p = Codim2Params::zero(2);
    p.lambda = 0.8;
    p.X(0, 0) = 0.8;
    p.Z(0, 0) = std::polar(0.8, theta);
    p.v(0) = cplx(0.3, -0.4);
    const auto o = codim2_offdiag_entry(p);
    EXPECT_TRUE(o.closed_form_applies);
    EXPECT_LE(o.defect, 1e-12);
    EXPECT_GT(std::abs(o.r1112), 0.1);
  }
  EXPECT_THROW(codim2_offdiag_entry(Codim2Params::zero(3)), InputError);
}
