#include <gtest/gtest.h>

#include "oracle.hpp"
#include "support.hpp"

using namespace hermlie;
using testsupport::random_raw_algebra;
using testsupport::random_valid_algebra;

TEST(Algebra, RejectsNonAntisymmetricC) {
  Tensor3 c(2), d(2);
  c(0, 0, 1) = 1.0;
  c(0, 1, 0) = 0.5;
  EXPECT_THROW(HermitianLieAlgebra::make(c, d), InputError);
}

TEST(Algebra, RejectsShapeMismatchAndNonFinite) {
  EXPECT_THROW(HermitianLieAlgebra::make(Tensor3(2), Tensor3(3)), InputError);
  Tensor3 d(2);
  d(0, 0, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(HermitianLieAlgebra::make(Tensor3(2), d), InputError);
}

TEST(Algebra, AntisymmetrizesWithinTolerance) {
  Tensor3 c(2), d(2);
  c(1, 0, 1) = 1.0 + 1e-12;
  c(1, 1, 0) = -1.0;
  const auto alg = HermitianLieAlgebra::make(c, d);
  EXPECT_EQ(alg.C(1, 0, 1), -alg.C(1, 1, 0));
  EXPECT_EQ(antisymmetry_residual(alg.C()), 0.0);
}

TEST(Algebra, FrameKindNamesRoundTrip) {
  for (auto k : {FrameKind::GenericUnitary, FrameKind::Salamon, FrameKind::AdmissibleAlmostAbelian,
                 FrameKind::AdmissibleCodim2, FrameKind::SpecialBtp, FrameKind::AdmissibleNonbalancedBtp})
    EXPECT_EQ(parse_frame_kind(to_string(k)), k);
  EXPECT_THROW(parse_frame_kind("kahler"), InputError);
}

TEST(Jacobi, AgreesWithBracketOracleOnValidAndRawData) {
  Rng rng = make_rng(11);
  for (int t = 0; t < 30; ++t) {
    const auto alg = random_valid_algebra(rng);
    EXPECT_LE(jacobi_residual(alg), 1e-12);
    EXPECT_LE(oracle::jacobi_defect(alg), 1e-12);
  }
  for (int t = 0; t < 10; ++t) {
    const auto raw = random_raw_algebra(rng, 3);
    EXPECT_GT(jacobi_residual(raw), 1e-3);
    EXPECT_GT(oracle::jacobi_defect(raw), 1e-3);
  }
}

TEST(Jacobi, DSquaredMatchesJacobiOnValidInstances) {
  Rng rng = make_rng(12);
  for (int t = 0; t < 50; ++t) {
    const auto alg = random_valid_algebra(rng);
    EXPECT_NEAR(dphi_squared_residual(alg), jacobi_residual(alg), 1e-12);
  }
  // Both detect failure together on raw data.
  for (int t = 0; t < 10; ++t) {
    const auto raw = random_raw_algebra(rng, 2 + t % 3);
    EXPECT_GT(dphi_squared_residual(raw), 1e-6);
    EXPECT_GT(jacobi_residual(raw), 1e-6);
  }
}

TEST(Unimodular, AlmostAbelianCriterion) {
  AlmostAbelianParams p = AlmostAbelianParams::zero(2);
  p.lambda = 1.0;
  EXPECT_NEAR(unimodularity_defect(almost_abelian_build(p)), 1.0, 1e-15);
  Rng rng = make_rng(13);
  for (int t = 0; t < 50; ++t) {
    auto q = random_almost_abelian(2 + t % 3, rng, false);
    const double expect = std::abs(q.lambda + 2.0 * q.A.trace().real());
    EXPECT_NEAR(unimodularity_defect(almost_abelian_build(q)), expect, 1e-12);
    make_unimodular(q);
    EXPECT_LE(unimodularity_defect(almost_abelian_build(q)), 1e-12);
  }
}

TEST(Unimodular, InvariantUnderUnitaryChange) {
  Rng rng = make_rng(14);
  for (int t = 0; t < 20; ++t) {
    const auto p = random_almost_abelian(3, rng, t % 2 == 0);
    const auto alg = almost_abelian_build(p);
    const auto rot = unitary_change(alg, random_unitary(rng, 3));
    EXPECT_EQ(unimodularity_defect(alg) <= 1e-9, unimodularity_defect(rot) <= 1e-9);
  }
}

TEST(UnitaryChange, RejectsNonUnitary) {
  const auto alg = HermitianLieAlgebra::abelian(2);
  EXPECT_THROW(unitary_change(alg, 2.0 * Eigen::MatrixXcd::Identity(2, 2)), InputError);
  EXPECT_THROW(unitary_change(alg, Eigen::MatrixXcd::Identity(3, 3)), InputError);
}

TEST(UnitaryChange, BracketsTransformAsVectors) {
  // [e'_i, e'_k] computed in the old frame equals Σ C'^m_{ik} e'_m.
  Rng rng = make_rng(15);
  for (int t = 0; t < 10; ++t) {
    const auto alg = random_valid_algebra(rng, false);
    const std::size_t n = alg.n();
    const Eigen::MatrixXcd U = random_unitary(rng, static_cast<Eigen::Index>(n));
    const auto rot = unitary_change(alg, U);
    auto lift = [&](std::size_t i, bool barred) {
      oracle::Vec x = oracle::Vec::Zero(static_cast<Eigen::Index>(2 * n));
      for (std::size_t a = 0; a < n; ++a)
        x(static_cast<Eigen::Index>(barred ? n + a : a)) =
            barred ? std::conj(U(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a)))
                   : U(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a));
      return x;
    };
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        for (bool barred : {false, true}) {
          const oracle::Vec lhs = oracle::bracket(alg, lift(i, false), lift(k, barred));
          oracle::Vec rhs = oracle::Vec::Zero(static_cast<Eigen::Index>(2 * n));
          const oracle::Vec local = oracle::basis_bracket(rot, i, barred ? n + k : k);
          for (std::size_t m = 0; m < n; ++m) {
            rhs += local(static_cast<Eigen::Index>(m)) * lift(m, false);
            rhs += local(static_cast<Eigen::Index>(n + m)) * lift(m, true);
          }
          EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
        }
  }
}

TEST(RealPresentation, RoundTripRecoversStructureConstants) {
  Rng rng = make_rng(16);
  for (int t = 0; t < 20; ++t) {
    const auto alg = random_valid_algebra(rng);
    const auto rp = to_real_presentation(alg);
    EXPECT_LE(real_jacobi_residual(rp), 1e-12);
    EXPECT_LE(integrability_residual(rp), 1e-12);
    const auto back = from_real_presentation(rp);
    EXPECT_LE(max_abs_diff(back.C(), alg.C()), 1e-12);
    EXPECT_LE(max_abs_diff(back.D(), alg.D()), 1e-12);
  }
}

TEST(RealPresentation, RawDataFailsRealJacobi) {
  Rng rng = make_rng(17);
  const auto raw = random_raw_algebra(rng, 2);
  EXPECT_GT(real_jacobi_residual(to_real_presentation(raw)), 1e-6);
}

TEST(Classify, Fixtures) {
  const auto h = classify(*fixture("heisenberg").algebra);
  EXPECT_TRUE(h.is_nilpotent);
  EXPECT_TRUE(h.is_solvable);
  EXPECT_TRUE(h.is_unimodular);
  const auto k = classify(*fixture("kodaira").algebra);
  EXPECT_TRUE(k.is_nilpotent);
  EXPECT_TRUE(k.is_unimodular);
  const auto s = classify(*fixture("sl2c").algebra);
  EXPECT_FALSE(s.is_solvable);
  EXPECT_FALSE(s.is_nilpotent);
  EXPECT_TRUE(s.is_unimodular);
  const auto a = classify(HermitianLieAlgebra::abelian(3));
  EXPECT_TRUE(a.is_nilpotent);
  EXPECT_TRUE(a.commutator_J_invariant);
}

TEST(Classify, AlmostAbelianIsSolvable) {
  Rng rng = make_rng(18);
  for (int t = 0; t < 20; ++t) {
    const auto p = random_almost_abelian(2 + t % 3, rng, true);
    const auto f = classify(almost_abelian_build(p));
    EXPECT_TRUE(f.is_solvable);
    EXPECT_TRUE(f.is_unimodular);
  }
}

TEST(Classify, FlagsAreFrameIndependent) {
  Rng rng = make_rng(19);
  for (int t = 0; t < 20; ++t) {
    const auto alg = random_valid_algebra(rng, false);
    const auto rot = unitary_change(alg, random_unitary(rng, static_cast<Eigen::Index>(alg.n())));
    const auto a = classify(alg), b = classify(rot);
    EXPECT_EQ(a.is_nilpotent, b.is_nilpotent);
    EXPECT_EQ(a.is_solvable, b.is_solvable);
    EXPECT_EQ(a.commutator_J_invariant, b.commutator_J_invariant);
    EXPECT_EQ(a.commutator_plus_J_nilpotent, b.commutator_plus_J_nilpotent);
    EXPECT_EQ(a.is_unimodular, b.is_unimodular);
  }
}

TEST(Validate, FamilyFramesPassTheirPatterns) {
  Rng rng = make_rng(20);
  for (int t = 0; t < 20; ++t) {
    EXPECT_TRUE(validate(almost_abelian_build(random_almost_abelian(3, rng, false))).passed);
    EXPECT_TRUE(validate(codim2_build(random_codim2(3, rng, false))).passed);
  }
  for (const auto& name : {"heisenberg", "kodaira"}) EXPECT_TRUE(validate(*fixture(name).algebra).passed);
}

TEST(Validate, RotatedFrameFailsClaimedPattern) {
  Rng rng = make_rng(21);
  const auto alg = almost_abelian_build(random_almost_abelian(3, rng, true));
  const auto rot = unitary_change(alg, random_unitary(rng, 3)).with_frame_kind(FrameKind::AdmissibleAlmostAbelian);
  const auto rep = validate(rot);
  EXPECT_FALSE(rep.pattern.ok);
  EXPECT_FALSE(rep.passed);
  EXPECT_LE(rep.jacobi_residual, 1e-12);
}

TEST(Validate, RawDataFails) {
  Rng rng = make_rng(22);
  EXPECT_FALSE(validate(random_raw_algebra(rng, 3)).passed);
}

TEST(Salamon, PatternResidual) {
  EXPECT_EQ(salamon_pattern_residual(*fixture("heisenberg").algebra, 3), 0.0);
  EXPECT_EQ(salamon_pattern_residual(*fixture("kodaira").algebra, 2), 0.0);
  // D^1_{21} has its lower-first index outside a split at r = 1.
  EXPECT_EQ(salamon_pattern_residual(*fixture("kodaira").algebra, 1), 1.0);
  // Heisenberg with r = 2 puts e_3 outside the split: C^3_{12} must vanish.
  EXPECT_EQ(salamon_pattern_residual(*fixture("heisenberg").algebra, 2), 1.0);
  EXPECT_THROW(salamon_pattern_residual(HermitianLieAlgebra::abelian(2), 3), InputError);
}
