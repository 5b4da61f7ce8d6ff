#include <gtest/gtest.h>

#include "oracle.hpp"
#include "support.hpp"

using namespace hermlie;
using testsupport::random_valid_algebra;

namespace {

// Valid algebras, plus raw data for the purely algebraic formulas.
std::vector<HermitianLieAlgebra> sample(std::uint64_t seed, int count) {
  Rng rng = make_rng(seed);
  std::vector<HermitianLieAlgebra> out;
  for (int t = 0; t < count; ++t) out.push_back(random_valid_algebra(rng));
  return out;
}

}  // namespace

TEST(ChernOracle, CurvatureMatchesFormsAndOperators) {
  for (const auto& alg : sample(101, 25)) {
    const auto conn = oracle::from_coefficients(chern_connection(alg), alg.n());
    const Tensor4 r = chern_curvature(alg);
    EXPECT_LE(max_abs_diff(r, oracle::curvature_from_forms(alg, conn)), 1e-12);
    EXPECT_LE(max_abs_diff(r, oracle::curvature_from_operators(alg, conn)), 1e-12);
  }
}

TEST(ChernOracle, ConnectionIsMetricWithPureTypeTorsion) {
  for (const auto& alg : sample(102, 15)) {
    const std::size_t n = alg.n();
    const auto conn = oracle::from_coefficients(chern_connection(alg), n);
    EXPECT_LE(oracle::metric_defect(conn), 1e-13);
    const Tensor3 t = chern_torsion(alg);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        // No (1,1) part.
        EXPECT_LE(oracle::torsion(alg, conn, oracle::unit(n, i), oracle::unit(n, n + k)).cwiseAbs().maxCoeff(), 1e-12);
        const oracle::Vec tv = oracle::torsion(alg, conn, oracle::unit(n, i), oracle::unit(n, k));
        for (std::size_t j = 0; j < n; ++j) EXPECT_NEAR(std::abs(tv(static_cast<Eigen::Index>(j)) - t(j, i, k)), 0.0, 1e-12);
        EXPECT_LE(tv.tail(static_cast<Eigen::Index>(n)).cwiseAbs().maxCoeff(), 1e-12);
      }
  }
}

TEST(BismutOracle, TotallySkewMetricAndCurvature) {
  for (const auto& alg : sample(103, 15)) {
    const auto conn = oracle::from_coefficients(bismut_connection(alg), alg.n());
    EXPECT_LE(oracle::metric_defect(conn), 1e-13);
    EXPECT_LE(oracle::torsion_skew_defect(alg, conn), 1e-12);
    const Tensor4 rb = bismut_curvature(alg);
    EXPECT_LE(max_abs_diff(rb, oracle::curvature_from_forms(alg, conn)), 1e-11);
  }
}

TEST(BismutOracle, TorsionDerivative) {
  for (const auto& alg : sample(104, 12)) {
    const std::size_t n = alg.n();
    const auto chern = oracle::from_coefficients(chern_connection(alg), n);
    const auto bis = oracle::from_coefficients(bismut_connection(alg), n);
    const auto dt = covariant_torsion_derivative(alg);
    EXPECT_LE(max_abs_diff(dt.holo, oracle::torsion_derivative(alg, chern, bis, false)), 1e-12);
    EXPECT_LE(max_abs_diff(dt.anti, oracle::torsion_derivative(alg, chern, bis, true)), 1e-12);
  }
}

TEST(Curvature, HermitianSymmetry) {
  for (const auto& alg : sample(105, 30)) {
    EXPECT_LE(hermitian_symmetry_defect(chern_curvature(alg)), 1e-13);
    EXPECT_LE(hermitian_symmetry_defect(bismut_curvature(alg)), 1e-12);
  }
}

TEST(Curvature, DFreeAlgebrasAreChernFlat) {
  const auto r = chern_curvature(*fixture("sl2c").algebra);
  EXPECT_EQ(r.max_abs(), 0.0);
  EXPECT_EQ(chern_curvature(HermitianLieAlgebra::abelian(4)).max_abs(), 0.0);
}

TEST(Curvature, KodairaValues) {
  const auto r = chern_curvature(*fixture("kodaira").algebra);
  EXPECT_NEAR(r(0, 0, 0, 0).real(), -1.0, 1e-15);
  EXPECT_NEAR(r(0, 0, 1, 1).real(), 1.0, 1e-15);
  EXPECT_LE(first_ricci(r).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Shortcuts, MatchFullTensorContractions) {
  for (const auto& alg : sample(106, 100)) {
    const auto sc = diagonal_shortcuts(alg);
    const Tensor4 r = chern_curvature(alg);
    const Tensor4 rh = symmetrize(r);
    const std::size_t n = alg.n();
    for (std::size_t i = 0; i < n; ++i) {
      const auto I = static_cast<Eigen::Index>(i);
      EXPECT_NEAR(sc.H(I), r(i, i, i, i).real(), 1e-12);
      for (std::size_t k = 0; k < n; ++k) {
        const auto K = static_cast<Eigen::Index>(k);
        EXPECT_NEAR(sc.pair(I, K), r(i, i, k, k).real(), 1e-12);
        EXPECT_NEAR(sc.rhat(I, K), rh(i, i, k, k).real(), 1e-12);
      }
    }
  }
}

TEST(Symmetrize, SymmetriesAndIdempotence) {
  for (const auto& alg : sample(107, 10)) {
    const Tensor4 rh = symmetrize(chern_curvature(alg));
    const std::size_t n = alg.n();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t l = 0; l < n; ++l) {
            EXPECT_NEAR(std::abs(rh(i, j, k, l) - rh(k, j, i, l)), 0.0, 1e-14);
            EXPECT_NEAR(std::abs(rh(i, j, k, l) - rh(i, l, k, j)), 0.0, 1e-14);
          }
    EXPECT_LE(max_abs_diff(symmetrize(rh), rh), 1e-14);
  }
}

TEST(Mixed, ValueMatchesDirectContraction) {
  Rng rng = make_rng(108);
  for (const auto& alg : sample(109, 20)) {
    const Tensor4 r = chern_curvature(alg);
    const RicciMatrix ric = first_ricci(r);
    const MixedParams mp(1.5, -0.7);
    const Eigen::VectorXcd x = unit_disk_vector(rng, static_cast<Eigen::Index>(alg.n()));
    EXPECT_NEAR(mixed_value(r, ric, mp, x), oracle::mixed_direct(r, mp.alpha, mp.beta, x), 1e-12);
  }
}

TEST(Mixed, QuarticIdentityLinksDefectToValues) {
  // 𝒞(X) − c = ¼ Σ E_{ijkl} X_i X̄_j X_k X̄_l for unit X.
  Rng rng = make_rng(110);
  for (const auto& alg : sample(111, 20)) {
    const Tensor4 r = chern_curvature(alg);
    const RicciMatrix ric = first_ricci(r);
    const MixedParams mp(0.3, 1.1);
    const double c = 0.9;
    const Tensor4 e = mixed_identity_defect(r, ric, mp, c);
    const std::size_t n = alg.n();
    const Eigen::VectorXcd x = unit_disk_vector(rng, static_cast<Eigen::Index>(n)).normalized();
    cplx q{};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t l = 0; l < n; ++l)
            q += e(i, j, k, l) * x(static_cast<Eigen::Index>(i)) * std::conj(x(static_cast<Eigen::Index>(j))) *
                 x(static_cast<Eigen::Index>(k)) * std::conj(x(static_cast<Eigen::Index>(l)));
    EXPECT_NEAR(mixed_value(r, ric, mp, x) - c, 0.25 * q.real(), 1e-12);
  }
}

TEST(Mixed, RejectsBadParameters) {
  EXPECT_THROW(MixedParams(0.0, 0.0), InputError);
  EXPECT_THROW(MixedParams(std::nan(""), 1.0), InputError);
  const Tensor4 r(2);
  const RicciMatrix ric = Eigen::MatrixXcd::Zero(2, 2);
  EXPECT_THROW(mixed_value(r, ric, MixedParams(1, 0), Eigen::VectorXcd::Zero(2)), InputError);
  EXPECT_THROW(mixed_value(r, ric, MixedParams(1, 0), Eigen::VectorXcd::Ones(3)), InputError);
}

TEST(Mixed, KodairaExamples) {
  const auto k = *fixture("kodaira").algebra;
  const auto ricci_only = constant_mixed_test(k, MixedParams(1, 0), 1e-9);
  EXPECT_TRUE(ricci_only.is_constant);
  EXPECT_EQ(ricci_only.c, 0.0);
  const auto holo = constant_mixed_test(k, MixedParams(0, 1), 1e-9);
  EXPECT_FALSE(holo.is_constant);
  EXPECT_GT(holo.sampled_spread, 0.5);
}

TEST(Mixed, FlatAlgebrasAreConstantZero) {
  for (const auto* name : {"sl2c", "abelian"}) {
    const auto cm = constant_mixed_test(*fixture(name).algebra, MixedParams(2, 3), 1e-9);
    EXPECT_TRUE(cm.is_constant);
    EXPECT_EQ(cm.c, 0.0);
    EXPECT_EQ(cm.residual, 0.0);
  }
}

TEST(Mixed, SampleSetIsDeterministicAndUnit) {
  const auto a = mixed_sample_vectors(3, 9), b = mixed_sample_vectors(3, 9);
  ASSERT_EQ(a.size(), b.size());
  ASSERT_EQ(a.size(), 200u + 3u + 12u);
  for (std::size_t q = 0; q < a.size(); ++q) {
    EXPECT_EQ(a[q], b[q]);
    EXPECT_NEAR(a[q].norm(), 1.0, 1e-14);
  }
}

TEST(Btp, Sl2cIsBtpAndSatisfiesSymmetrization) {
  const auto s = *fixture("sl2c").algebra;
  EXPECT_TRUE(is_btp(s));
  EXPECT_LE(btp_symmetrization_residual(s), 1e-9);
  EXPECT_EQ(streets_tian(chern_torsion(s)).rank, 3);
}

TEST(Btp, SymmetrizationOnEveryBtpInstance) {
  // D = 0 algebras are BTP; rotate them to generic frames.
  Rng rng = make_rng(112);
  int seen = 0;
  for (int t = 0; t < 30; ++t) {
    const auto alg = random_valid_algebra(rng);
    if (!is_btp(alg)) continue;
    ++seen;
    EXPECT_LE(btp_symmetrization_residual(alg), 1e-9);
  }
  for (int t = 0; t < 10; ++t) {
    const auto base = t % 2 ? *fixture("sl2c").algebra : *fixture("heisenberg").algebra;
    const auto rot = unitary_change(base, random_unitary(rng, 3));
    if (!is_btp(rot)) continue;
    ++seen;
    EXPECT_LE(btp_symmetrization_residual(rot), 1e-9);
  }
  EXPECT_GT(seen, 4);
}

TEST(Btp, PreconditionEnforced) {
  auto p = AlmostAbelianParams::zero(2);
  p.lambda = 1.0;
  p.A(0, 0) = -0.5;
  const auto alg = almost_abelian_build(p);
  EXPECT_FALSE(is_btp(alg));
  EXPECT_THROW(btp_symmetrization_residual(alg), PreconditionError);
}

TEST(Btp, VanishingDIsNotEnough) {
  // The complex Heisenberg group has D = 0 but ∇^b T ≠ 0.
  const auto h = *fixture("heisenberg").algebra;
  EXPECT_FALSE(is_btp(h));
  EXPECT_TRUE(is_btp(HermitianLieAlgebra::abelian(3)));
}

TEST(Btp, KodairaSurfaceIsTorsionParallel) {
  const auto k = *fixture("kodaira").algebra;
  EXPECT_TRUE(is_btp(k));
  EXPECT_LE(btp_symmetrization_residual(k), 1e-12);
}

TEST(StreetsTian, RankOfFixtures) {
  EXPECT_EQ(streets_tian(chern_torsion(*fixture("heisenberg").algebra)).rank, 1);
  EXPECT_EQ(streets_tian(chern_torsion(HermitianLieAlgebra::abelian(3))).rank, 0);
  const auto st = streets_tian(chern_torsion(*fixture("sl2c").algebra));
  EXPECT_LE((st.B - st.B.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(FrameInvariance, ScalarOutputs) {
  Rng rng = make_rng(113);
  for (int t = 0; t < 8; ++t) {
    const auto alg = random_valid_algebra(rng, false);
    const auto base = testsupport::invariants(alg);
    for (int q = 0; q < 20; ++q) {
      const auto rot = unitary_change(alg, random_unitary(rng, static_cast<Eigen::Index>(alg.n())));
      const auto got = testsupport::invariants(rot);
      ASSERT_EQ(got.size(), base.size());
      for (std::size_t a = 0; a < got.size(); ++a) EXPECT_NEAR(got[a], base[a], 1e-9) << "invariant " << a;
    }
  }
}
