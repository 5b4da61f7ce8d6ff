#include <gtest/gtest.h>

#include <numbers>

#include "support.hpp"

using namespace hermlie;

namespace {

double quantity(const VerificationReport& r, const std::string& name) {
  for (const auto& q : r.quantities)
    if (q.name == name) return q.value;
  ADD_FAILURE() << "missing quantity " << name;
  return std::nan("");
}

bool verdict(const VerificationReport& r, const std::string& name) {
  for (const auto& v : r.verdicts)
    if (v.name == name) return v.value;
  ADD_FAILURE() << "missing verdict " << name;
  return false;
}

}  // namespace

TEST(ConstantMixedCheck, HeisenbergIsNonConstantButPasses) {
  const auto rep = verify_theorem1(*fixture("heisenberg").algebra, MixedParams(2, 3));
  EXPECT_FALSE(rep.informational);
  EXPECT_TRUE(rep.pass);
}

TEST(ConstantMixedCheck, KodairaRicciFlatConstantWithBetaZero) {
  const auto rep = verify_theorem1(*fixture("kodaira").algebra, MixedParams(1, 0));
  EXPECT_TRUE(rep.pass);
  EXPECT_TRUE(verdict(rep, "is_constant"));
  EXPECT_TRUE(verdict(rep, "c_is_zero"));
  EXPECT_EQ(quantity(rep, "curvature_max_abs"), 1.0);
}

TEST(ConstantMixedCheck, NonConstantAlmostAbelian) {
  auto p = AlmostAbelianParams::zero(2);
  p.lambda = 1.0;
  p.A(0, 0) = -0.5;
  const auto rep = verify_theorem1(almost_abelian_build(p), MixedParams(0, 1));
  EXPECT_EQ(rep.notes.front(), "hypothesis: almost abelian");
  EXPECT_FALSE(verdict(rep, "is_constant"));
  EXPECT_TRUE(rep.pass);
}

TEST(ConstantMixedCheck, NonUnimodularIsInformational) {
  auto p = AlmostAbelianParams::zero(2);
  p.lambda = 1.0;
  EXPECT_TRUE(verify_theorem1(almost_abelian_build(p), MixedParams(0, 1)).informational);
}

TEST(ConstantMixedCheck, RandomUnimodularFamilies) {
  Rng rng = make_rng(301);
  for (int t = 0; t < 60; ++t) {
    const MixedParams mp(std::cos(0.3 * t), std::sin(0.3 * t) + (t % 7 == 0 ? 0.5 : 0.0));
    const auto alg = t % 2 ? codim2_build(random_codim2(2 + t % 3, rng, true))
                           : almost_abelian_build(random_almost_abelian(2 + t % 3, rng, true));
    const auto rep = verify_theorem1(alg, mp);
    EXPECT_FALSE(rep.informational);
    EXPECT_TRUE(rep.pass);
  }
}

TEST(SalamonSplitCheck, Examples) {
  const auto ab = verify_lemma_cd0(HermitianLieAlgebra::abelian(3), MixedParams(0, 1), 3);
  EXPECT_FALSE(ab.informational);
  EXPECT_TRUE(ab.pass);
  // D = 0 makes the Heisenberg metric Chern flat, so the lemma applies.
  const auto he = verify_lemma_cd0(*fixture("heisenberg").algebra, MixedParams(0, 1), 3);
  EXPECT_FALSE(he.informational);
  EXPECT_TRUE(he.pass);
  const auto ko = verify_lemma_cd0(*fixture("kodaira").algebra, MixedParams(1, 0), 2);
  EXPECT_TRUE(ko.informational);
  EXPECT_THROW(verify_lemma_cd0(HermitianLieAlgebra::abelian(2), MixedParams(0, 1), 0), InputError);
}

TEST(Wallach, FixtureValues) {
  const auto w = fixture("wallach").pointwise.value();
  EXPECT_EQ(w.Ric, Eigen::Vector3cd(2, 4, 2).asDiagonal().toDenseMatrix());
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(w.R(i, i, i, i), cplx(2.0));
  EXPECT_EQ(hermitian_symmetry_defect(w.R), 0.0);
  const double s = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(mixed_value(w.R, w.Ric, MixedParams(0, 1), Eigen::Vector3cd(s, 0, s)), 0.5, 1e-12);
}

TEST(Wallach, NonConstantOnUnitCircle) {
  for (int t = 0; t < 360; ++t) {
    const double a = 2.0 * std::numbers::pi * t / 360.0;
    const auto rep = wallach_nonconstancy(MixedParams(std::cos(a), std::sin(a)));
    EXPECT_TRUE(rep.pass) << "angle " << a;
    EXPECT_FALSE(verdict(rep, "coefficient_system_solvable"));
  }
  EXPECT_THROW(wallach_nonconstancy(MixedParams()), InputError);
}

TEST(MiddleType, InfeasibleWheneverBetaNonZero) {
  for (double a1 : {0.1, 1.0, 10.0})
    for (double x : {-3.0, 0.0, 2.5})
      for (double y : {-1.0, 0.0, 4.0})
        for (double c : {0.0, 1.0}) {
          const auto rep = middle_type_feasibility({x, y, a1, MixedParams(0.5, -2.0), c});
          EXPECT_TRUE(rep.pass);
          EXPECT_FALSE(verdict(rep, "feasible"));
        }
}

TEST(MiddleType, RicciOnlyFeasibleExactlyAtOrigin) {
  EXPECT_TRUE(verdict(middle_type_feasibility({0.0, 3.0, 1.0, MixedParams(1, 0), 0.0}), "feasible"));
  EXPECT_FALSE(verdict(middle_type_feasibility({0.1, 0.0, 1.0, MixedParams(1, 0), 0.0}), "feasible"));
  EXPECT_FALSE(verdict(middle_type_feasibility({0.0, 0.0, 1.0, MixedParams(1, 0), 0.5}), "feasible"));
  EXPECT_THROW(middle_type_feasibility({0.0, 0.0, 0.0, MixedParams(1, 0), 0.0}), InputError);
}

TEST(NonBalancedBtp, IdentityIsExactlyZero) {
  Rng rng = make_rng(302);
  for (std::size_t n = 2; n <= 6; ++n)
    for (int t = 0; t < 10; ++t) {
      const auto fd = random_nonbalanced_frame(n, rng);
      const auto rep = nonbalanced_btp_check(fd, MixedParams(1.3, -0.4));
      EXPECT_TRUE(rep.pass);
      EXPECT_EQ(quantity(rep, "identity_sum"), 0.0);
      EXPECT_EQ(quantity(rep, "c"), 0.0);
    }
}

TEST(NonBalancedBtp, RejectsInadmissibleFrames) {
  Rng rng = make_rng(303);
  auto fd = random_nonbalanced_frame(3, rng);
  fd.a(2) = 0.5;
  EXPECT_THROW(nonbalanced_btp_check(fd, MixedParams(1, 0)), InputError);
  auto fe = random_nonbalanced_frame(3, rng);
  fe.T(2, 0, 1) = 1.0;
  fe.T(2, 1, 0) = -1.0;
  EXPECT_THROW(nonbalanced_btp_check(fe, MixedParams(1, 0)), InputError);
}
