#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hermlie/classify.hpp"
#include "hermlie/curvature.hpp"
#include "hermlie/fixtures.hpp"
#include "hermlie/sampling.hpp"
#include "hermlie/validate.hpp"

namespace hermlie {

struct ReportQuantity {
  std::string name;
  double value = 0.0;
};

struct ReportVerdict {
  std::string name;
  bool value = false;
};

/// Outcome of one theorem check. `informational` marks runs whose
/// hypotheses were not met; `pass` then only says nothing contradicted.
struct VerificationReport {
  std::string check;
  bool pass = true;
  bool informational = false;
  std::vector<ReportQuantity> quantities;
  std::vector<ReportVerdict> verdicts;
  std::vector<std::string> notes;

  void quantity(std::string n, double v) { quantities.push_back({std::move(n), v}); }
  void verdict(std::string n, bool v) { verdicts.push_back({std::move(n), v}); }
  void note(std::string s) { notes.push_back(std::move(s)); }
};

/// Which hypothesis of the constant-mixed-curvature theorem the algebra meets,
/// or an empty string.
inline std::string theorem1_hypothesis(const HermitianLieAlgebra& alg, const ClassificationFlags& f, double tol) {
  if (!f.is_unimodular) return {};
  if (f.is_nilpotent) return "nilpotent";
  if (f.is_solvable && f.commutator_J_invariant) return "solvable with J-invariant commutator";
  const FrameKind k = alg.frame_kind();
  if (k == FrameKind::AdmissibleAlmostAbelian && pattern_check(alg, tol).ok) return "almost abelian";
  if (k == FrameKind::AdmissibleCodim2 && pattern_check(alg, tol).ok)
    return "J-invariant abelian ideal of codimension 2";
  if (f.commutator_plus_J_nilpotent) return "g' + Jg' nilpotent";
  return {};
}

/// Constant mixed curvature forces c = 0, and flatness when β ≠ 0.
/// `flat_tol` bounds ‖R‖_∞ in the flatness assertion.
inline VerificationReport verify_theorem1(const HermitianLieAlgebra& alg, const MixedParams& mp,
                                          double tol = kDefaultTol, double flat_tol = 1e-8) {
  VerificationReport rep;
  rep.check = "theorem1";
  const auto flags = classify(alg, tol);
  const std::string hyp = theorem1_hypothesis(alg, flags, tol);
  rep.informational = hyp.empty();
  rep.note(hyp.empty() ? "hypotheses unmet; informational only" : "hypothesis: " + hyp);

  const Tensor4 r = chern_curvature(alg);
  const auto cm = constant_mixed_test(r, mp, tol);
  const double rmax = r.max_abs();
  rep.quantity("mixed_residual", cm.residual);
  rep.quantity("c", cm.c);
  rep.quantity("curvature_max_abs", rmax);
  rep.verdict("is_constant", cm.is_constant);

  bool ok = true;
  if (cm.is_constant) {
    const bool c_zero = std::abs(cm.c) <= tol;
    rep.verdict("c_is_zero", c_zero);
    ok = ok && c_zero;
    if (mp.beta != 0.0) {
      const bool flat = rmax <= flat_tol;
      rep.verdict("chern_flat", flat);
      ok = ok && flat;
    } else {
      rep.note("beta = 0: no flatness claim (Chern Ricci flat non-flat examples exist)");
    }
  } else {
    rep.note("mixed curvature is not constant; the theorem makes no claim");
  }
  rep.pass = ok;
  return rep;
}

/// Under a split Salamon frame with β ≠ 0 and constant mixed curvature:
/// c = 0 and D^γ_{jη} = D^j_{ik} = D^γ_{ij} = 0 (i, j, k ≤ r < γ, η).
inline VerificationReport verify_lemma_cd0(const HermitianLieAlgebra& alg, const MixedParams& mp, std::size_t r,
                                           double tol = kDefaultTol) {
  VerificationReport rep;
  rep.check = "lemma-cd0";
  const std::size_t n = alg.n();
  const double pattern = salamon_pattern_residual(alg, r);
  const auto cm = constant_mixed_test(alg, mp, tol);
  rep.quantity("r", static_cast<double>(r));
  rep.quantity("pattern_residual", pattern);
  rep.quantity("mixed_residual", cm.residual);
  rep.quantity("c", cm.c);
  rep.verdict("is_constant", cm.is_constant);

  if (pattern > tol || mp.beta == 0.0 || !cm.is_constant) {
    rep.informational = true;
    if (pattern > tol) rep.note("frame does not satisfy the split Salamon pattern");
    if (mp.beta == 0.0) rep.note("lemma requires beta != 0");
    if (!cm.is_constant) rep.note("mixed curvature is not constant");
    return rep;
  }
  double block = 0.0;
  for (std::size_t g = r; g < n; ++g)
    for (std::size_t j = 0; j < r; ++j) {
      for (std::size_t e = r; e < n; ++e) block = std::max(block, std::abs(alg.D(g, j, e)));
      for (std::size_t i = 0; i < r; ++i) block = std::max(block, std::abs(alg.D(g, i, j)));
    }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k) block = std::max(block, std::abs(alg.D(j, i, k)));
  rep.quantity("d_block_max_abs", block);
  const bool c_zero = std::abs(cm.c) <= tol;
  const bool d_zero = block <= tol;
  rep.verdict("c_is_zero", c_zero);
  rep.verdict("d_blocks_vanish", d_zero);
  rep.pass = c_zero && d_zero;
  return rep;
}

/// The Wallach point never has constant mixed curvature. Two independent
/// arguments: sampled values at four witnesses spread by at least
/// max(2|α|, 3|β|/2), and the coefficient system of 𝒞(X) − c|X|⁴, solved
/// in exact rationals, has no common c.
inline VerificationReport wallach_nonconstancy(const MixedParams& mp) {
  if (mp.alpha == 0.0 && mp.beta == 0.0) throw InputError("(alpha, beta) must not both be zero");
  VerificationReport rep;
  rep.check = "wallach";
  const auto w = fixture("wallach").pointwise.value();
  const double s = 1.0 / std::sqrt(2.0);
  const std::pair<const char*, Eigen::VectorXcd> witnesses[] = {
      {"e1", Eigen::Vector3cd(1, 0, 0)},
      {"e2", Eigen::Vector3cd(0, 1, 0)},
      {"(e1+e3)/sqrt2", Eigen::Vector3cd(s, 0, s)},
      {"(e1+e2)/sqrt2", Eigen::Vector3cd(s, s, 0)},
  };
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& [label, x] : witnesses) {
    const double v = mixed_value(w.R, w.Ric, mp, x);
    rep.quantity(std::string("value_at_") + label, v);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double bound = std::max(2.0 * std::abs(mp.alpha), 1.5 * std::abs(mp.beta));
  rep.quantity("spread", hi - lo);
  rep.quantity("spread_lower_bound", bound);
  const bool spread_ok = hi - lo >= bound - 1e-12 && bound > 0.0;

  // Coefficients of |X_2|⁴, t|X_2|², and t² (at s = 0) each pin down c;
  // the s-term separately requires β = 0.
  using Q = boost::multiprecision::cpp_rational;
  const Q a(mp.alpha), b(mp.beta);
  const Q c1 = 2 * (2 * a + b);
  const Q c2 = Q(3, 2) * (2 * a + b);
  const Q c3 = 2 * (a + b);
  const bool solvable = c1 == c2 && c2 == c3 && b == 0;
  rep.verdict("coefficient_system_solvable", solvable);
  rep.verdict("spread_exceeds_bound", spread_ok);
  rep.note("c must equal 2(2a+b) = 3(2a+b)/2 = 2(a+b), and beta = 0");
  rep.pass = spread_ok && !solvable;
  return rep;
}

/// Pointwise state of the middle-type Bismut curvature model.
struct MiddleTypeState {
  double x = 0.0;
  double y = 0.0;
  double a1 = 1.0;
  MixedParams mp{0.0, 1.0};
  double c = 0.0;
};

/// Residuals of the constraint system a constant 𝒞_{α,β} = c imposes on
/// the middle-type model:
///   (2α+β)x = c,  c = 0,  (2α+2β)x = c + βa₁²,  and the (2,1,1,2) entry
///   4β(iy) + 4αx = 2c − 6βa₁² split into imaginary and real parts.
/// `pass` means no contradiction with the theorem: infeasible whenever β ≠ 0.
inline VerificationReport middle_type_feasibility(const MiddleTypeState& st, double tol = kDefaultTol) {
  if (!(st.a1 > 0.0)) throw InputError("middle-type torsion constant a1 must be positive");
  const double al = st.mp.alpha, be = st.mp.beta, x = st.x, y = st.y, a2 = st.a1 * st.a1, c = st.c;
  VerificationReport rep;
  rep.check = "middle-type";
  const double res[5] = {std::abs((2 * al + be) * x - c), std::abs(c), std::abs((2 * al + 2 * be) * x - c - be * a2),
                         std::abs(4 * be * y), std::abs(4 * al * x + 6 * be * a2 - 2 * c)};
  const char* names[5] = {"hr1_11", "hr1_33", "hr1a_21", "btp_2112_imag", "btp_2112_real"};
  bool feasible = true;
  for (int q = 0; q < 5; ++q) {
    rep.quantity(names[q], res[q]);
    feasible = feasible && res[q] <= tol;
  }
  rep.verdict("feasible", feasible);
  if (be != 0.0) {
    rep.pass = !feasible;
    rep.note("beta != 0: the system must be infeasible for every a1 > 0");
  } else {
    rep.note("beta = 0: feasible exactly when x = 0 and c = 0");
  }
  return rep;
}

/// Admissible frame of a non-balanced BTP manifold at a point.
struct NonBalancedBTPFrameData {
  std::size_t n = 2;
  double lambda = 1.0;
  Eigen::VectorXd a;  // a_n = 0, Σ_{i<n} a_i = λ
  TorsionTensor T;    // T^n_{ij} = 0, T^j_{in} = δ_ij a_i

  void check(double tol = kDefaultTol) const {
    if (n < 2) throw InputError("non-balanced BTP frame needs n >= 2");
    if (static_cast<std::size_t>(a.size()) != n || T.dim() != n) throw InputError("a and T must match n");
    const std::size_t last = n - 1;
    if (a(static_cast<Eigen::Index>(last)) != 0.0) throw InputError("a_n must be 0");
    if (!(lambda > 0.0)) throw InputError("Gauduchon constant lambda must be positive");
    if (std::abs(a.head(static_cast<Eigen::Index>(last)).sum() - lambda) > tol)
      throw InputError("a_1 + ... + a_{n-1} must equal lambda");
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (T(k, i, j) != -T(k, j, i)) throw InputError("torsion must be antisymmetric");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (T(last, i, j) != cplx{}) throw InputError("T^n_{ij} must vanish");
        const cplx want = i == j ? cplx(a(static_cast<Eigen::Index>(i))) : cplx{};
        if (T(j, i, last) != want) throw InputError("T^j_{in} must equal delta_ij a_i");
      }
  }
};

/// Random admissible data: a_i ∈ (0,1] for i < n, unconstrained torsion
/// among the first n−1 directions.
inline NonBalancedBTPFrameData random_nonbalanced_frame(std::size_t n, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  NonBalancedBTPFrameData fd;
  fd.n = n;
  fd.a = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  fd.T = Tensor3(n);
  const std::size_t last = n - 1;
  for (std::size_t i = 0; i < last; ++i) fd.a(static_cast<Eigen::Index>(i)) = 1.0 - u(rng);
  fd.lambda = fd.a.sum();
  for (std::size_t i = 0; i < last; ++i) {
    fd.T(i, i, last) = fd.a(static_cast<Eigen::Index>(i));
    fd.T(i, last, i) = -fd.a(static_cast<Eigen::Index>(i));
  }
  for (std::size_t k = 0; k < last; ++k)
    for (std::size_t i = 0; i < last; ++i)
      for (std::size_t j = i + 1; j < last; ++j) {
        const cplx z = unit_disk(rng);
        fd.T(k, i, j) = z;
        fd.T(k, j, i) = -z;
      }
  return fd;
}

/// Σ_{k,s} (|T^k_{ns}|² − |T^s_{nk}|²) summed over swap orbits {k, s}: the
/// (k,s) and (s,k) terms are exact negatives, so each orbit contributes 0.
inline double nonbalanced_identity_sum(const TorsionTensor& t) {
  const std::size_t n = t.dim();
  const std::size_t last = n - 1;
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t s = k; s < n; ++s) {
      const double p = std::norm(t(k, last, s));
      const double q = std::norm(t(s, last, k));
      total += (p - q) + (q - p);
    }
  return total;
}

/// With R^b_{n n̄ k k̄} = 0 (e_n is ∇^b-parallel), the torsion identity gives
/// R_{n n̄ k k̄} = Σ_s |T^s_{nk}|² − Σ_s |T^k_{ns}|²; summing over k yields
/// R_{n n̄} = 0, so the i = n diagonal equation α R_{n n̄} = c forces c = 0.
inline VerificationReport nonbalanced_btp_check(const NonBalancedBTPFrameData& fd, const MixedParams& mp,
                                                double tol = kDefaultTol) {
  fd.check(tol);
  VerificationReport rep;
  rep.check = "thm3";
  const std::size_t n = fd.n;
  const std::size_t last = n - 1;
  for (std::size_t k = 0; k < n; ++k) {
    double in = 0.0, out = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      in += std::norm(fd.T(k, last, s));
      out += std::norm(fd.T(s, last, k));
    }
    rep.quantity("R_nn_" + std::to_string(k + 1) + std::to_string(k + 1), out - in);
  }
  const double identity = nonbalanced_identity_sum(fd.T);
  const double ricci_nn = -identity;
  const double c = mp.alpha * ricci_nn;
  rep.quantity("identity_sum", identity);
  rep.quantity("ricci_nn", ricci_nn);
  rep.quantity("c", c);
  rep.verdict("identity_exact_zero", identity == 0.0);
  rep.verdict("c_is_zero", c == 0.0);
  rep.note("R^b_{n n k k} = 0 because e_n is parallel for the Bismut connection");
  rep.note("R_{n n k k} = sum_s |T^s_{nk}|^2 - sum_s |T^k_{ns}|^2 for each k");
  rep.note("summing over k: R_{n n} = 0, so alpha R_{n n} = c gives c = 0");
  rep.pass = identity == 0.0 && c == 0.0;
  return rep;
}

}  // namespace hermlie
