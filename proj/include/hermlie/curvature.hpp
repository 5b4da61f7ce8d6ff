#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "hermlie/algebra.hpp"

namespace hermlie {

// T(k, i, j) = T^k_{ij}.
using TorsionTensor = Tensor3;
// R(i, j, k, l) = R_{i j̄ k l̄}.
using CurvatureTensor = Tensor4;
// Ric(i, j) = R_{i j̄}.
using RicciMatrix = Eigen::MatrixXcd;

/// θ_{ij} = Σ_k ( P(i,j,k) φ_k + Q(i,j,k) φ̄_k ).
struct ConnectionCoefficients {
  Tensor3 P;
  Tensor3 Q;
};

inline TorsionTensor chern_torsion(const HermitianLieAlgebra& alg) {
  const std::size_t n = alg.n();
  Tensor3 t(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) t(j, i, k) = -alg.C(j, i, k) - alg.D(j, i, k) + alg.D(j, k, i);
  return t;
}

inline ConnectionCoefficients chern_connection(const HermitianLieAlgebra& alg) {
  const std::size_t n = alg.n();
  ConnectionCoefficients cc{Tensor3(n), Tensor3(n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        cc.P(i, j, k) = alg.D(j, i, k);
        cc.Q(i, j, k) = -std::conj(alg.D(i, j, k));
      }
  return cc;
}

/// Largest |conj(R_{i j̄ k l̄}) − R_{j ī l k̄}|.
inline double hermitian_symmetry_defect(const CurvatureTensor& r) {
  const std::size_t n = r.dim();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
          worst = std::max(worst, std::abs(std::conj(r(i, j, k, l)) - r(j, i, l, k)));
  return worst;
}

namespace detail {

// A broken pair symmetry means a formula bug, never bad input.
inline void require_hermitian(const CurvatureTensor& r, const char* what) {
  const double defect = hermitian_symmetry_defect(r);
  if (defect > 1e-9 * std::max(1.0, r.max_abs()))
    throw InternalError(std::string(what) + " lost Hermitian pair symmetry (defect " + std::to_string(defect) + ")");
}

}  // namespace detail

/// R_{i j̄ k l̄} = Σ_s ( D^s_{ki} D̄^s_{lj} − D^l_{si} D̄^k_{sj} − D^j_{si} D̄^k_{ls} − D̄^i_{sj} D^l_{ks} ).
inline CurvatureTensor chern_curvature(const HermitianLieAlgebra& alg) {
  const std::size_t n = alg.n();
  const auto& D = alg.D();
  Tensor4 r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          cplx s{};
          for (std::size_t q = 0; q < n; ++q)
            s += D(q, k, i) * std::conj(D(q, l, j)) - D(l, q, i) * std::conj(D(k, q, j)) -
                 D(j, q, i) * std::conj(D(k, l, q)) - std::conj(D(i, q, j)) * D(l, k, q);
          r(i, j, k, l) = s;
        }
  detail::require_hermitian(r, "Chern curvature");
  return r;
}

/// Diagonal curvature values read straight off D, bypassing the full tensor.
struct DiagonalShortcuts {
  Eigen::VectorXd H;      // R_{i ī i ī}
  Eigen::MatrixXd pair;   // R_{i ī s s̄}
  Eigen::MatrixXd rhat;   // R̂_{i ī k k̄}
};

inline DiagonalShortcuts diagonal_shortcuts(const HermitianLieAlgebra& alg) {
  const std::size_t n = alg.n();
  const auto& D = alg.D();
  const auto N = static_cast<Eigen::Index>(n);
  DiagonalShortcuts out{Eigen::VectorXd::Zero(N), Eigen::MatrixXd::Zero(N, N), Eigen::MatrixXd::Zero(N, N)};
  auto re = [](cplx z) { return z.real(); };
  for (std::size_t i = 0; i < n; ++i) {
    double h = 0.0;
    for (std::size_t r = 0; r < n; ++r)
      h += std::norm(D(r, i, i)) - std::norm(D(i, r, i)) - 2.0 * re(D(i, r, i) * std::conj(D(i, i, r)));
    out.H(static_cast<Eigen::Index>(i)) = h;
    for (std::size_t s = 0; s < n; ++s) {
      double p = 0.0;
      double q = 0.0;
      const std::size_t k = s;
      for (std::size_t r = 0; r < n; ++r) {
        p += std::norm(D(r, s, i)) - std::norm(D(s, r, i)) - 2.0 * re(D(i, r, i) * std::conj(D(s, s, r)));
        q += std::norm(D(r, k, i) + D(r, i, k)) - std::norm(D(k, r, i)) - std::norm(D(i, r, k)) -
             2.0 * re(D(k, r, k) * std::conj(D(i, r, i)) + D(i, r, i) * std::conj(D(k, k, r)) +
                      D(k, r, k) * std::conj(D(i, i, r)) + D(i, r, k) * std::conj(D(i, k, r)) +
                      D(k, r, i) * std::conj(D(k, i, r)));
      }
      out.pair(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(s)) = p;
      out.rhat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = 0.25 * q;
    }
  }
  return out;
}

/// R̂_{i j̄ k l̄} = ¼(R_{i j̄ k l̄} + R_{k j̄ i l̄} + R_{i l̄ k j̄} + R_{k l̄ i j̄}).
inline CurvatureTensor symmetrize(const CurvatureTensor& r) {
  const std::size_t n = r.dim();
  Tensor4 s(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
          s(i, j, k, l) = 0.25 * (r(i, j, k, l) + r(k, j, i, l) + r(i, l, k, j) + r(k, l, i, j));
  return s;
}

inline RicciMatrix first_ricci(const CurvatureTensor& r) {
  const std::size_t n = r.dim();
  RicciMatrix ric = RicciMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx s{};
      for (std::size_t q = 0; q < n; ++q) s += r(i, j, q, q);
      ric(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s;
    }
  return ric;
}

/// (α, β) weighting Ricci against holomorphic sectional curvature.
struct MixedParams {
  double alpha = 0.0;
  double beta = 0.0;

  MixedParams() = default;
  MixedParams(double a, double b) : alpha(a), beta(b) {
    if (!std::isfinite(a) || !std::isfinite(b)) throw InputError("alpha and beta must be finite");
    if (a == 0.0 && b == 0.0) throw InputError("(alpha, beta) must not both be zero");
  }
};

/// α Ric(X,X̄)/|X|² + β R(X,X̄,X,X̄)/|X|⁴.
inline double mixed_value(const CurvatureTensor& r, const RicciMatrix& ric, const MixedParams& mp,
                          const Eigen::VectorXcd& x) {
  const std::size_t n = r.dim();
  if (static_cast<std::size_t>(x.size()) != n) throw InputError("evaluation vector has wrong length");
  const double norm2 = x.squaredNorm();
  if (!(norm2 > 0.0)) throw InputError("evaluation vector must be nonzero");
  const cplx ricxx = (x.transpose() * ric * x.conjugate())(0, 0);
  cplx h{};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const cplx a = x(static_cast<Eigen::Index>(i)) * std::conj(x(static_cast<Eigen::Index>(j)));
      if (a == cplx{}) continue;
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
          h += a * r(i, j, k, l) * x(static_cast<Eigen::Index>(k)) * std::conj(x(static_cast<Eigen::Index>(l)));
    }
  return mp.alpha * ricxx.real() / norm2 + mp.beta * h.real() / (norm2 * norm2);
}

/// c read off the diagonal identity at index 1: β R_{1 1̄ 1 1̄} + α R_{1 1̄}.
inline double fitted_constant(const CurvatureTensor& r, const RicciMatrix& ric, const MixedParams& mp) {
  return mp.beta * r(0, 0, 0, 0).real() + mp.alpha * ric(0, 0).real();
}

/// Entrywise defect of the constant-mixed-curvature identity
///   4β R̂_{i j̄ k l̄} + α(R_{i j̄}δ_kl + R_{k j̄}δ_il + R_{i l̄}δ_kj + R_{k l̄}δ_ij)
///     − 2c(δ_ij δ_kl + δ_il δ_kj).
inline Tensor4 mixed_identity_defect(const CurvatureTensor& r, const RicciMatrix& ric, const MixedParams& mp,
                                     double c) {
  const std::size_t n = r.dim();
  const Tensor4 rh = symmetrize(r);
  auto d = [](std::size_t a, std::size_t b) { return a == b ? 1.0 : 0.0; };
  auto R = [&ric](std::size_t a, std::size_t b) {
    return ric(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  };
  Tensor4 e(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
          e(i, j, k, l) = 4.0 * mp.beta * rh(i, j, k, l) +
                          mp.alpha * (R(i, j) * d(k, l) + R(k, j) * d(i, l) + R(i, l) * d(k, j) + R(k, l) * d(i, j)) -
                          2.0 * c * (d(i, j) * d(k, l) + d(i, l) * d(k, j));
  return e;
}

struct ConstantMixedResult {
  bool is_constant = false;
  double c = 0.0;
  double residual = 0.0;
  double sampled_spread = 0.0;  // max − min of mixed_value over the sample set
};

/// Unit vectors used for the sampled cross-check: 200 seeded random
/// directions, then every e_i and (e_i ± e_k)/√2, (e_i ± √-1 e_k)/√2.
inline std::vector<Eigen::VectorXcd> mixed_sample_vectors(std::size_t n, std::uint64_t seed,
                                                          std::size_t random_count = 200) {
  const auto N = static_cast<Eigen::Index>(n);
  std::vector<Eigen::VectorXcd> out;
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  for (std::size_t t = 0; t < random_count; ++t) {
    Eigen::VectorXcd x(N);
    for (Eigen::Index a = 0; a < N; ++a) {
      const double re = g(gen);
      const double im = g(gen);
      x(a) = cplx(re, im);
    }
    out.push_back(x.normalized());
  }
  const double s = 1.0 / std::sqrt(2.0);
  for (Eigen::Index i = 0; i < N; ++i) out.push_back(Eigen::VectorXcd::Unit(N, i));
  for (Eigen::Index i = 0; i < N; ++i)
    for (Eigen::Index k = i + 1; k < N; ++k)
      for (cplx ph : {cplx(1, 0), cplx(-1, 0), cplx(0, 1), cplx(0, -1)}) {
        Eigen::VectorXcd x = Eigen::VectorXcd::Zero(N);
        x(i) = s;
        x(k) = ph * s;
        out.push_back(x);
      }
  return out;
}

/// Decides constancy of 𝒞_{α,β} from the full identity (the referee) and
/// cross-checks against sampled values. For unit X,
/// 𝒞(X) − c = ¼ Σ E_{ijkl} X_i X̄_j X_k X̄_l, so residual ≤ tol bounds the
/// spread by ½n²·tol; the converse holds only up to a conditioning constant.
/// Clear-cut disagreements throw InternalError.
inline ConstantMixedResult constant_mixed_test(const CurvatureTensor& r, const MixedParams& mp, double tol,
                                               std::uint64_t seed = 0x5eed) {
  if (mp.alpha == 0.0 && mp.beta == 0.0) throw InputError("(alpha, beta) must not both be zero");
  const RicciMatrix ric = first_ricci(r);
  ConstantMixedResult out;
  out.c = fitted_constant(r, ric, mp);
  out.residual = mixed_identity_defect(r, ric, mp, out.c).max_abs();
  out.is_constant = out.residual <= tol;

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& x : mixed_sample_vectors(r.dim(), seed)) {
    const double v = mixed_value(r, ric, mp, x);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  out.sampled_spread = hi - lo;

  const double n2 = static_cast<double>(r.dim() * r.dim());
  const double spread_cap = std::max(10.0, 0.5 * n2) * tol;
  if (out.is_constant && out.sampled_spread > spread_cap)
    throw InternalError("constant by the tensor identity but sampled spread is " + std::to_string(out.sampled_spread));
  if (!out.is_constant && out.sampled_spread <= 10.0 * tol && out.residual > 1e3 * tol)
    throw InternalError("nonconstant by the tensor identity but every sample agrees to " +
                        std::to_string(out.sampled_spread));
  return out;
}

inline ConstantMixedResult constant_mixed_test(const HermitianLieAlgebra& alg, const MixedParams& mp, double tol,
                                               std::uint64_t seed = 0x5eed) {
  return constant_mixed_test(chern_curvature(alg), mp, tol, seed);
}

struct StreetsTian {
  Eigen::MatrixXcd B;  // B_{i j̄} = Σ_{k,l} T^j_{kl} conj(T^i_{kl})
  int rank = 0;
};

inline StreetsTian streets_tian(const TorsionTensor& t, double tol = kDefaultTol) {
  const std::size_t n = t.dim();
  const auto N = static_cast<Eigen::Index>(n);
  StreetsTian st{Eigen::MatrixXcd::Zero(N, N), 0};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx s{};
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) s += t(j, k, l) * std::conj(t(i, k, l));
      st.B(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s;
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(st.B, Eigen::EigenvaluesOnly);
  for (Eigen::Index a = 0; a < N; ++a)
    if (eig.eigenvalues()(a) > tol) ++st.rank;
  return st;
}

}  // namespace hermlie
