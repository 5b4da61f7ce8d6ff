#pragma once

#include <string>

#include "hermlie/algebra.hpp"
#include "hermlie/curvature.hpp"
#include "hermlie/sampling.hpp"

namespace hermlie {

// Family matrices carry the labels 2..n of the formulas below, stored 0-based: v(i-2),
// A(i-2, j-2), and so on.

struct AlmostAbelianParams {
  std::size_t n = 2;
  double lambda = 0.0;
  Eigen::VectorXcd v;
  Eigen::MatrixXcd A;

  static AlmostAbelianParams zero(std::size_t n) {
    const auto m = static_cast<Eigen::Index>(n - 1);
    return {n, 0.0, Eigen::VectorXcd::Zero(m), Eigen::MatrixXcd::Zero(m, m)};
  }

  void check() const {
    const auto m = static_cast<Eigen::Index>(n) - 1;
    if (n < 2) throw InputError("almost-abelian family needs n >= 2");
    if (v.size() != m || A.rows() != m || A.cols() != m) throw InputError("almost-abelian v must be (n-1), A (n-1)x(n-1)");
    if (!std::isfinite(lambda) || !v.allFinite() || !A.allFinite()) throw InputError("almost-abelian parameters must be finite");
  }
};

/// D^1_{11} = λ, D^1_{i1} = v_i, D^j_{i1} = A_ij, C^j_{1i} = −conj(A_ji).
inline HermitianLieAlgebra almost_abelian_build(const AlmostAbelianParams& p) {
  p.check();
  const std::size_t n = p.n;
  Tensor3 c(n), d(n);
  d(0, 0, 0) = p.lambda;
  for (std::size_t i = 1; i < n; ++i) {
    const auto I = static_cast<Eigen::Index>(i - 1);
    d(0, i, 0) = p.v(I);
    for (std::size_t j = 1; j < n; ++j) {
      const auto J = static_cast<Eigen::Index>(j - 1);
      d(j, i, 0) = p.A(I, J);
      c(j, 0, i) = -std::conj(p.A(J, I));
      c(j, i, 0) = std::conj(p.A(J, I));
    }
  }
  return HermitianLieAlgebra::make(std::move(c), std::move(d), FrameKind::AdmissibleAlmostAbelian);
}

/// T^1_{1i} = v_i and T^j_{1i} = A_ij + conj(A_ji), with antisymmetric partners.
inline TorsionTensor almost_abelian_torsion(const AlmostAbelianParams& p) {
  p.check();
  Tensor3 t(p.n);
  for (std::size_t i = 1; i < p.n; ++i) {
    const auto I = static_cast<Eigen::Index>(i - 1);
    t(0, 0, i) = p.v(I);
    t(0, i, 0) = -p.v(I);
    for (std::size_t j = 1; j < p.n; ++j) {
      const auto J = static_cast<Eigen::Index>(j - 1);
      t(j, 0, i) = p.A(I, J) + std::conj(p.A(J, I));
      t(j, i, 0) = -t(j, 0, i);
    }
  }
  return t;
}

/// Closed-form Chern curvature; every component outside R_{1 1̄ · ·̄} vanishes.
///   R_{1 1̄ 1 1̄} = −2λ² − |v|²,  R_{1 1̄ i 1̄} = −Σ_k conj(A_ki) v_k,
///   R_{1 1̄ i j̄} = v_i conj(v_j) + [A,A*]_ij − λ(A_ij + conj(A_ji)).
inline CurvatureTensor almost_abelian_curvature(const AlmostAbelianParams& p) {
  p.check();
  Tensor4 r(p.n);
  const Eigen::MatrixXcd comm = p.A * p.A.adjoint() - p.A.adjoint() * p.A;
  r(0, 0, 0, 0) = -2.0 * p.lambda * p.lambda - p.v.squaredNorm();
  for (std::size_t i = 1; i < p.n; ++i) {
    const auto I = static_cast<Eigen::Index>(i - 1);
    cplx s{};
    for (Eigen::Index k = 0; k < p.v.size(); ++k) s -= std::conj(p.A(k, I)) * p.v(k);
    r(0, 0, i, 0) = s;
    r(0, 0, 0, i) = std::conj(s);
    for (std::size_t j = 1; j < p.n; ++j) {
      const auto J = static_cast<Eigen::Index>(j - 1);
      r(0, 0, i, j) = p.v(I) * std::conj(p.v(J)) + comm(I, J) - p.lambda * (p.A(I, J) + std::conj(p.A(J, I)));
    }
  }
  return r;
}

/// R_{1 1̄ k k̄} = |v_k|² − 2λ Re A_kk + Σ_r (|A_kr|² − |A_rk|²), k ≥ 2.
inline Eigen::VectorXd almost_abelian_pair_diagonal(const AlmostAbelianParams& p) {
  p.check();
  const Eigen::Index m = p.v.size();
  Eigen::VectorXd out(m);
  for (Eigen::Index k = 0; k < m; ++k)
    out(k) = std::norm(p.v(k)) - 2.0 * p.lambda * p.A(k, k).real() + p.A.row(k).squaredNorm() -
             p.A.col(k).squaredNorm();
  return out;
}

struct FamilyFlags {
  bool unimodular = false;
  bool chern_flat = false;
};

/// The flatness conditions λ = 0, v = 0, [A,A*] = 0 are measured entrywise
/// in the units of curvature: 2λ² + |v|² and vv* as they enter R, plus the
/// products [A,A*], λ(A+A*) and A*v that R carries linearly. Each term
/// vanishes on the flat locus and is within a small factor of an entry of R;
/// on the pure sub-loci (only one group nonzero) it equals one.
inline FamilyFlags almost_abelian_flags(const AlmostAbelianParams& p, double tol = kDefaultTol) {
  p.check();
  auto inf = [](const auto& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); };
  const double r1111 = 2.0 * p.lambda * p.lambda + p.v.squaredNorm();
  const double comm = inf(p.A * p.A.adjoint() - p.A.adjoint() * p.A);
  const double mixed = std::abs(p.lambda) * inf(p.A + p.A.adjoint());
  const double av = inf(p.A.adjoint() * p.v);
  FamilyFlags f;
  f.unimodular = std::abs(p.lambda + 2.0 * p.A.trace().real()) <= tol;
  f.chern_flat = std::max({r1111, inf(p.v * p.v.adjoint()), comm, mixed, av}) <= tol;
  return f;
}

/// Shifts Re A_11 so that λ + 2 Re tr A = 0.
inline void make_unimodular(AlmostAbelianParams& p) {
  const double defect = p.lambda + 2.0 * p.A.trace().real();
  p.A(0, 0) -= 0.5 * defect;
}

inline AlmostAbelianParams random_almost_abelian(std::size_t n, Rng& rng, bool unimodular, double scale = 1.0) {
  const auto m = static_cast<Eigen::Index>(n - 1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  AlmostAbelianParams p;
  p.n = n;
  p.lambda = scale * u(rng);
  p.v = scale * unit_disk_vector(rng, m);
  p.A = scale * unit_disk_matrix(rng, m);
  if (unimodular) make_unimodular(p);
  return p;
}

struct Codim2Params {
  std::size_t n = 2;
  double lambda = 0.0;
  Eigen::VectorXcd v;
  Eigen::MatrixXcd X, Y, Z;

  static Codim2Params zero(std::size_t n) {
    const auto m = static_cast<Eigen::Index>(n - 1);
    const Eigen::MatrixXcd o = Eigen::MatrixXcd::Zero(m, m);
    return {n, 0.0, Eigen::VectorXcd::Zero(m), o, o, o};
  }

  void check() const {
    const auto m = static_cast<Eigen::Index>(n) - 1;
    if (n < 2) throw InputError("codim-2 family needs n >= 2");
    for (const auto* M : {&X, &Y, &Z})
      if (M->rows() != m || M->cols() != m) throw InputError("codim-2 X, Y, Z must be (n-1)x(n-1)");
    if (v.size() != m) throw InputError("codim-2 v must have n-1 entries");
    if (!std::isfinite(lambda) || !v.allFinite() || !X.allFinite() || !Y.allFinite() || !Z.allFinite())
      throw InputError("codim-2 parameters must be finite");
  }
};

/// The two matrix equations d²φ = 0 imposes on the family, plus the
/// unimodularity trace.
struct Codim2Constraints {
  Eigen::MatrixXcd structure;  // λ(X*+Y) + [X*,Y] − Z Z̄
  Eigen::MatrixXcd bracket;    // λZ − (Z Xᵀ + Y Z)
  cplx trace;                  // λ − tr X + tr Y
};

inline Codim2Constraints codim2_constraints(const Codim2Params& p) {
  const Eigen::MatrixXcd xs = p.X.adjoint();
  return {p.lambda * (xs + p.Y) + xs * p.Y - p.Y * xs - p.Z * p.Z.conjugate(),
          p.lambda * p.Z - (p.Z * p.X.transpose() + p.Y * p.Z), p.lambda - p.X.trace() + p.Y.trace()};
}

inline HermitianLieAlgebra codim2_build(const Codim2Params& p, double tol = kDefaultTol) {
  p.check();
  if (p.lambda < 0.0) throw InputError("codim-2 lambda must be >= 0 (rotate e_1)");
  const auto k = codim2_constraints(p);
  const double r1 = k.structure.cwiseAbs().maxCoeff();
  const double r2 = k.bracket.cwiseAbs().maxCoeff();
  if (r1 > tol || r2 > tol)
    throw InputError("codim-2 parameters violate the Jacobi constraints: structure residual " + std::to_string(r1) +
                     ", bracket residual " + std::to_string(r2));
  const std::size_t n = p.n;
  Tensor3 c(n), d(n);
  d(0, 0, 0) = p.lambda;
  for (std::size_t i = 1; i < n; ++i) {
    const auto I = static_cast<Eigen::Index>(i - 1);
    d(0, i, 0) = p.v(I);
    for (std::size_t j = 1; j < n; ++j) {
      const auto J = static_cast<Eigen::Index>(j - 1);
      c(j, 0, i) = p.X(I, J);
      c(j, i, 0) = -p.X(I, J);
      d(j, i, 0) = p.Y(I, J);
      d(0, i, j) = p.Z(I, J);
    }
  }
  return HermitianLieAlgebra::make(std::move(c), std::move(d), FrameKind::AdmissibleCodim2, tol);
}

/// T^1_{1i} = v_i, T^1_{ij} = Z_ji − Z_ij, T^j_{1i} = Y_ij − X_ij.
inline TorsionTensor codim2_torsion(const Codim2Params& p) {
  p.check();
  Tensor3 t(p.n);
  for (std::size_t i = 1; i < p.n; ++i) {
    const auto I = static_cast<Eigen::Index>(i - 1);
    t(0, 0, i) = p.v(I);
    t(0, i, 0) = -p.v(I);
    for (std::size_t j = 1; j < p.n; ++j) {
      const auto J = static_cast<Eigen::Index>(j - 1);
      t(0, i, j) = p.Z(J, I) - p.Z(I, J);
      t(j, 0, i) = p.Y(I, J) - p.X(I, J);
      t(j, i, 0) = -t(j, 0, i);
    }
  }
  return t;
}

/// The curvature values the family admits in closed form.
struct Codim2Curvature {
  double R1111 = 0.0;          // −2λ² − |v|²
  Eigen::VectorXd Riiii;       // |Z_ii|²
  Eigen::MatrixXd Rhat_iikk;   // ¼|Z_ik + Z_ki|², off-diagonal entries meaningful
  Eigen::MatrixXcd Rhat_11ij;  // ¼(vv* + [Y,Y*] − λ(Y*+Y) − ZZ̄ − ZᵀZ* − ZᵀZ̄)
  double Rhat_11_trace = 0.0;  // ¼(|v|² − λ tr(Y+Y*) − 2 tr(ZZ̄) − |Z|²)
  double Ric11 = 0.0;          // −2λ² − λ tr(Y+Y*); R_{i j̄} = 0 for i, j ≥ 2
};

inline Codim2Curvature codim2_curvature(const Codim2Params& p) {
  p.check();
  const Eigen::Index m = p.v.size();
  Codim2Curvature out;
  const double lam = p.lambda;
  const Eigen::MatrixXcd ys = p.Y.adjoint();
  out.R1111 = -2.0 * lam * lam - p.v.squaredNorm();
  out.Riiii.resize(m);
  out.Rhat_iikk = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    out.Riiii(i) = std::norm(p.Z(i, i));
    for (Eigen::Index k = 0; k < m; ++k)
      if (i != k) out.Rhat_iikk(i, k) = 0.25 * std::norm(p.Z(i, k) + p.Z(k, i));
  }
  out.Rhat_11ij = 0.25 * (p.v * p.v.adjoint() + p.Y * ys - ys * p.Y - lam * (ys + p.Y) - p.Z * p.Z.conjugate() -
                          p.Z.transpose() * p.Z.adjoint() - p.Z.transpose() * p.Z.conjugate());
  const double trYY = (p.Y + ys).trace().real();
  out.Rhat_11_trace =
      0.25 * (p.v.squaredNorm() - lam * trYY - 2.0 * (p.Z * p.Z.conjugate()).trace().real() - p.Z.squaredNorm());
  out.Ric11 = -2.0 * lam * lam - lam * trYY;
  return out;
}

/// Flatness conditions λ = v = Z = 0, [Y,Y*] = [Y,X*] = 0 on the curvature
/// scale, as for the almost-abelian family: R_{1 1̄ i 1̄} carries Y*v
/// linearly, and the v·Z cross terms are bounded by |v|² + |Z|².
inline FamilyFlags codim2_flags(const Codim2Params& p, double tol = kDefaultTol) {
  p.check();
  auto inf = [](const auto& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); };
  const Eigen::MatrixXcd ys = p.Y.adjoint();
  const double r1111 = 2.0 * p.lambda * p.lambda + p.v.squaredNorm();
  const double yy = inf(p.Y * ys - ys * p.Y);
  const double yx = inf(p.Y * p.X.adjoint() - p.X.adjoint() * p.Y);
  const double mixed = std::abs(p.lambda) * inf(p.Y + ys);
  const double yv = inf(ys * p.v);
  FamilyFlags f;
  f.unimodular = std::abs(codim2_constraints(p).trace) <= tol;
  f.chern_flat = std::max({r1111, inf(p.v * p.v.adjoint()), inf(p.Z) * inf(p.Z), yy, yx, mixed, yv}) <= tol;
  return f;
}

struct ProjectionOutcome {
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;
};

namespace detail {

inline Eigen::VectorXd pack_xyz(const Codim2Params& p) {
  const Eigen::Index s = p.X.size();
  Eigen::VectorXd x(6 * s);
  Eigen::Index q = 0;
  for (const auto* M : {&p.X, &p.Y, &p.Z}) {
    for (Eigen::Index a = 0; a < s; ++a) x(q++) = M->data()[a].real();
    for (Eigen::Index a = 0; a < s; ++a) x(q++) = M->data()[a].imag();
  }
  return x;
}

inline void unpack_xyz(const Eigen::VectorXd& x, Codim2Params& p) {
  const Eigen::Index s = p.X.size();
  Eigen::Index q = 0;
  for (auto* M : {&p.X, &p.Y, &p.Z}) {
    for (Eigen::Index a = 0; a < s; ++a) M->data()[a].real(x(q++));
    for (Eigen::Index a = 0; a < s; ++a) M->data()[a].imag(x(q++));
  }
}

inline Eigen::VectorXd constraint_vector(const Codim2Params& p, bool unimodular) {
  const auto k = codim2_constraints(p);
  const Eigen::Index s = k.structure.size();
  Eigen::VectorXd f(4 * s + (unimodular ? 2 : 0));
  Eigen::Index q = 0;
  for (const auto* M : {&k.structure, &k.bracket}) {
    for (Eigen::Index a = 0; a < s; ++a) f(q++) = M->data()[a].real();
    for (Eigen::Index a = 0; a < s; ++a) f(q++) = M->data()[a].imag();
  }
  if (unimodular) {
    f(q++) = k.trace.real();
    f(q++) = k.trace.imag();
  }
  return f;
}

}  // namespace detail

/// Gauss–Newton projection of (X, Y, Z) onto the constraint set with λ and v
/// held fixed: minimum-norm least-squares steps on a central-difference
/// Jacobian until every constraint is below `target`.
inline ProjectionOutcome codim2_project(Codim2Params& p, bool unimodular, int max_iter = 100,
                                        double target = 1e-14) {
  p.check();
  ProjectionOutcome out;
  Eigen::VectorXd x = detail::pack_xyz(p);
  const double h = 1e-7;
  for (out.iterations = 0; out.iterations < max_iter; ++out.iterations) {
    detail::unpack_xyz(x, p);
    const Eigen::VectorXd f = detail::constraint_vector(p, unimodular);
    out.residual = f.cwiseAbs().maxCoeff();
    if (out.residual <= target) {
      out.converged = true;
      return out;
    }
    Eigen::MatrixXd jac(f.size(), x.size());
    for (Eigen::Index q = 0; q < x.size(); ++q) {
      Eigen::VectorXd xp = x, xm = x;
      xp(q) += h;
      xm(q) -= h;
      detail::unpack_xyz(xp, p);
      const Eigen::VectorXd fp = detail::constraint_vector(p, unimodular);
      detail::unpack_xyz(xm, p);
      const Eigen::VectorXd fm = detail::constraint_vector(p, unimodular);
      jac.col(q) = (fp - fm) / (2.0 * h);
    }
    x -= jac.completeOrthogonalDecomposition().solve(f);
  }
  detail::unpack_xyz(x, p);
  out.residual = detail::constraint_vector(p, unimodular).cwiseAbs().maxCoeff();
  out.converged = out.residual <= target;
  return out;
}

/// Random admissible codim-2 parameters: λ ∈ [0, scale], the rest drawn
/// from the scaled unit disk, then projected onto the constraint set.
/// Draws whose projection stalls are discarded and redrawn.
inline Codim2Params random_codim2(std::size_t n, Rng& rng, bool unimodular, double scale = 1.0) {
  const auto m = static_cast<Eigen::Index>(n - 1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int attempt = 0; attempt < 100; ++attempt) {
    Codim2Params p;
    p.n = n;
    p.lambda = scale * u(rng);
    p.v = scale * unit_disk_vector(rng, m);
    p.X = scale * unit_disk_matrix(rng, m);
    p.Y = scale * unit_disk_matrix(rng, m);
    p.Z = scale * unit_disk_matrix(rng, m);
    const double target = 1e-14 * std::max(1.0, scale * scale);
    if (codim2_project(p, unimodular, 100, target).converged) return p;
  }
  throw InternalError("codim-2 sampler failed to reach the constraint set in 100 attempts");
}

/// R_{1 1̄ 1 2̄}, R_{1 2̄ 1 1̄}, R_{1 2̄ 2 2̄} for n = 2 from the generic engine,
/// next to the closed values −vZ̄, −vZ̄, vZ̄ that hold when Y = 0 (the
/// branch of YZ = 0 on which they are used).
struct Codim2OffDiagonal {
  cplx r1112, r1211, r1222;
  cplx expected_1112, expected_1211, expected_1222;
  bool closed_form_applies = false;
  double defect = 0.0;
};

inline Codim2OffDiagonal codim2_offdiag_entry(const Codim2Params& p, double tol = kDefaultTol) {
  if (p.n != 2) throw InputError("codim2_offdiag_entry requires n = 2");
  const Tensor4 r = chern_curvature(codim2_build(p, tol));
  Codim2OffDiagonal o{};
  o.r1112 = r(0, 0, 0, 1);
  o.r1211 = r(0, 1, 0, 0);
  o.r1222 = r(0, 1, 1, 1);
  const cplx vz = p.v(0) * std::conj(p.Z(0, 0));
  o.expected_1112 = -vz;
  o.expected_1211 = -vz;
  o.expected_1222 = vz;
  o.closed_form_applies = std::abs(p.Y(0, 0)) <= tol;
  o.defect = std::max({std::abs(o.r1112 - o.expected_1112), std::abs(o.r1211 - o.expected_1211),
                       std::abs(o.r1222 - o.expected_1222)});
  return o;
}

}  // namespace hermlie
