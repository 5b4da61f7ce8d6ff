#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "hermlie/algebra.hpp"

namespace hermlie {

/// A real Lie algebra of dimension 2n with complex structure J and a
/// J-compatible inner product, in an arbitrary real basis x_0..x_{2n-1}.
/// [x_a, x_b] = Σ_c f^c_{ab} x_c; J and gram act on coordinate columns.
struct RealPresentation {
  std::size_t dim = 0;
  std::vector<double> bracket;  // f(c, a, b) at (c * dim + a) * dim + b
  Eigen::MatrixXd J;
  Eigen::MatrixXd gram;

  explicit RealPresentation(std::size_t d = 0)
      : dim(d), bracket(d * d * d, 0.0), J(Eigen::MatrixXd::Zero(d, d)), gram(Eigen::MatrixXd::Identity(d, d)) {}

  double& f(std::size_t c, std::size_t a, std::size_t b) { return bracket[(c * dim + a) * dim + b]; }
  double f(std::size_t c, std::size_t a, std::size_t b) const { return bracket[(c * dim + a) * dim + b]; }

  Eigen::VectorXd bracket_of(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
    for (std::size_t c = 0; c < dim; ++c) {
      double s = 0.0;
      for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = 0; b < dim; ++b) s += f(c, a, b) * u(a) * v(b);
      w(static_cast<Eigen::Index>(c)) = s;
    }
    return w;
  }

  Eigen::VectorXcd bracket_of(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) const {
    Eigen::VectorXcd w = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    for (std::size_t c = 0; c < dim; ++c) {
      cplx s{};
      for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = 0; b < dim; ++b) s += f(c, a, b) * u(a) * v(b);
      w(static_cast<Eigen::Index>(c)) = s;
    }
    return w;
  }
};

namespace detail {

// Complex structure constants of g^C in the basis (e_1..e_n, ē_1..ē_n).
inline std::vector<cplx> complexified_brackets(const HermitianLieAlgebra& alg) {
  const std::size_t n = alg.n();
  const std::size_t N = 2 * n;
  std::vector<cplx> k(N * N * N);
  auto K = [&](std::size_t c, std::size_t a, std::size_t b) -> cplx& { return k[(c * N + a) * N + b]; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t m = 0; m < n; ++m) {
        K(m, i, j) = alg.C(m, i, j);
        K(n + m, n + i, n + j) = std::conj(alg.C(m, i, j));
        // [e_i, ē_j] = Σ_m conj(D^i_{mj}) e_m − D^j_{mi} ē_m
        K(m, i, n + j) = std::conj(alg.D(i, m, j));
        K(n + m, i, n + j) = -alg.D(j, m, i);
        K(m, n + j, i) = -std::conj(alg.D(i, m, j));
        K(n + m, n + j, i) = alg.D(j, m, i);
      }
  return k;
}

}  // namespace detail

/// Real form with basis x_i = (e_i+ē_i)/√2, y_i = √-1(e_i−ē_i)/√2
/// (x's first, then y's); gram is the identity and J x_i = y_i.
inline RealPresentation to_real_presentation(const HermitianLieAlgebra& alg) {
  const std::size_t n = alg.n();
  const std::size_t N = 2 * n;
  const auto k = detail::complexified_brackets(alg);
  const double s = 1.0 / std::sqrt(2.0);
  const cplx I{0.0, 1.0};
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(N, N);  // columns: real basis in E-coordinates
  for (std::size_t i = 0; i < n; ++i) {
    M(i, i) = s;
    M(n + i, i) = s;
    M(i, n + i) = I * s;
    M(n + i, n + i) = -I * s;
  }
  const Eigen::MatrixXcd Minv = M.inverse();
  RealPresentation rp(N);
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) {
      Eigen::VectorXcd w = Eigen::VectorXcd::Zero(N);
      for (std::size_t p = 0; p < N; ++p)
        for (std::size_t q = 0; q < N; ++q) {
          const cplx mpq = M(p, a) * M(q, b);
          if (mpq == cplx{}) continue;
          for (std::size_t c = 0; c < N; ++c) w(c) += mpq * k[(c * N + p) * N + q];
        }
      const Eigen::VectorXcd r = Minv * w;
      for (std::size_t c = 0; c < N; ++c) rp.f(c, a, b) = r(c).real();
    }
  for (std::size_t i = 0; i < n; ++i) {
    rp.J(n + i, i) = 1.0;
    rp.J(i, n + i) = -1.0;
  }
  return rp;
}

/// Max |Jacobi| of a real bracket over basis triples.
inline double real_jacobi_residual(const RealPresentation& rp) {
  const std::size_t d = rp.dim;
  double worst = 0.0;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t c = 0; c < d; ++c)
        for (std::size_t l = 0; l < d; ++l) {
          double s = 0.0;
          for (std::size_t r = 0; r < d; ++r)
            s += rp.f(r, a, b) * rp.f(l, r, c) + rp.f(r, b, c) * rp.f(l, r, a) + rp.f(r, c, a) * rp.f(l, r, b);
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

/// Max over basis pairs of |[x,y] − [Jx,Jy] + J[Jx,y] + J[x,Jy]|.
inline double integrability_residual(const RealPresentation& rp) {
  const auto d = static_cast<Eigen::Index>(rp.dim);
  double worst = 0.0;
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b) {
      const Eigen::VectorXd x = Eigen::VectorXd::Unit(d, a);
      const Eigen::VectorXd y = Eigen::VectorXd::Unit(d, b);
      const Eigen::VectorXd jx = rp.J * x;
      const Eigen::VectorXd jy = rp.J * y;
      const Eigen::VectorXd t = rp.bracket_of(x, y) - rp.bracket_of(jx, jy) + rp.J * rp.bracket_of(jx, y) +
                                rp.J * rp.bracket_of(x, jy);
      worst = std::max(worst, t.cwiseAbs().maxCoeff());
    }
  return worst;
}

/// Builds a unitary frame of the +i-eigenspace of J by Gram–Schmidt on
/// x_a − √-1 J x_a in input order (one re-orthogonalization pass each),
/// then reads off C and D from the complexified bracket.
inline HermitianLieAlgebra from_real_presentation(const RealPresentation& rp, double tol = kDefaultTol) {
  const std::size_t d = rp.dim;
  if (d == 0 || d % 2 != 0) throw InputError("real dimension must be even and positive");
  if (rp.bracket.size() != d * d * d) throw InputError("bracket must be dim×dim×dim");
  const auto D = static_cast<Eigen::Index>(d);
  if (rp.J.rows() != D || rp.J.cols() != D || rp.gram.rows() != D || rp.gram.cols() != D)
    throw InputError("J and gram must be dim×dim");
  for (double v : rp.bracket)
    if (!std::isfinite(v)) throw InputError("bracket entries must be finite");
  if (!rp.J.allFinite() || !rp.gram.allFinite()) throw InputError("J and gram must be finite");

  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b)
        if (std::abs(rp.f(c, a, b) + rp.f(c, b, a)) > tol)
          throw InputError("bracket is not antisymmetric");
  if ((rp.J * rp.J + Eigen::MatrixXd::Identity(D, D)).cwiseAbs().maxCoeff() > tol)
    throw InputError("J^2 != -I");
  if ((rp.gram - rp.gram.transpose()).cwiseAbs().maxCoeff() > tol)
    throw InputError("gram is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(rp.gram);
  if (eig.eigenvalues().minCoeff() <= tol) throw InputError("gram is not positive definite");
  if ((rp.J.transpose() * rp.gram * rp.J - rp.gram).cwiseAbs().maxCoeff() > tol)
    throw InputError("metric is not J-compatible: gram(Jx,Jy) != gram(x,y)");
  if (real_jacobi_residual(rp) > tol) throw InputError("bracket violates the Jacobi identity");
  if (integrability_residual(rp) > tol) throw InputError("J is not integrable");

  const cplx I{0.0, 1.0};
  const Eigen::MatrixXcd G = rp.gram.cast<cplx>();
  auto h = [&G](const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) -> cplx {
    return (u.transpose() * G * v.conjugate())(0, 0);
  };
  const std::size_t n = d / 2;
  std::vector<Eigen::VectorXcd> frame;
  for (Eigen::Index a = 0; a < D && frame.size() < n; ++a) {
    const Eigen::VectorXd x = Eigen::VectorXd::Unit(D, a);
    Eigen::VectorXcd u = x.cast<cplx>() - I * (rp.J * x).cast<cplx>();
    const double before = std::sqrt(std::abs(h(u, u)));
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& e : frame) u -= h(u, e) * e;
    const double after = std::sqrt(std::abs(h(u, u)));
    if (after <= 1e-8 * before) continue;
    frame.push_back(u / after);
  }
  if (frame.size() != n) throw InputError("could not build a unitary frame of the +i eigenspace");

  Tensor3 C(n), Dt(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Eigen::VectorXcd ee = rp.bracket_of(frame[i], frame[j]);
      const Eigen::VectorXcd be = rp.bracket_of(Eigen::VectorXcd(frame[j].conjugate()), frame[i]);
      for (std::size_t k = 0; k < n; ++k) {
        C(k, i, j) = h(ee, frame[k]);
        // D^j_{ki} = φ̄_k([ē_j, e_i])
        Dt(j, k, i) = h(be, frame[k].conjugate());
      }
    }
  return HermitianLieAlgebra::make(std::move(C), std::move(Dt), FrameKind::GenericUnitary, tol);
}

}  // namespace hermlie
