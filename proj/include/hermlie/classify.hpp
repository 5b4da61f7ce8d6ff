#pragma once

#include <vector>

#include "hermlie/real_presentation.hpp"

namespace hermlie {

struct ClassificationFlags {
  bool is_nilpotent = false;
  bool is_solvable = false;
  bool commutator_J_invariant = false;
  bool commutator_plus_J_nilpotent = false;
  bool is_unimodular = false;
};

namespace detail {

// Orthonormal basis (columns) of the column span of m. Singular values count
// when they exceed tol·max(σ_max, 1); the floor of 1 keeps rounding noise in
// an otherwise zero matrix from being promoted to rank one.
inline Eigen::MatrixXd span_basis(const Eigen::MatrixXd& m, double tol) {
  if (m.cols() == 0) return Eigen::MatrixXd(m.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  const double cut = tol * std::max(s.size() > 0 ? s(0) : 0.0, 1.0);
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > cut) ++r;
  return svd.matrixU().leftCols(r);
}

inline Eigen::MatrixXd bracket_span(const RealPresentation& rp, const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                    double tol) {
  Eigen::MatrixXd cols(static_cast<Eigen::Index>(rp.dim), a.cols() * b.cols());
  Eigen::Index q = 0;
  for (Eigen::Index p = 0; p < a.cols(); ++p)
    for (Eigen::Index r = 0; r < b.cols(); ++r)
      cols.col(q++) = rp.bracket_of(Eigen::VectorXd(a.col(p)), Eigen::VectorXd(b.col(r)));
  return span_basis(cols, tol);
}

// Lower central series of the subalgebra spanned by h: h, [h,h], [h,[h,h]], ...
inline bool subalgebra_nilpotent(const RealPresentation& rp, const Eigen::MatrixXd& h, double tol) {
  Eigen::MatrixXd cur = h;
  for (std::size_t step = 0; step <= rp.dim + 1; ++step) {
    if (cur.cols() == 0) return true;
    Eigen::MatrixXd next = bracket_span(rp, h, cur, tol);
    if (next.cols() >= cur.cols()) return false;
    cur = next;
  }
  return cur.cols() == 0;
}

inline bool subalgebra_solvable(const RealPresentation& rp, const Eigen::MatrixXd& h, double tol) {
  Eigen::MatrixXd cur = h;
  for (std::size_t step = 0; step <= rp.dim + 1; ++step) {
    if (cur.cols() == 0) return true;
    Eigen::MatrixXd next = bracket_span(rp, cur, cur, tol);
    if (next.cols() >= cur.cols()) return false;
    cur = next;
  }
  return cur.cols() == 0;
}

}  // namespace detail

inline ClassificationFlags classify(const HermitianLieAlgebra& alg, double tol = kDefaultTol) {
  const RealPresentation rp = to_real_presentation(alg);
  const auto d = static_cast<Eigen::Index>(rp.dim);
  const Eigen::MatrixXd full = Eigen::MatrixXd::Identity(d, d);
  ClassificationFlags f;
  f.is_nilpotent = detail::subalgebra_nilpotent(rp, full, tol);
  f.is_solvable = detail::subalgebra_solvable(rp, full, tol);

  const Eigen::MatrixXd comm = detail::bracket_span(rp, full, full, tol);
  const Eigen::MatrixXd jc = rp.J * comm;
  const Eigen::MatrixXd outside = jc - comm * (comm.transpose() * jc);
  f.commutator_J_invariant = comm.cols() == 0 || outside.cwiseAbs().maxCoeff() <= tol;

  Eigen::MatrixXd both(d, 2 * comm.cols());
  both << comm, jc;
  const Eigen::MatrixXd h = detail::span_basis(both, tol);
  f.commutator_plus_J_nilpotent = detail::subalgebra_nilpotent(rp, h, tol);
  f.is_unimodular = unimodularity_defect(alg) <= tol;
  return f;
}

}  // namespace hermlie
