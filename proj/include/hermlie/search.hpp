#pragma once

#include <future>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hermlie/families.hpp"

namespace hermlie {

enum class SearchFamily { AlmostAbelian, Codim2 };

inline std::string_view to_string(SearchFamily f) {
  return f == SearchFamily::AlmostAbelian ? "almost_abelian" : "codim2";
}

inline SearchFamily parse_search_family(std::string_view s) {
  if (s == "almost_abelian") return SearchFamily::AlmostAbelian;
  if (s == "codim2") return SearchFamily::Codim2;
  throw InputError("unknown family '" + std::string(s) + "' (expected almost_abelian or codim2)");
}

using FamilyPoint = std::variant<AlmostAbelianParams, Codim2Params>;

inline HermitianLieAlgebra build_family(const FamilyPoint& p, double tol = kDefaultTol) {
  if (const auto* aa = std::get_if<AlmostAbelianParams>(&p)) return almost_abelian_build(*aa);
  return codim2_build(std::get<Codim2Params>(p), tol);
}

/// Entries of the constant-mixed-curvature defect tensor, real and imaginary
/// parts interleaved, with c fitted at index 1 unless fixed.
inline Eigen::VectorXd deviation_residuals(const FamilyPoint& p, const MixedParams& mp,
                                           std::optional<double> fixed_c = std::nullopt) {
  const Tensor4 r = chern_curvature(build_family(p, 1e-6));
  const RicciMatrix ric = first_ricci(r);
  const double c = fixed_c ? *fixed_c : fitted_constant(r, ric, mp);
  const Tensor4 e = mixed_identity_defect(r, ric, mp, c);
  Eigen::VectorXd out(static_cast<Eigen::Index>(2 * e.data().size()));
  for (std::size_t q = 0; q < e.data().size(); ++q) {
    out(static_cast<Eigen::Index>(2 * q)) = e.data()[q].real();
    out(static_cast<Eigen::Index>(2 * q + 1)) = e.data()[q].imag();
  }
  return out;
}

/// Σ |defect|² over all index quadruples.
inline double deviation_objective(const FamilyPoint& p, const MixedParams& mp,
                                  std::optional<double> fixed_c = std::nullopt) {
  return deviation_residuals(p, mp, fixed_c).squaredNorm();
}

struct SearchProblem {
  SearchFamily family = SearchFamily::AlmostAbelian;
  std::size_t n = 2;
  MixedParams mp{0.0, 1.0};
  std::optional<double> fixed_c;
  std::uint64_t seed = 0;
  int restarts = 1;
  int max_iters = 200;
  bool unimodular = true;
  int threads = 1;
  std::optional<FamilyPoint> start;  // used for restart 0 when present
};

struct SearchResult {
  FamilyPoint best{AlmostAbelianParams::zero(2)};
  double residual = 0.0;        // deviation objective at `best`
  double max_residual = 0.0;    // entrywise max of the defect tensor
  double c = 0.0;
  int best_restart = 0;
  std::vector<std::pair<std::string, double>> flat_distances;
  std::vector<double> trace;            // best-so-far objective per iteration of the winning restart
  std::vector<double> restart_residuals;
};

namespace detail {

inline Eigen::VectorXd pack_point(const FamilyPoint& p) {
  std::vector<double> x;
  auto push_c = [&x](const auto& m) {
    for (Eigen::Index a = 0; a < m.size(); ++a) {
      x.push_back(m.data()[a].real());
      x.push_back(m.data()[a].imag());
    }
  };
  if (const auto* aa = std::get_if<AlmostAbelianParams>(&p)) {
    x.push_back(aa->lambda);
    push_c(aa->v);
    push_c(aa->A);
  } else {
    const auto& c2 = std::get<Codim2Params>(p);
    x.push_back(c2.lambda);
    push_c(c2.v);
    push_c(c2.X);
    push_c(c2.Y);
    push_c(c2.Z);
  }
  return Eigen::Map<Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
}

inline FamilyPoint unpack_point(const Eigen::VectorXd& x, const FamilyPoint& shape) {
  FamilyPoint out = shape;
  Eigen::Index q = 0;
  auto pull_c = [&x, &q](auto& m) {
    for (Eigen::Index a = 0; a < m.size(); ++a) {
      m.data()[a] = cplx(x(q), x(q + 1));
      q += 2;
    }
  };
  if (auto* aa = std::get_if<AlmostAbelianParams>(&out)) {
    aa->lambda = x(q++);
    pull_c(aa->v);
    pull_c(aa->A);
  } else {
    auto& c2 = std::get<Codim2Params>(out);
    c2.lambda = x(q++);
    pull_c(c2.v);
    pull_c(c2.X);
    pull_c(c2.Y);
    pull_c(c2.Z);
  }
  return out;
}

// Maps a raw parameter vector back onto the family's admissible set.
inline std::optional<FamilyPoint> project_point(FamilyPoint p, bool unimodular) {
  if (auto* aa = std::get_if<AlmostAbelianParams>(&p)) {
    if (unimodular) make_unimodular(*aa);
    return p;
  }
  auto& c2 = std::get<Codim2Params>(p);
  c2.lambda = std::abs(c2.lambda);
  if (!codim2_project(c2, unimodular, 60, 1e-14).converged) return std::nullopt;
  return p;
}

inline std::vector<std::pair<std::string, double>> flat_distances(const FamilyPoint& p) {
  if (const auto* aa = std::get_if<AlmostAbelianParams>(&p)) {
    return {{"lambda", std::abs(aa->lambda)},
            {"v", aa->v.norm()},
            {"comm_A_Astar", (aa->A * aa->A.adjoint() - aa->A.adjoint() * aa->A).norm()}};
  }
  const auto& c2 = std::get<Codim2Params>(p);
  const Eigen::MatrixXcd ys = c2.Y.adjoint();
  return {{"lambda", std::abs(c2.lambda)},
          {"v", c2.v.norm()},
          {"Z", c2.Z.norm()},
          {"comm_Y_Ystar", (c2.Y * ys - ys * c2.Y).norm()},
          {"comm_Y_Xstar", (c2.Y * c2.X.adjoint() - c2.X.adjoint() * c2.Y).norm()}};
}

struct RestartOutcome {
  FamilyPoint best;
  double objective = 0.0;
  std::vector<double> trace;
};

// Levenberg–Marquardt on the defect vector with a central-difference
// Jacobian; only strict decreases are accepted.
inline RestartOutcome run_restart(const SearchProblem& pr, FamilyPoint start) {
  auto eval = [&pr](const FamilyPoint& p) { return deviation_residuals(p, pr.mp, pr.fixed_c); };
  auto projected = project_point(start, pr.unimodular);
  if (!projected) projected = start;
  FamilyPoint cur = *projected;
  Eigen::VectorXd res = eval(cur);
  double obj = res.squaredNorm();
  RestartOutcome out{cur, obj, {obj}};
  double mu = 1e-3;
  for (int it = 0; it < pr.max_iters && obj > 1e-30; ++it) {
    const Eigen::VectorXd x = pack_point(cur);
    Eigen::MatrixXd jac(res.size(), x.size());
    for (Eigen::Index q = 0; q < x.size(); ++q) {
      const double h = 1e-6 * std::max(1.0, std::abs(x(q)));
      Eigen::VectorXd xp = x, xm = x;
      xp(q) += h;
      xm(q) -= h;
      const auto pp = project_point(unpack_point(xp, cur), pr.unimodular);
      const auto pm = project_point(unpack_point(xm, cur), pr.unimodular);
      if (!pp || !pm) {
        jac.col(q).setZero();
        continue;
      }
      jac.col(q) = (eval(*pp) - eval(*pm)) / (2.0 * h);
    }
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd g = jac.transpose() * res;
    bool accepted = false;
    while (mu < 1e12) {
      Eigen::MatrixXd a = jtj;
      a.diagonal() += mu * (jtj.diagonal().array() + 1.0).matrix();
      const Eigen::VectorXd step = a.ldlt().solve(-g);
      const auto trial = project_point(unpack_point(x + step, cur), pr.unimodular);
      if (trial) {
        const Eigen::VectorXd tres = eval(*trial);
        const double tobj = tres.squaredNorm();
        if (tobj < obj) {
          cur = *trial;
          res = tres;
          obj = tobj;
          mu = std::max(mu / 3.0, 1e-12);
          accepted = true;
          break;
        }
      }
      mu *= 4.0;
    }
    out.trace.push_back(obj);
    if (!accepted) break;
  }
  out.best = cur;
  out.objective = obj;
  return out;
}

inline FamilyPoint random_start(const SearchProblem& pr, Rng& rng) {
  if (pr.family == SearchFamily::AlmostAbelian) return random_almost_abelian(pr.n, rng, pr.unimodular);
  return random_codim2(pr.n, rng, pr.unimodular);
}

}  // namespace detail

/// Multi-restart minimization of the deviation objective. Restart k draws
/// its start from its own generator seeded by (seed, k); the winner is the
/// lowest objective, ties going to the lower restart index. The result is
/// identical for any thread count.
inline SearchResult minimize(const SearchProblem& pr) {
  if (pr.restarts < 1 || pr.max_iters < 1) throw InputError("restarts and max_iters must be >= 1");
  if (pr.n < 2) throw InputError("family dimension n must be >= 2");

  auto job = [&pr](int k) {
    Rng rng = make_rng(pr.seed, static_cast<std::uint64_t>(k));
    FamilyPoint start = (k == 0 && pr.start) ? *pr.start : detail::random_start(pr, rng);
    return detail::run_restart(pr, std::move(start));
  };
  std::vector<detail::RestartOutcome> outcomes(static_cast<std::size_t>(pr.restarts));
  if (pr.threads > 1) {
    for (int base = 0; base < pr.restarts; base += pr.threads) {
      std::vector<std::future<detail::RestartOutcome>> fs;
      for (int k = base; k < std::min(pr.restarts, base + pr.threads); ++k) fs.push_back(std::async(std::launch::async, job, k));
      for (int k = base; k < std::min(pr.restarts, base + pr.threads); ++k)
        outcomes[static_cast<std::size_t>(k)] = fs[static_cast<std::size_t>(k - base)].get();
    }
  } else {
    for (int k = 0; k < pr.restarts; ++k) outcomes[static_cast<std::size_t>(k)] = job(k);
  }

  std::size_t win = 0;
  for (std::size_t k = 1; k < outcomes.size(); ++k)
    if (outcomes[k].objective < outcomes[win].objective) win = k;

  SearchResult out;
  out.best = outcomes[win].best;
  out.residual = outcomes[win].objective;
  out.best_restart = static_cast<int>(win);
  const Tensor4 r = chern_curvature(build_family(out.best, 1e-6));
  const RicciMatrix ric = first_ricci(r);
  out.c = pr.fixed_c ? *pr.fixed_c : fitted_constant(r, ric, pr.mp);
  out.max_residual = mixed_identity_defect(r, ric, pr.mp, out.c).max_abs();
  out.flat_distances = detail::flat_distances(out.best);
  out.trace = outcomes[win].trace;
  for (const auto& o : outcomes) out.restart_residuals.push_back(o.objective);
  return out;
}

}  // namespace hermlie
