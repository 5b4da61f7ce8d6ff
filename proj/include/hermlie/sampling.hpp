#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "hermlie/tensor.hpp"

namespace hermlie {

using Rng = std::mt19937_64;

/// Independent stream per (seed, stream) pair.
inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

/// Uniform on the closed unit disk.
inline cplx unit_disk(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = std::sqrt(u(rng));
  const double t = 2.0 * std::numbers::pi * u(rng);
  return std::polar(r, t);
}

inline Eigen::VectorXcd unit_disk_vector(Rng& rng, Eigen::Index m) {
  Eigen::VectorXcd v(m);
  for (Eigen::Index a = 0; a < m; ++a) v(a) = unit_disk(rng);
  return v;
}

inline Eigen::MatrixXcd unit_disk_matrix(Rng& rng, Eigen::Index m) {
  Eigen::MatrixXcd x(m, m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b) x(a, b) = unit_disk(rng);
  return x;
}

/// Haar-distributed unitary via QR of a complex Gaussian matrix with the
/// phases of R's diagonal divided out.
inline Eigen::MatrixXcd random_unitary(Rng& rng, Eigen::Index m) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXcd z(m, m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b) {
      const double re = g(rng);
      const double im = g(rng);
      z(a, b) = cplx(re, im);
    }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index b = 0; b < m; ++b) {
    const double mag = std::abs(r(b, b));
    if (mag > 0.0) q.col(b) *= r(b, b) / mag;
  }
  return q;
}

}  // namespace hermlie
