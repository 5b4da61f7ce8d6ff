#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "hermlie/errors.hpp"

namespace hermlie {

using cplx = std::complex<double>;

// Dense n×n×n complex tensor. Indexing follows the upper-index-first
// convention used throughout: t(j, i, k) stores X^j_{ik}.
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(std::size_t n) : n_(n), data_(n * n * n) {}

  std::size_t dim() const { return n_; }

  cplx& operator()(std::size_t a, std::size_t b, std::size_t c) {
    return data_[(a * n_ + b) * n_ + c];
  }
  const cplx& operator()(std::size_t a, std::size_t b, std::size_t c) const {
    return data_[(a * n_ + b) * n_ + c];
  }

  const std::vector<cplx>& data() const { return data_; }
  std::vector<cplx>& data() { return data_; }

  double max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

  double frobenius() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
  }

 private:
  std::size_t n_ = 0;
  std::vector<cplx> data_;
};

// Dense rank-4 complex tensor; r(i, j, k, l) stores R_{i j̄ k l̄}.
class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(std::size_t n) : n_(n), data_(n * n * n * n) {}

  std::size_t dim() const { return n_; }

  cplx& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    return data_[((i * n_ + j) * n_ + k) * n_ + l];
  }
  const cplx& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return data_[((i * n_ + j) * n_ + k) * n_ + l];
  }

  const std::vector<cplx>& data() const { return data_; }
  std::vector<cplx>& data() { return data_; }

  double max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

  double frobenius() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
  }

 private:
  std::size_t n_ = 0;
  std::vector<cplx> data_;
};

inline double max_abs_diff(const Tensor4& a, const Tensor4& b) {
  if (a.dim() != b.dim()) throw InputError("tensor dimension mismatch");
  double m = 0.0;
  for (std::size_t q = 0; q < a.data().size(); ++q)
    m = std::max(m, std::abs(a.data()[q] - b.data()[q]));
  return m;
}

inline double max_abs_diff(const Tensor3& a, const Tensor3& b) {
  if (a.dim() != b.dim()) throw InputError("tensor dimension mismatch");
  double m = 0.0;
  for (std::size_t q = 0; q < a.data().size(); ++q)
    m = std::max(m, std::abs(a.data()[q] - b.data()[q]));
  return m;
}

}  // namespace hermlie
