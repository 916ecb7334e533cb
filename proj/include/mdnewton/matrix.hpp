#pragma once

#include <cstddef>
#include <vector>

#include "mdnewton/complexmd.hpp"

namespace mdn {

// n x n complex matrix, column major and planar: plane p holds limb p of
// all real parts (p < N) or imaginary parts (p >= N), entry (i, j) at
// offset j * n + i within the plane.
template <std::size_t N>
class PlanarMatrix {
 public:
  PlanarMatrix() = default;
  explicit PlanarMatrix(std::size_t n) : n_(n), data_(2 * N * n * n, 0.0) {}

  std::size_t dim() const { return n_; }
  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  ComplexMD<N> get(std::size_t i, std::size_t j) const {
    const std::size_t nn = n_ * n_, at = j * n_ + i;
    ComplexMD<N> z;
    for (std::size_t l = 0; l < N; ++l) {
      z.re.limbs[l] = data_[l * nn + at];
      z.im.limbs[l] = data_[(N + l) * nn + at];
    }
    return z;
  }

  void set(std::size_t i, std::size_t j, const ComplexMD<N>& z) {
    const std::size_t nn = n_ * n_, at = j * n_ + i;
    for (std::size_t l = 0; l < N; ++l) {
      data_[l * nn + at] = z.re.limbs[l];
      data_[(N + l) * nn + at] = z.im.limbs[l];
    }
  }

  void fill_zero() { std::fill(data_.begin(), data_.end(), 0.0); }

  friend bool operator==(const PlanarMatrix&, const PlanarMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

// A(t) = A_0 + A_1 t + ... + A_{d-1} t^{d-1}.
template <std::size_t N>
class SeriesMatrix {
 public:
  SeriesMatrix() = default;
  SeriesMatrix(std::size_t n, std::size_t d) : n_(n), a_(d, PlanarMatrix<N>(n)) {}

  std::size_t dim() const { return n_; }
  std::size_t order() const { return a_.size(); }
  PlanarMatrix<N>& coeff(std::size_t k) { return a_[k]; }
  const PlanarMatrix<N>& coeff(std::size_t k) const { return a_[k]; }

 private:
  std::size_t n_ = 0;
  std::vector<PlanarMatrix<N>> a_;
};

}  // namespace mdn
