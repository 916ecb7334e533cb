#pragma once

#include <cstddef>
#include <vector>

#include "mdnewton/multidouble.hpp"

namespace mdn {

template <std::size_t N>
struct ComplexMD {
  MultiDouble<N> re;
  MultiDouble<N> im;

  constexpr ComplexMD() = default;
  constexpr ComplexMD(double r) : re(r) {}  // NOLINT
  constexpr ComplexMD(const MultiDouble<N>& r) : re(r) {}  // NOLINT
  constexpr ComplexMD(const MultiDouble<N>& r, const MultiDouble<N>& i) : re(r), im(i) {}
  constexpr ComplexMD(double r, double i) : re(r), im(i) {}

  constexpr bool is_zero() const { return re.is_zero() && im.is_zero(); }
  friend constexpr bool operator==(const ComplexMD&, const ComplexMD&) = default;
};

template <std::size_t N>
ComplexMD<N> cadd(const ComplexMD<N>& x, const ComplexMD<N>& y) {
  return {md_add(x.re, y.re), md_add(x.im, y.im)};
}

template <std::size_t N>
ComplexMD<N> csub(const ComplexMD<N>& x, const ComplexMD<N>& y) {
  return {md_sub(x.re, y.re), md_sub(x.im, y.im)};
}

template <std::size_t N>
constexpr ComplexMD<N> cneg(const ComplexMD<N>& x) {
  return {md_neg(x.re), md_neg(x.im)};
}

template <std::size_t N>
constexpr ComplexMD<N> conj(const ComplexMD<N>& x) {
  return {x.re, md_neg(x.im)};
}

// Four real products, one subtraction, one addition.
template <std::size_t N>
ComplexMD<N> cmul_4m(const ComplexMD<N>& x, const ComplexMD<N>& y) {
  return {md_sub(md_mul(x.re, y.re), md_mul(x.im, y.im)),
          md_add(md_mul(x.re, y.im), md_mul(x.im, y.re))};
}

template <std::size_t N>
ComplexMD<N> cscale(const ComplexMD<N>& x, const MultiDouble<N>& s) {
  return {md_mul(x.re, s), md_mul(x.im, s)};
}

// |re|^2 + |im|^2
template <std::size_t N>
MultiDouble<N> cnorm2(const ComplexMD<N>& x) {
  return md_add(md_mul(x.re, x.re), md_mul(x.im, x.im));
}

template <std::size_t N>
MultiDouble<N> cabs(const ComplexMD<N>& x) {
  return md_sqrt(cnorm2(x));
}

// |re| + |im|, the modulus surrogate used by all series norms.
template <std::size_t N>
MultiDouble<N> cabs1(const ComplexMD<N>& x) {
  return md_add(md_abs(x.re), md_abs(x.im));
}

template <std::size_t N>
ComplexMD<N> cdiv(const ComplexMD<N>& x, const ComplexMD<N>& y) {
  if (y.is_zero()) throw Error(ErrorCode::DivisionByZero, "complex division by zero");
  MultiDouble<N> den = cnorm2(y);
  ComplexMD<N> num = cmul_4m(x, conj(y));
  return {md_div(num.re, den), md_div(num.im, den)};
}

template <std::size_t N>
ComplexMD<N> operator+(const ComplexMD<N>& x, const ComplexMD<N>& y) { return cadd(x, y); }
template <std::size_t N>
ComplexMD<N> operator-(const ComplexMD<N>& x, const ComplexMD<N>& y) { return csub(x, y); }
template <std::size_t N>
ComplexMD<N> operator*(const ComplexMD<N>& x, const ComplexMD<N>& y) { return cmul_4m(x, y); }
template <std::size_t N>
ComplexMD<N> operator/(const ComplexMD<N>& x, const ComplexMD<N>& y) { return cdiv(x, y); }
template <std::size_t N>
constexpr ComplexMD<N> operator-(const ComplexMD<N>& x) { return cneg(x); }

// Component-planar storage of n complex multiple doubles: plane j < N holds
// limb j of every real part, plane N + j limb j of every imaginary part.
// Planes are laid out back to back, each n doubles long.
template <std::size_t N>
class PlanarVector {
 public:
  static constexpr std::size_t kPlanes = 2 * N;

  PlanarVector() = default;
  explicit PlanarVector(std::size_t n) : n_(n), data_(kPlanes * n, 0.0) {}

  std::size_t size() const { return n_; }
  std::size_t plane_count() const { return kPlanes; }

  double* plane(std::size_t p) { return data_.data() + p * n_; }
  const double* plane(std::size_t p) const { return data_.data() + p * n_; }
  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::vector<double>& raw() { return data_; }
  const std::vector<double>& raw() const { return data_; }

  ComplexMD<N> get(std::size_t i) const {
    ComplexMD<N> z;
    for (std::size_t j = 0; j < N; ++j) {
      z.re.limbs[j] = data_[j * n_ + i];
      z.im.limbs[j] = data_[(N + j) * n_ + i];
    }
    return z;
  }

  void set(std::size_t i, const ComplexMD<N>& z) {
    for (std::size_t j = 0; j < N; ++j) {
      data_[j * n_ + i] = z.re.limbs[j];
      data_[(N + j) * n_ + i] = z.im.limbs[j];
    }
  }

  void fill_zero() { std::fill(data_.begin(), data_.end(), 0.0); }

  friend bool operator==(const PlanarVector&, const PlanarVector&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

template <std::size_t N>
ComplexMD<N> planar_gather(const PlanarVector<N>& v, std::size_t i) {
  if (i >= v.size()) throw Error(ErrorCode::IndexOutOfRange, "planar_gather index " + std::to_string(i));
  return v.get(i);
}

template <std::size_t N>
void planar_scatter(PlanarVector<N>& v, std::size_t i, const ComplexMD<N>& z) {
  if (i >= v.size()) throw Error(ErrorCode::IndexOutOfRange, "planar_scatter index " + std::to_string(i));
  v.set(i, z);
}

}  // namespace mdn
