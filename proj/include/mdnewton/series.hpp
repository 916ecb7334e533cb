#pragma once

#include <cstddef>
#include <vector>

#include "mdnewton/complexmd.hpp"
#include "mdnewton/kernels.hpp"

namespace mdn {

// Truncated power series c_0 + c_1 t + ... + c_{d-1} t^{d-1}, coefficients
// stored planar over k.
template <std::size_t N>
class Series {
 public:
  Series() = default;
  explicit Series(std::size_t d) : c_(d) {}

  std::size_t order() const { return c_.size(); }
  ComplexMD<N> operator[](std::size_t k) const { return c_.get(k); }
  ComplexMD<N> coeff(std::size_t k) const { return planar_gather(c_, k); }
  void set(std::size_t k, const ComplexMD<N>& z) { c_.set(k, z); }

  PlanarVector<N>& planar() { return c_; }
  const PlanarVector<N>& planar() const { return c_; }

  static Series one(std::size_t d) {
    Series s(d);
    s.set(0, ComplexMD<N>(1.0));
    return s;
  }

  friend bool operator==(const Series&, const Series&) = default;

 private:
  PlanarVector<N> c_;
};

// Cost of one coefficient product in a convolution: a 4M complex product
// and its accumulation.
template <std::size_t N>
OpCounter coefficient_product_cost() {
  return mul_cost<N>().scaled(4) + add_cost<N>().scaled(4);
}

template <std::size_t N>
void book_convolutions(std::uint64_t count, std::size_t d) {
  auto& t = tally();
  t.conv.series_products += count;
  t.conv.coefficient_products += count * d * d;
  t.ops += coefficient_product_cost<N>().scaled(count * d * d);
}

// Padded product: c_k = sum_{j<d} a_j b_{k-j}, with zero terms for k < j.
template <std::size_t N>
void convolve_into(const Series<N>& a, const Series<N>& b, Series<N>& c) {
  const std::size_t d = a.order();
  if (b.order() != d) throw Error(ErrorCode::OrderMismatch, "convolve: orders differ");
  if (c.order() != d) c = Series<N>(d);
  kernels::convolve<N>(a.planar().data(), b.planar().data(), c.planar().data(), d, 0, d);
  book_convolutions<N>(1, d);
}

template <std::size_t N>
Series<N> convolve(const Series<N>& a, const Series<N>& b) {
  Series<N> c(a.order());
  convolve_into(a, b, c);
  return c;
}

template <std::size_t N>
Series<N> exp_series(const ComplexMD<N>& alpha, std::size_t d) {
  Series<N> s(d);
  if (d == 0) return s;
  ComplexMD<N> c(1.0);
  s.set(0, c);
  for (std::size_t k = 1; k < d; ++k) {
    c = cmul_4m(c, alpha);
    MultiDouble<N> kk(static_cast<double>(k));
    c = {md_div(c.re, kk), md_div(c.im, kk)};
    s.set(k, c);
  }
  return s;
}

// Coefficient k scaled by delta^k.
template <std::size_t N>
Series<N> damp(const Series<N>& x, const MultiDouble<N>& delta) {
  Series<N> r(x.order());
  MultiDouble<N> p(1.0);
  for (std::size_t k = 0; k < x.order(); ++k) {
    if (k > 0) p = md_mul(p, delta);
    r.set(k, cscale(x[k], p));
  }
  return r;
}

// Vector of n series, stored as d planar coefficient vectors of length n.
template <std::size_t N>
class SeriesVec {
 public:
  SeriesVec() = default;
  SeriesVec(std::size_t n, std::size_t d) : n_(n), x_(d, PlanarVector<N>(n)) {}

  std::size_t dim() const { return n_; }
  std::size_t order() const { return x_.size(); }

  PlanarVector<N>& coeff(std::size_t k) { return x_[k]; }
  const PlanarVector<N>& coeff(std::size_t k) const { return x_[k]; }

  ComplexMD<N> get(std::size_t i, std::size_t k) const { return x_[k].get(i); }
  void set(std::size_t i, std::size_t k, const ComplexMD<N>& z) { x_[k].set(i, z); }

  Series<N> component(std::size_t i) const {
    if (i >= n_) throw Error(ErrorCode::IndexOutOfRange, "component index");
    Series<N> s(order());
    gather_component(i, s, order());
    return s;
  }

  // First d coefficients of component i into s (which must have order d).
  void gather_component(std::size_t i, Series<N>& s, std::size_t d) const {
    double* out = s.planar().data();
    for (std::size_t k = 0; k < d; ++k) {
      const double* in = x_[k].data();
      for (std::size_t p = 0; p < 2 * N; ++p) out[p * d + k] = in[p * n_ + i];
    }
  }

  void set_component(std::size_t i, const Series<N>& s) {
    if (i >= n_) throw Error(ErrorCode::IndexOutOfRange, "component index");
    if (s.order() != order()) throw Error(ErrorCode::OrderMismatch, "set_component order");
    for (std::size_t k = 0; k < order(); ++k) x_[k].set(i, s[k]);
  }

  // Copy truncated or zero padded to order d.
  SeriesVec resized(std::size_t d) const {
    SeriesVec r(n_, d);
    for (std::size_t k = 0; k < d && k < order(); ++k) r.x_[k] = x_[k];
    return r;
  }

  friend bool operator==(const SeriesVec&, const SeriesVec&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<PlanarVector<N>> x_;
};

// 1-norm of one planar coefficient vector, with |re| + |im| per entry.
template <std::size_t N>
MultiDouble<N> vector_norm1(const PlanarVector<N>& v) {
  MultiDouble<N> s;
  for (std::size_t i = 0; i < v.size(); ++i) s = md_add(s, cabs1(v.get(i)));
  return s;
}

// max over k of the coefficient vector 1-norms.
template <std::size_t N>
MultiDouble<N> series_norm(const SeriesVec<N>& b) {
  MultiDouble<N> m;
  for (std::size_t k = 0; k < b.order(); ++k) {
    MultiDouble<N> s = vector_norm1(b.coeff(k));
    if (s > m) m = s;
  }
  return m;
}

template <std::size_t N>
MultiDouble<N> series_norm(const Series<N>& x) {
  MultiDouble<N> m;
  for (std::size_t k = 0; k < x.order(); ++k) {
    MultiDouble<N> s = cabs1(x[k]);
    if (s > m) m = s;
  }
  return m;
}

template <std::size_t N>
struct FabryEstimate {
  ComplexMD<N> z;
  MultiDouble<N> radius;
};

// z = c_{d-2} / c_{d-1}: the ratio of the last two coefficients.
template <std::size_t N>
FabryEstimate<N> fabry_ratio(const Series<N>& x) {
  const std::size_t d = x.order();
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "fabry_ratio needs at least two coefficients");
  const ComplexMD<N> last = x[d - 1];
  if (last.is_zero()) throw Error(ErrorCode::LastCoefficientZero, "last coefficient is zero");
  ComplexMD<N> z = cdiv(x[d - 2], last);
  return {z, cabs(z)};
}

// All consecutive ratios c_k / c_{k+1}, k = 0..d-2.  Zero denominators
// are skipped by leaving the entry at zero.
template <std::size_t N>
std::vector<ComplexMD<N>> fabry_ratios(const Series<N>& x) {
  std::vector<ComplexMD<N>> r;
  for (std::size_t k = 0; k + 1 < x.order(); ++k) {
    const ComplexMD<N> den = x[k + 1];
    r.push_back(den.is_zero() ? ComplexMD<N>() : cdiv(x[k], den));
  }
  return r;
}

}  // namespace mdn
