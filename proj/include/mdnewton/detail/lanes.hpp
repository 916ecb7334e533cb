#pragma once

// Complex multiply-accumulate steps shared by the scalar and vector kernels.
// Both compute c = x * y by the 4M scheme, then fold c into an accumulator.

#include "mdnewton/detail/expansion.hpp"

namespace mdn::detail {
inline namespace MDN_LANE_ABI {

template <std::size_t N, class T>
inline void cmul(const Limbs<N, T>& xr, const Limbs<N, T>& xi, const Limbs<N, T>& yr,
                 const Limbs<N, T>& yi, Limbs<N, T>& re, Limbs<N, T>& im) {
  Limbs<N, T> p, q;
  mul(xr, yr, p);
  mul(xi, yi, q);
  sub(p, q, re);
  mul(xr, yi, p);
  mul(xi, yr, q);
  add(p, q, im);
}

// (sr, si) += x * y
template <std::size_t N, class T>
inline void cmul_add(const Limbs<N, T>& xr, const Limbs<N, T>& xi, const Limbs<N, T>& yr,
                     const Limbs<N, T>& yi, Limbs<N, T>& sr, Limbs<N, T>& si) {
  Limbs<N, T> re, im;
  cmul(xr, xi, yr, yi, re, im);
  add(sr, re, sr);
  add(si, im, si);
}

// (sr, si) -= x * y
template <std::size_t N, class T>
inline void cmul_sub(const Limbs<N, T>& xr, const Limbs<N, T>& xi, const Limbs<N, T>& yr,
                     const Limbs<N, T>& yi, Limbs<N, T>& sr, Limbs<N, T>& si) {
  Limbs<N, T> re, im;
  cmul(xr, xi, yr, yi, re, im);
  sub(sr, re, sr);
  sub(si, im, si);
}

}  // namespace MDN_LANE_ABI
}  // namespace mdn::detail
