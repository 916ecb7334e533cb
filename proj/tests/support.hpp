#pragma once

#include <cmath>

#include "mdnewton/series.hpp"
#include "mdnewton/sysgen.hpp"

namespace mdn::test {

// Random complex entries with parts uniform on [-1, 1), all limbs filled.
template <std::size_t N>
MultiDouble<N> random_md(Rng& rng) {
  double raw[N];
  raw[0] = rng.uniform(-1, 1);
  for (std::size_t i = 1; i < N; ++i) raw[i] = std::ldexp(rng.uniform(-1, 1), -53) * std::fabs(raw[i - 1]);
  return renormalize<N>(std::span<const double>(raw, N));
}

template <std::size_t N>
ComplexMD<N> random_complex(Rng& rng) {
  return {random_md<N>(rng), random_md<N>(rng)};
}

template <std::size_t N>
Series<N> random_series(std::size_t d, Rng& rng) {
  Series<N> s(d);
  for (std::size_t k = 0; k < d; ++k) s.set(k, random_complex<N>(rng));
  return s;
}

template <std::size_t N>
SeriesVec<N> random_series_vec(std::size_t n, std::size_t d, Rng& rng) {
  SeriesVec<N> x(n, d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < n; ++i) x.set(i, k, random_complex<N>(rng));
  return x;
}

template <std::size_t N>
double abs1_diff(const ComplexMD<N>& a, const ComplexMD<N>& b) {
  return cabs1(csub(a, b)).approx();
}

}  // namespace mdn::test
