#include "mdnewton/detail/lanes.hpp"
#include "mdnewton/kernels.hpp"

namespace mdn::kernels::scalar {

using detail::Limbs;

template <std::size_t N>
void convolve(const double* a, const double* b, double* c, std::size_t d, std::size_t k0,
              std::size_t k1) {
  for (std::size_t k = k0; k < k1; ++k) {
    Limbs<N, double> sr{}, si{};
    for (std::size_t j = 0; j < d; ++j) {
      Limbs<N, double> ar, ai, br{}, bi{};
      for (std::size_t l = 0; l < N; ++l) {
        ar[l] = a[l * d + j];
        ai[l] = a[(N + l) * d + j];
      }
      if (j <= k) {
        for (std::size_t l = 0; l < N; ++l) {
          br[l] = b[l * d + k - j];
          bi[l] = b[(N + l) * d + k - j];
        }
      }
      detail::cmul_add(ar, ai, br, bi, sr, si);
    }
    for (std::size_t l = 0; l < N; ++l) {
      c[l * d + k] = sr[l];
      c[(N + l) * d + k] = si[l];
    }
  }
}

template <std::size_t N>
void matvec_sub(const double* A, const double* x, double* y, std::size_t n, std::size_t r0,
                std::size_t r1) {
  const std::size_t nn = n * n;
  for (std::size_t i = r0; i < r1; ++i) {
    Limbs<N, double> sr, si;
    for (std::size_t l = 0; l < N; ++l) {
      sr[l] = y[l * n + i];
      si[l] = y[(N + l) * n + i];
    }
    for (std::size_t j = 0; j < n; ++j) {
      Limbs<N, double> ar, ai, xr, xi;
      for (std::size_t l = 0; l < N; ++l) {
        ar[l] = A[l * nn + j * n + i];
        ai[l] = A[(N + l) * nn + j * n + i];
        xr[l] = x[l * n + j];
        xi[l] = x[(N + l) * n + j];
      }
      detail::cmul_sub(ar, ai, xr, xi, sr, si);
    }
    for (std::size_t l = 0; l < N; ++l) {
      y[l * n + i] = sr[l];
      y[(N + l) * n + i] = si[l];
    }
  }
}

#define MDN_INSTANTIATE(N)                                                                  \
  template void convolve<N>(const double*, const double*, double*, std::size_t, std::size_t, \
                            std::size_t);                                                   \
  template void matvec_sub<N>(const double*, const double*, double*, std::size_t,           \
                              std::size_t, std::size_t);
MDN_INSTANTIATE(1)
MDN_INSTANTIATE(2)
MDN_INSTANTIATE(4)
MDN_INSTANTIATE(8)
#undef MDN_INSTANTIATE

}  // namespace mdn::kernels::scalar
