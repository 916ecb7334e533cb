// Compiled with -mavx2.  Four independent outputs (series coefficients or
// matrix rows) travel together, one per lane.

#define MDN_LANE_ABI avx2

#include <immintrin.h>

#include <cstdint>

#include "mdnewton/detail/lanes.hpp"
#include "mdnewton/kernels.hpp"

namespace mdn::kernels::avx2 {

struct F64x4 {
  __m256d v;
  F64x4() = default;
  F64x4(double x) : v(_mm256_set1_pd(x)) {}  // NOLINT
  F64x4(__m256d x) : v(x) {}                 // NOLINT

  friend F64x4 operator+(F64x4 a, F64x4 b) { return _mm256_add_pd(a.v, b.v); }
  friend F64x4 operator-(F64x4 a, F64x4 b) { return _mm256_sub_pd(a.v, b.v); }
  friend F64x4 operator*(F64x4 a, F64x4 b) { return _mm256_mul_pd(a.v, b.v); }
  F64x4 operator-() const { return _mm256_xor_pd(v, _mm256_set1_pd(-0.0)); }
};

inline __m256d blend(__m256d a, __m256d b, __m256d mask) { return _mm256_blendv_pd(a, b, mask); }

// Lane-wise version of detail::extract_limbs.  The output slot of each lane
// is tracked in an integer vector and writes become masked blends.
template <std::size_t M, std::size_t N>
inline void extract_limbs(const std::array<F64x4, M>& e, std::array<F64x4, N>& r) {
  const __m256d zero = _mm256_setzero_pd();
  __m256i ptr = _mm256_setzero_si256();
  const __m256i one = _mm256_set1_epi64x(1);
  for (auto& x : r) x = zero;
  F64x4 pr = e[0];
  for (std::size_t i = 1; i < M; ++i) {
    F64x4 s, err;
    detail::fast_two_sum(pr, e[i], s, err);
    __m256d z = _mm256_cmp_pd(err.v, zero, _CMP_EQ_OQ);
    for (std::size_t o = 0; o < N; ++o) {
      __m256d at = _mm256_castsi256_pd(
          _mm256_cmpeq_epi64(ptr, _mm256_set1_epi64x(static_cast<std::int64_t>(o))));
      r[o] = blend(r[o].v, s.v, _mm256_andnot_pd(z, at));
    }
    ptr = _mm256_add_epi64(ptr, _mm256_andnot_si256(_mm256_castpd_si256(z), one));
    pr = blend(err.v, s.v, z);
  }
  __m256d nz = _mm256_cmp_pd(pr.v, zero, _CMP_NEQ_UQ);
  for (std::size_t o = 0; o < N; ++o) {
    __m256d at = _mm256_castsi256_pd(
        _mm256_cmpeq_epi64(ptr, _mm256_set1_epi64x(static_cast<std::int64_t>(o))));
    r[o] = blend(r[o].v, pr.v, _mm256_and_pd(nz, at));
  }
}

// Lane-wise lexicographic ordering, as detail::order_operands.
template <std::size_t N>
inline void order_operands(std::array<F64x4, N>& a, std::array<F64x4, N>& b) {
  __m256d decided = _mm256_setzero_pd();
  __m256d swap = _mm256_setzero_pd();
  for (std::size_t i = 0; i < N; ++i) {
    __m256d lt = _mm256_andnot_pd(decided, _mm256_cmp_pd(a[i].v, b[i].v, _CMP_LT_OQ));
    __m256d gt = _mm256_andnot_pd(decided, _mm256_cmp_pd(a[i].v, b[i].v, _CMP_GT_OQ));
    swap = _mm256_or_pd(swap, lt);
    decided = _mm256_or_pd(decided, _mm256_or_pd(lt, gt));
  }
  for (std::size_t i = 0; i < N; ++i) {
    __m256d x = a[i].v, y = b[i].v;
    a[i] = blend(x, y, swap);
    b[i] = blend(y, x, swap);
  }
}

using detail::Limbs;

namespace {

// Lanes l < count get p[l]; the rest are zero.
inline __m256d load_partial(const double* p, std::size_t count) {
  alignas(32) double t[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t l = 0; l < count; ++l) t[l] = p[l];
  return _mm256_load_pd(t);
}

inline void store_partial(double* p, __m256d v, std::size_t count) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  for (std::size_t l = 0; l < count; ++l) p[l] = t[l];
}

}  // namespace

template <std::size_t N>
void convolve(const double* a, const double* b, double* c, std::size_t d, std::size_t k0,
              std::size_t k1) {
  for (std::size_t k = k0; k < k1; k += 4) {
    const std::size_t lanes = k1 - k < 4 ? k1 - k : 4;
    Limbs<N, F64x4> sr, si;
    for (std::size_t l = 0; l < N; ++l) sr[l] = si[l] = F64x4(0.0);
    for (std::size_t j = 0; j < d; ++j) {
      Limbs<N, F64x4> ar, ai, br, bi;
      for (std::size_t l = 0; l < N; ++l) {
        ar[l] = F64x4(a[l * d + j]);
        ai[l] = F64x4(a[(N + l) * d + j]);
      }
      // Lane q reads b[k + q - j] when j <= k + q, else zero.
      if (j <= k && lanes == 4) {
        for (std::size_t l = 0; l < N; ++l) {
          br[l] = _mm256_loadu_pd(b + l * d + k - j);
          bi[l] = _mm256_loadu_pd(b + (N + l) * d + k - j);
        }
      } else if (j < k + lanes) {
        alignas(32) double tr[4], ti[4];
        for (std::size_t l = 0; l < N; ++l) {
          for (std::size_t q = 0; q < 4; ++q) {
            bool ok = q < lanes && j <= k + q;
            tr[q] = ok ? b[l * d + k + q - j] : 0.0;
            ti[q] = ok ? b[(N + l) * d + k + q - j] : 0.0;
          }
          br[l] = _mm256_load_pd(tr);
          bi[l] = _mm256_load_pd(ti);
        }
      } else {
        for (std::size_t l = 0; l < N; ++l) br[l] = bi[l] = F64x4(0.0);
      }
      detail::cmul_add(ar, ai, br, bi, sr, si);
    }
    for (std::size_t l = 0; l < N; ++l) {
      store_partial(c + l * d + k, sr[l].v, lanes);
      store_partial(c + (N + l) * d + k, si[l].v, lanes);
    }
  }
}

template <std::size_t N>
void matvec_sub(const double* A, const double* x, double* y, std::size_t n, std::size_t r0,
                std::size_t r1) {
  const std::size_t nn = n * n;
  for (std::size_t i = r0; i < r1; i += 4) {
    const std::size_t lanes = r1 - i < 4 ? r1 - i : 4;
    Limbs<N, F64x4> sr, si;
    for (std::size_t l = 0; l < N; ++l) {
      sr[l] = load_partial(y + l * n + i, lanes);
      si[l] = load_partial(y + (N + l) * n + i, lanes);
    }
    for (std::size_t j = 0; j < n; ++j) {
      Limbs<N, F64x4> ar, ai, xr, xi;
      for (std::size_t l = 0; l < N; ++l) {
        const double* col_r = A + l * nn + j * n + i;
        const double* col_i = A + (N + l) * nn + j * n + i;
        if (lanes == 4) {
          ar[l] = _mm256_loadu_pd(col_r);
          ai[l] = _mm256_loadu_pd(col_i);
        } else {
          ar[l] = load_partial(col_r, lanes);
          ai[l] = load_partial(col_i, lanes);
        }
        xr[l] = F64x4(x[l * n + j]);
        xi[l] = F64x4(x[(N + l) * n + j]);
      }
      detail::cmul_sub(ar, ai, xr, xi, sr, si);
    }
    for (std::size_t l = 0; l < N; ++l) {
      store_partial(y + l * n + i, sr[l].v, lanes);
      store_partial(y + (N + l) * n + i, si[l].v, lanes);
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

}  // namespace mdn::kernels::avx2
