#include <doctest.h>

#include <vector>

#include "mdnewton/kernels.hpp"
#include "mdnewton/matrix.hpp"
#include "mdnewton/series.hpp"
#include "support.hpp"

using namespace mdn;

namespace {

// Planar data with full limbs and sign mixes, filled through the entry form.
template <std::size_t N>
std::vector<double> planar_data(std::size_t count, Rng& rng) {
  PlanarVector<N> v(count);
  for (std::size_t i = 0; i < count; ++i) planar_scatter(v, i, test::random_complex<N>(rng));
  return v.raw();
}

template <std::size_t N>
void check_convolve(Rng& rng) {
  for (std::size_t d : {1, 2, 3, 4, 5, 7, 8, 13, 17, 32}) {
    const auto a = planar_data<N>(d, rng), b = planar_data<N>(d, rng);
    for (auto [k0, k1] : {std::pair<std::size_t, std::size_t>{0, d}, {d / 3, d}, {0, (d + 1) / 2}}) {
      std::vector<double> cs(2 * N * d, -7.0), cv(2 * N * d, -7.0);
      kernels::scalar::convolve<N>(a.data(), b.data(), cs.data(), d, k0, k1);
      kernels::avx2::convolve<N>(a.data(), b.data(), cv.data(), d, k0, k1);
      INFO("N=", N, " d=", d, " k0=", k0, " k1=", k1);
      CHECK(cs == cv);
    }
  }
}

template <std::size_t N>
void check_matvec(Rng& rng) {
  for (std::size_t n : {1, 2, 3, 4, 5, 6, 9, 16, 19}) {
    const auto A = planar_data<N>(n * n, rng), x = planar_data<N>(n, rng), y = planar_data<N>(n, rng);
    for (auto [r0, r1] : {std::pair<std::size_t, std::size_t>{0, n}, {n / 2, n}, {1 % n, (n + 1) / 2}}) {
      auto ys = y, yv = y;
      kernels::scalar::matvec_sub<N>(A.data(), x.data(), ys.data(), n, r0, r1);
      kernels::avx2::matvec_sub<N>(A.data(), x.data(), yv.data(), n, r0, r1);
      INFO("N=", N, " n=", n, " r0=", r0, " r1=", r1);
      CHECK(ys == yv);
    }
  }
}

}  // namespace

TEST_CASE("isa selection") {
  CHECK(kernels::parse_isa("scalar") == kernels::Isa::Scalar);
  CHECK(kernels::parse_isa("auto") == kernels::best_isa());
  CHECK_FALSE(kernels::parse_isa("neon"));
  CHECK(kernels::isa_name(kernels::Isa::Avx2) == "avx2");
  kernels::set_isa(kernels::Isa::Scalar);
  CHECK(kernels::active_isa() == kernels::Isa::Scalar);
  kernels::set_isa(kernels::best_isa());
}

TEST_CASE("scalar and AVX2 convolutions agree bit for bit") {
  if (!kernels::avx2_supported()) return;
  Rng rng(1);
  check_convolve<1>(rng);
  check_convolve<2>(rng);
  check_convolve<4>(rng);
  check_convolve<8>(rng);
}

TEST_CASE("scalar and AVX2 matrix-vector updates agree bit for bit") {
  if (!kernels::avx2_supported()) return;
  Rng rng(2);
  check_matvec<1>(rng);
  check_matvec<2>(rng);
  check_matvec<4>(rng);
  check_matvec<8>(rng);
}

TEST_CASE("dispatch follows the active ISA") {
  Rng rng(3);
  const std::size_t d = 11;
  const auto a = test::random_series<4>(d, rng), b = test::random_series<4>(d, rng);
  kernels::set_isa(kernels::Isa::Scalar);
  const auto s = convolve(a, b);
  kernels::set_isa(kernels::best_isa());
  const auto v = convolve(a, b);
  CHECK(s == v);
  // Scalar convolution matches the textbook sum of 4M products.
  for (std::size_t k = 0; k < d; ++k) {
    ComplexMD<4> sum;
    for (std::size_t j = 0; j <= k; ++j) sum = cadd(sum, cmul_4m(a[j], b[k - j]));
    CHECK(test::abs1_diff(sum, s[k]) <= 8 * eps_v<4> * double(k + 1) * 4);
  }
}
