#pragma once

// Hot loops over planar complex multiple-double data, with a scalar
// reference implementation and an AVX2 variant chosen at run time.  The
// variants agree bit for bit.  Kernels do not count operations; callers
// book the (input independent) cost in bulk.

#include <cstddef>
#include <optional>
#include <string_view>

namespace mdn::kernels {

enum class Isa { Scalar, Avx2 };

bool avx2_supported();
Isa best_isa();
Isa active_isa();
// Throws mdn::Error(InvalidArgument) when the ISA is not available.
void set_isa(Isa isa);
std::string_view isa_name(Isa isa);
// "auto", "scalar" or "avx2"; auto resolves to best_isa().
std::optional<Isa> parse_isa(std::string_view s);

// Planar complex series of order d: 2N planes of d doubles each.
// Writes c_k = sum_{j<d} a_j b_{k-j} for k in [k0, k1), terms with
// k - j < 0 contributing a (computed) zero product.  c must not alias a, b.
template <std::size_t N>
void convolve(const double* a, const double* b, double* c, std::size_t d, std::size_t k0,
              std::size_t k1);

// y_i -= sum_j A_ij x_j for rows i in [r0, r1), j ascending.  A is an n x n
// column-major planar matrix (2N planes of n*n doubles), x and y planar
// vectors of length n.
template <std::size_t N>
void matvec_sub(const double* A, const double* x, double* y, std::size_t n, std::size_t r0,
                std::size_t r1);

namespace scalar {
template <std::size_t N>
void convolve(const double* a, const double* b, double* c, std::size_t d, std::size_t k0,
              std::size_t k1);
template <std::size_t N>
void matvec_sub(const double* A, const double* x, double* y, std::size_t n, std::size_t r0,
                std::size_t r1);
}  // namespace scalar

namespace avx2 {
template <std::size_t N>
void convolve(const double* a, const double* b, double* c, std::size_t d, std::size_t k0,
              std::size_t k1);
template <std::size_t N>
void matvec_sub(const double* A, const double* x, double* y, std::size_t n, std::size_t r0,
                std::size_t r1);
}  // namespace avx2

}  // namespace mdn::kernels
