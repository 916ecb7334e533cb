#include <atomic>

#include "mdnewton/error.hpp"
#include "mdnewton/kernels.hpp"

namespace mdn::kernels {

namespace {
std::atomic<Isa> g_isa{best_isa()};
}

bool avx2_supported() {
#if defined(__x86_64__) || defined(__i386__)
  static const bool ok = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") != 0;
  }();
  return ok;
#else
  return false;
#endif
}

Isa best_isa() { return avx2_supported() ? Isa::Avx2 : Isa::Scalar; }

Isa active_isa() { return g_isa.load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (isa == Isa::Avx2 && !avx2_supported())
    throw Error(ErrorCode::InvalidArgument, "avx2 kernels requested but the CPU lacks AVX2");
  g_isa.store(isa, std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

std::optional<Isa> parse_isa(std::string_view s) {
  if (s == "auto") return best_isa();
  if (s == "scalar") return Isa::Scalar;
  if (s == "avx2") return Isa::Avx2;
  return std::nullopt;
}

template <std::size_t N>
void convolve(const double* a, const double* b, double* c, std::size_t d, std::size_t k0,
              std::size_t k1) {
  if (active_isa() == Isa::Avx2)
    avx2::convolve<N>(a, b, c, d, k0, k1);
  else
    scalar::convolve<N>(a, b, c, d, k0, k1);
}

template <std::size_t N>
void matvec_sub(const double* A, const double* x, double* y, std::size_t n, std::size_t r0,
                std::size_t r1) {
  if (active_isa() == Isa::Avx2)
    avx2::matvec_sub<N>(A, x, y, n, r0, r1);
  else
    scalar::matvec_sub<N>(A, x, y, n, r0, r1);
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

}  // namespace mdn::kernels
