#pragma once

// Limb-level multiple-double algorithms, templated on the limb count N and
// on the lane type T (see eft.hpp).  Every routine performs a fixed number
// of hardware operations for a given N; branches only select which values
// are stored, never how many operations run.  That is what makes the cost
// constants in multidouble.hpp exact.
//
// The lane ABI namespace keeps instantiations made inside the AVX2
// translation unit (compiled with -mavx2) from being merged with the
// baseline ones by the linker.

#include <array>
#include <cmath>
#include <cstddef>

#include "mdnewton/detail/eft.hpp"

#ifndef MDN_LANE_ABI
#define MDN_LANE_ABI base
#endif

namespace mdn::detail {
inline namespace MDN_LANE_ABI {

template <std::size_t N, class T>
using Limbs = std::array<T, N>;

constexpr bool lane_less(double a, double b) { return a < b; }
constexpr bool lane_less(Counted a, Counted b) { return a.v < b.v; }

inline double lane_sqrt(double x) { return std::sqrt(x); }
inline Counted lane_sqrt(Counted x) {
  if (x.c) ++x.c->divisions;
  return {std::sqrt(x.v), x.c};
}

// Second half of renormalization: walk the VecSum output from the top and
// emit a limb every time a nonzero error term shows up.  Zero errors merge
// the current term into the running partial sum, so no zero limb is ever
// emitted in front of a nonzero one.
template <std::size_t M, std::size_t N, class T>
constexpr void extract_limbs(const Limbs<M, T>& e, Limbs<N, T>& r) {
  std::size_t ptr = 0;
  T pr = e[0];
  for (std::size_t i = 1; i < M; ++i) {
    T s, err;
    fast_two_sum(pr, e[i], s, err);
    if (is_zero(err)) {
      pr = s;
    } else {
      if (ptr < N) r[ptr++] = s;
      pr = err;
    }
  }
  if (ptr < N && !is_zero(pr)) r[ptr++] = pr;
  for (; ptr < N; ++ptr) r[ptr] = T(0.0);
}

// Renormalize M overlapping terms (largest first) into N nonoverlapping
// limbs: a bottom-up VecSum with two_sum, then extract_limbs.
template <std::size_t M, std::size_t N, class T>
constexpr void renormalize(const Limbs<M, T>& f, Limbs<N, T>& r) {
  static_assert(M >= 2);
  Limbs<M, T> e{};
  T s = f[M - 1];
  for (std::size_t i = M - 1; i-- > 0;) two_sum(f[i], s, s, e[i + 1]);
  e[0] = s;
  extract_limbs(e, r);
}

// Put the lexicographically larger operand first so that add and mul are
// bitwise commutative even though their accumulation is not symmetric.
template <std::size_t N, class T>
constexpr void order_operands(Limbs<N, T>& a, Limbs<N, T>& b) {
  for (std::size_t i = 0; i < N; ++i) {
    if (lane_less(a[i], b[i])) {
      std::swap(a, b);
      return;
    }
    if (lane_less(b[i], a[i])) return;
  }
}

template <std::size_t N, class T>
constexpr Limbs<N, T> neg(const Limbs<N, T>& a) {
  Limbs<N, T> r{};
  for (std::size_t i = 0; i < N; ++i) r[i] = -a[i];
  return r;
}

template <std::size_t N, class T>
constexpr void add(Limbs<N, T> a, Limbs<N, T> b, Limbs<N, T>& r) {
  if constexpr (N == 1) {
    r[0] = a[0] + b[0];
  } else if constexpr (N == 2) {
    T s1, s2, t1, t2;
    two_sum(a[0], b[0], s1, s2);
    two_sum(a[1], b[1], t1, t2);
    s2 = s2 + t1;
    fast_two_sum(s1, s2, s1, s2);
    s2 = s2 + t2;
    fast_two_sum(s1, s2, r[0], r[1]);
  } else {
    // Cascade b into a 2N-slot accumulator seeded with a.  Every step but
    // the last slot is error free, so cancellation in the leading limbs
    // still leaves the trailing ones intact.
    order_operands(a, b);
    Limbs<2 * N, T> f{};
    for (std::size_t i = 0; i < N; ++i) {
      f[i] = a[i];
      f[N + i] = T(0.0);
    }
    for (std::size_t n = 0; n < N; ++n) {
      T p = b[n];
      for (std::size_t j = n; j < 2 * N - 1; ++j) two_sum(f[j], p, f[j], p);
      f[2 * N - 1] = f[2 * N - 1] + p;
    }
    renormalize(f, r);
  }
}

template <std::size_t N, class T>
constexpr void sub(const Limbs<N, T>& a, const Limbs<N, T>& b, Limbs<N, T>& r) {
  add(a, neg(b), r);
}

template <std::size_t N, class T>
constexpr void mul(Limbs<N, T> a, Limbs<N, T> b, Limbs<N, T>& r) {
  if constexpr (N == 1) {
    r[0] = a[0] * b[0];
  } else if constexpr (N == 2) {
    T p1, p2;
    two_prod(a[0], b[0], p1, p2);
    p2 = p2 + (a[0] * b[1] + a[1] * b[0]);
    fast_two_sum(p1, p2, r[0], r[1]);
  } else {
    // Partial products of level n = i + j < N are exact and cascade into
    // an (N+1)-slot accumulator; level N contributes plain products to the
    // last slot and deeper levels are dropped.
    order_operands(a, b);
    Limbs<N + 1, T> f{};
    for (auto& x : f) x = T(0.0);
    two_prod(a[0], b[0], f[0], f[1]);
    for (std::size_t n = 1; n < N; ++n) {
      for (std::size_t i = 0; i <= n; ++i) {
        T p, e;
        two_prod(a[i], b[n - i], p, e);
        for (std::size_t j = n; j < N; ++j) two_sum(f[j], p, f[j], p);
        f[N] = f[N] + p;
        for (std::size_t j = n + 1; j < N; ++j) two_sum(f[j], e, f[j], e);
        f[N] = f[N] + e;
      }
    }
    for (std::size_t i = 1; i < N; ++i) f[N] = f[N] + a[i] * b[N - i];
    renormalize(f, r);
  }
}

// Multiplication by a power of two is exact limb by limb.
template <std::size_t N, class T>
constexpr Limbs<N, T> scale_pow2(const Limbs<N, T>& a, double s) {
  Limbs<N, T> r{};
  for (std::size_t i = 0; i < N; ++i) r[i] = a[i] * T(s);
  return r;
}

// Newton steps needed to grow a 53-bit seed to N limbs.
template <std::size_t N>
inline constexpr int kNewtonSteps = N <= 1 ? 0 : N == 2 ? 1 : N == 4 ? 2 : 3;

template <std::size_t N, class T>
constexpr Limbs<N, T> unit() {
  Limbs<N, T> one{};
  for (auto& x : one) x = T(0.0);
  one[0] = T(1.0);
  return one;
}

// Quotient through the reciprocal: r <- r + r (1 - b r), then one
// correction q <- q + r (a - b q).  b must be nonzero.
template <std::size_t N, class T>
void div(const Limbs<N, T>& a, const Limbs<N, T>& b, Limbs<N, T>& q) {
  if constexpr (N == 1) {
    q[0] = a[0] / b[0];
  } else {
    const Limbs<N, T> one = unit<N, T>();
    Limbs<N, T> r{}, t{};
    for (auto& x : r) x = T(0.0);
    r[0] = T(1.0) / b[0];
    for (int s = 0; s < kNewtonSteps<N>; ++s) {
      mul(b, r, t);
      sub(one, t, t);
      mul(r, t, t);
      add(r, t, r);
    }
    mul(a, r, q);
    mul(b, q, t);
    sub(a, t, t);
    mul(r, t, t);
    add(q, t, q);
  }
}

// Square root through the inverse square root: y <- y + y (1 - a y^2)/2,
// then s = a y corrected by s <- s + y (a - s^2)/2.  a must be positive.
template <std::size_t N, class T>
void sqrt(const Limbs<N, T>& a, Limbs<N, T>& s) {
  if constexpr (N == 1) {
    s[0] = lane_sqrt(a[0]);
  } else {
    const Limbs<N, T> one = unit<N, T>();
    Limbs<N, T> y{}, t{};
    for (auto& x : y) x = T(0.0);
    y[0] = T(1.0) / lane_sqrt(a[0]);
    for (int k = 0; k < kNewtonSteps<N>; ++k) {
      mul(y, y, t);
      mul(a, t, t);
      sub(one, t, t);
      mul(y, t, t);
      add(y, scale_pow2(t, 0.5), y);
    }
    mul(a, y, s);
    mul(s, s, t);
    sub(a, t, t);
    mul(y, t, t);
    add(s, scale_pow2(t, 0.5), s);
  }
}

}  // namespace MDN_LANE_ABI
}  // namespace mdn::detail
