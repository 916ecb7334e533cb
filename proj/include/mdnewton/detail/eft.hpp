#pragma once

// Error-free transforms, written once over a generic lane type T.  T is a
// plain double for the scalar reference path, a four-lane AVX2 vector for
// the SIMD kernels, and detail::Counted when the per-operation cost
// constants are measured.

#include <array>
#include <cstddef>

#include "mdnewton/counting.hpp"

namespace mdn::detail {

inline constexpr double kSplitter = 134217729.0;  // 2^27 + 1

// Scalar lane helpers.  Vector lane types provide their own overloads.
constexpr bool is_zero(double x) { return x == 0.0; }

// A double that books every arithmetic operation it takes part in.
struct Counted {
  double v = 0.0;
  OpCounter* c = nullptr;

  constexpr Counted() = default;
  constexpr Counted(double x) : v(x) {}  // NOLINT: lane types convert from double
  constexpr Counted(double x, OpCounter* t) : v(x), c(t) {}

  friend constexpr Counted operator+(Counted a, Counted b) {
    OpCounter* t = a.c ? a.c : b.c;
    if (t) ++t->additions;
    return {a.v + b.v, t};
  }
  friend constexpr Counted operator-(Counted a, Counted b) {
    OpCounter* t = a.c ? a.c : b.c;
    if (t) ++t->subtractions;
    return {a.v - b.v, t};
  }
  friend constexpr Counted operator*(Counted a, Counted b) {
    OpCounter* t = a.c ? a.c : b.c;
    if (t) ++t->multiplications;
    return {a.v * b.v, t};
  }
  friend constexpr Counted operator/(Counted a, Counted b) {
    OpCounter* t = a.c ? a.c : b.c;
    if (t) ++t->divisions;
    return {a.v / b.v, t};
  }
  constexpr Counted operator-() const { return {-v, c}; }
};

constexpr bool is_zero(Counted x) { return x.v == 0.0; }

template <class T>
constexpr void two_sum(T a, T b, T& s, T& e) {
  s = a + b;
  T bb = s - a;
  e = (a - (s - bb)) + (b - bb);
}

// Requires |a| >= |b| (or a == 0) to be error free.
template <class T>
constexpr void fast_two_sum(T a, T b, T& s, T& e) {
  s = a + b;
  e = b - (s - a);
}

// Veltkamp splitting into two 26-bit halves.
template <class T>
constexpr void split(T a, T& hi, T& lo) {
  T t = T(kSplitter) * a;
  hi = t - (t - a);
  lo = a - hi;
}

// Dekker's product: p + e == a * b exactly.
template <class T>
constexpr void two_prod(T a, T b, T& p, T& e) {
  p = a * b;
  T ah, al, bh, bl;
  split(a, ah, al);
  split(b, bh, bl);
  e = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
}

}  // namespace mdn::detail
