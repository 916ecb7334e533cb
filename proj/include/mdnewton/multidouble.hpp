#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mdnewton/counting.hpp"
#include "mdnewton/detail/expansion.hpp"
#include "mdnewton/error.hpp"

namespace mdn {

// Number of limbs: 1 (double), 2 (double double), 4 (quad double),
// 8 (octo double).
struct Precision {
  int limbs = 1;

  friend constexpr bool operator==(Precision, Precision) = default;
  friend constexpr auto operator<=>(Precision, Precision) = default;
};

inline constexpr Precision kDouble{1};
inline constexpr Precision kDoubleDouble{2};
inline constexpr Precision kQuadDouble{4};
inline constexpr Precision kOctoDouble{8};

constexpr bool valid(Precision p) {
  return p.limbs == 1 || p.limbs == 2 || p.limbs == 4 || p.limbs == 8;
}

// Unit roundoff per precision level.
constexpr double eps(Precision p) {
  switch (p.limbs) {
    case 1: return 2.2e-16;
    case 2: return 4.9e-32;
    case 4: return 6.1e-64;
    case 8: return 4.6e-128;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

template <std::size_t N>
inline constexpr double eps_v = eps(Precision{static_cast<int>(N)});

constexpr std::string_view short_name(Precision p) {
  switch (p.limbs) {
    case 1: return "d";
    case 2: return "dd";
    case 4: return "qd";
    case 8: return "od";
  }
  return "?";
}

inline std::optional<Precision> parse_precision(std::string_view s) {
  if (s == "d") return kDouble;
  if (s == "dd") return kDoubleDouble;
  if (s == "qd") return kQuadDouble;
  if (s == "od") return kOctoDouble;
  return std::nullopt;
}

template <std::size_t N>
struct MultiDouble {
  static_assert(N == 1 || N == 2 || N == 4 || N == 8, "limbs must be 1, 2, 4 or 8");
  static constexpr std::size_t limb_count = N;
  static constexpr Precision precision{static_cast<int>(N)};

  std::array<double, N> limbs{};

  constexpr MultiDouble() = default;
  constexpr MultiDouble(double x) : limbs{} { limbs[0] = x; }  // NOLINT
  constexpr explicit MultiDouble(const std::array<double, N>& l) : limbs(l) {}

  constexpr double operator[](std::size_t i) const { return limbs[i]; }
  constexpr double& operator[](std::size_t i) { return limbs[i]; }

  // Leading limb; the value to within a relative 2^-52.
  constexpr double approx() const { return limbs[0]; }
  constexpr bool is_zero() const { return limbs[0] == 0.0; }
  constexpr int sign() const { return limbs[0] > 0 ? 1 : limbs[0] < 0 ? -1 : 0; }

  // Limb-wise equality, so +0 and -0 compare equal.
  friend constexpr bool operator==(const MultiDouble&, const MultiDouble&) = default;
};

using DoubleDouble = MultiDouble<2>;
using QuadDouble = MultiDouble<4>;
using OctoDouble = MultiDouble<8>;

// ---------------------------------------------------------------------------
// Cost constants.  The very same templates run over detail::Counted once per
// precision, so these are exact for the code that is actually executed.

namespace detail {

template <std::size_t N>
Limbs<N, Counted> counted_sample(double seed, OpCounter* c) {
  Limbs<N, Counted> x{};
  double v = seed;
  for (std::size_t i = 0; i < N; ++i) {
    x[i] = Counted(v, c);
    v = std::ldexp(v, -55);
  }
  return x;
}

template <std::size_t N, class F>
OpCounter measure_binary(F f) {
  OpCounter c;
  auto a = counted_sample<N>(1.6180339887498949, &c);
  auto b = counted_sample<N>(0.7071067811865476, &c);
  Limbs<N, Counted> r{};
  f(a, b, r);
  return c;
}

}  // namespace detail

template <std::size_t N>
const OpCounter& add_cost() {
  static const OpCounter c = detail::measure_binary<N>(
      [](auto& a, auto& b, auto& r) { detail::add(a, b, r); });
  return c;
}

template <std::size_t N>
const OpCounter& mul_cost() {
  static const OpCounter c = detail::measure_binary<N>(
      [](auto& a, auto& b, auto& r) { detail::mul(a, b, r); });
  return c;
}

template <std::size_t N>
const OpCounter& div_cost() {
  static const OpCounter c = detail::measure_binary<N>(
      [](auto& a, auto& b, auto& r) { detail::div(a, b, r); });
  return c;
}

template <std::size_t N>
const OpCounter& sqrt_cost() {
  static const OpCounter c = detail::measure_binary<N>(
      [](auto& a, auto&, auto& r) { detail::sqrt(a, r); });
  return c;
}

OpCounter add_cost(Precision p);
OpCounter mul_cost(Precision p);
OpCounter div_cost(Precision p);
OpCounter sqrt_cost(Precision p);

// ---------------------------------------------------------------------------
// Public arithmetic.  Each call books its cost on the calling thread.

template <std::size_t N>
MultiDouble<N> md_add(const MultiDouble<N>& a, const MultiDouble<N>& b) {
  MultiDouble<N> r;
  detail::add(a.limbs, b.limbs, r.limbs);
  thread_ops() += add_cost<N>();
  return r;
}

template <std::size_t N>
constexpr MultiDouble<N> md_neg(const MultiDouble<N>& a) {
  return MultiDouble<N>(detail::neg(a.limbs));
}

template <std::size_t N>
MultiDouble<N> md_sub(const MultiDouble<N>& a, const MultiDouble<N>& b) {
  return md_add(a, md_neg(b));
}

template <std::size_t N>
MultiDouble<N> md_mul(const MultiDouble<N>& a, const MultiDouble<N>& b) {
  MultiDouble<N> r;
  detail::mul(a.limbs, b.limbs, r.limbs);
  thread_ops() += mul_cost<N>();
  return r;
}

template <std::size_t N>
MultiDouble<N> md_div(const MultiDouble<N>& a, const MultiDouble<N>& b) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "md_div by zero");
  MultiDouble<N> r;
  detail::div(a.limbs, b.limbs, r.limbs);
  thread_ops() += div_cost<N>();
  return r;
}

template <std::size_t N>
MultiDouble<N> md_sqrt(const MultiDouble<N>& a) {
  if (a.sign() < 0) throw Error(ErrorCode::NegativeOperand, "md_sqrt of a negative value");
  if (a.is_zero()) return MultiDouble<N>();
  MultiDouble<N> r;
  detail::sqrt(a.limbs, r.limbs);
  thread_ops() += sqrt_cost<N>();
  return r;
}

template <std::size_t N>
constexpr MultiDouble<N> md_abs(const MultiDouble<N>& a) {
  return a.sign() < 0 ? md_neg(a) : a;
}

// Exact scaling by a power of two; not booked as arithmetic.
template <std::size_t N>
MultiDouble<N> md_ldexp(const MultiDouble<N>& a, int e) {
  MultiDouble<N> r;
  for (std::size_t i = 0; i < N; ++i) r.limbs[i] = std::ldexp(a.limbs[i], e);
  return r;
}

// Ordering of renormalized values: the first limb that differs decides.
template <std::size_t N>
constexpr int md_compare(const MultiDouble<N>& a, const MultiDouble<N>& b) {
  for (std::size_t i = 0; i < N; ++i) {
    if (a.limbs[i] < b.limbs[i]) return -1;
    if (a.limbs[i] > b.limbs[i]) return 1;
  }
  return 0;
}

template <std::size_t N>
MultiDouble<N> operator+(const MultiDouble<N>& a, const MultiDouble<N>& b) { return md_add(a, b); }
template <std::size_t N>
MultiDouble<N> operator-(const MultiDouble<N>& a, const MultiDouble<N>& b) { return md_sub(a, b); }
template <std::size_t N>
MultiDouble<N> operator*(const MultiDouble<N>& a, const MultiDouble<N>& b) { return md_mul(a, b); }
template <std::size_t N>
MultiDouble<N> operator/(const MultiDouble<N>& a, const MultiDouble<N>& b) { return md_div(a, b); }
template <std::size_t N>
constexpr MultiDouble<N> operator-(const MultiDouble<N>& a) { return md_neg(a); }
template <std::size_t N>
MultiDouble<N>& operator+=(MultiDouble<N>& a, const MultiDouble<N>& b) { return a = md_add(a, b); }
template <std::size_t N>
MultiDouble<N>& operator-=(MultiDouble<N>& a, const MultiDouble<N>& b) { return a = md_sub(a, b); }
template <std::size_t N>
MultiDouble<N>& operator*=(MultiDouble<N>& a, const MultiDouble<N>& b) { return a = md_mul(a, b); }
template <std::size_t N>
constexpr bool operator<(const MultiDouble<N>& a, const MultiDouble<N>& b) { return md_compare(a, b) < 0; }
template <std::size_t N>
constexpr bool operator>(const MultiDouble<N>& a, const MultiDouble<N>& b) { return md_compare(a, b) > 0; }
template <std::size_t N>
constexpr bool operator<=(const MultiDouble<N>& a, const MultiDouble<N>& b) { return md_compare(a, b) <= 0; }
template <std::size_t N>
constexpr bool operator>=(const MultiDouble<N>& a, const MultiDouble<N>& b) { return md_compare(a, b) >= 0; }

// ---------------------------------------------------------------------------
// Renormalization of arbitrary raw sequences and the nonoverlap check.

inline double ulp(double x) {
  x = std::fabs(x);
  if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
  return std::nextafter(x, std::numeric_limits<double>::infinity()) - x;
}

// |b| <= ulp(a)/2 for consecutive limbs with b != 0, and no nonzero limb
// after a zero one.
template <std::size_t N>
bool is_nonoverlapping(const MultiDouble<N>& x) {
  for (std::size_t i = 0; i + 1 < N; ++i) {
    double a = x.limbs[i], b = x.limbs[i + 1];
    if (b == 0.0) continue;
    if (a == 0.0) return false;
    if (std::fabs(b) > ulp(a) / 2) return false;
  }
  return true;
}

template <std::size_t N>
MultiDouble<N> renormalize(std::span<const double> raw) {
  std::vector<double> v(raw.begin(), raw.end());
  MultiDouble<N> r;
  if (v.empty()) return r;
  // A few sweeps of sort, VecSum and extraction make any finite sequence
  // nonoverlapping; well-behaved input settles after the first.
  for (int sweep = 0; sweep < 4; ++sweep) {
    std::stable_sort(v.begin(), v.end(),
                     [](double a, double b) { return std::fabs(a) > std::fabs(b); });
    const std::size_t m = v.size();
    std::vector<double> e(m);
    double s = v[m - 1];
    for (std::size_t i = m - 1; i-- > 0;) detail::two_sum(v[i], s, s, e[i + 1]);
    e[0] = s;
    std::vector<double> out;
    double pr = e[0];
    for (std::size_t i = 1; i < m; ++i) {
      double hi, lo;
      detail::fast_two_sum(pr, e[i], hi, lo);
      if (lo == 0.0) {
        pr = hi;
      } else {
        out.push_back(hi);
        pr = lo;
      }
    }
    if (pr != 0.0 || out.empty()) out.push_back(pr);
    v = std::move(out);
    bool settled = true;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
      if (std::fabs(v[i + 1]) > ulp(v[i]) / 2) settled = false;
    if (settled) break;
  }
  for (std::size_t i = 0; i < N && i < v.size(); ++i) r.limbs[i] = v[i];
  return r;
}

template <std::size_t N>
MultiDouble<N> renormalize(std::initializer_list<double> raw) {
  return renormalize<N>(std::span<const double>(raw.begin(), raw.size()));
}

// Error-free transforms on plain doubles.
struct SumAndError {
  double s, e;
};
inline SumAndError two_sum(double a, double b) {
  SumAndError r;
  detail::two_sum(a, b, r.s, r.e);
  return r;
}
inline SumAndError two_prod(double a, double b) {
  SumAndError r;
  detail::two_prod(a, b, r.s, r.e);
  return r;
}

// Conversion between precisions: truncation or zero padding of limbs.
template <std::size_t M, std::size_t N>
constexpr MultiDouble<M> convert(const MultiDouble<N>& x) {
  MultiDouble<M> r;
  for (std::size_t i = 0; i < M && i < N; ++i) r.limbs[i] = x.limbs[i];
  return r;
}

}  // namespace mdn
