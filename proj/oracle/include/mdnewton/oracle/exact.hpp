#pragma once

// Exact rational mirrors of the library types.  Every double is a dyadic
// rational, so sums and products of limbs are represented without error.

#include <gmpxx.h>

#include <cstddef>
#include <vector>

#include "mdnewton/complexmd.hpp"
#include "mdnewton/matrix.hpp"
#include "mdnewton/series.hpp"

namespace mdn::oracle {

inline mpq_class exact(double x) {
  mpq_class q(x);  // exact: mpq_set_d keeps every bit
  return q;
}

template <std::size_t N>
mpq_class exact(const MultiDouble<N>& a) {
  mpq_class s(0);
  for (double l : a.limbs) s += exact(l);
  return s;
}

struct ExactComplex {
  mpq_class re{0}, im{0};
};

inline ExactComplex operator+(const ExactComplex& a, const ExactComplex& b) {
  return {a.re + b.re, a.im + b.im};
}
inline ExactComplex operator-(const ExactComplex& a, const ExactComplex& b) {
  return {a.re - b.re, a.im - b.im};
}
inline ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline ExactComplex operator/(const ExactComplex& a, const ExactComplex& b) {
  const mpq_class den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}
inline bool is_zero(const ExactComplex& z) { return sgn(z.re) == 0 && sgn(z.im) == 0; }

template <std::size_t N>
ExactComplex exact(const ComplexMD<N>& z) {
  return {exact(z.re), exact(z.im)};
}

// |re| + |im| rounded to double.
inline double abs1(const ExactComplex& z) {
  mpq_class s = abs(z.re) + abs(z.im);
  return s.get_d();
}

// |a - b| / |b| for b != 0, else |a|.
inline double relative_error(const mpq_class& a, const mpq_class& b) {
  mpq_class diff = abs(a - b);
  if (sgn(b) == 0) return diff.get_d();
  mpq_class r = diff / abs(b);
  return r.get_d();
}

using ExactSeries = std::vector<ExactComplex>;

template <std::size_t N>
ExactSeries exact(const Series<N>& s) {
  ExactSeries r(s.order());
  for (std::size_t k = 0; k < s.order(); ++k) r[k] = exact(s[k]);
  return r;
}

// Truncated product, expanded coefficient by coefficient.
inline ExactSeries multiply(const ExactSeries& a, const ExactSeries& b) {
  ExactSeries c(a.size());
  for (std::size_t k = 0; k < c.size(); ++k)
    for (std::size_t j = 0; j <= k; ++j) c[k] = c[k] + a[j] * b[k - j];
  return c;
}

inline ExactSeries one_series(std::size_t d) {
  ExactSeries s(d);
  if (d > 0) s[0].re = 1;
  return s;
}

// sum_k (alpha t)^k / k! truncated at d.
inline ExactSeries exp_series(const ExactComplex& alpha, std::size_t d) {
  ExactSeries s(d);
  if (d == 0) return s;
  s[0].re = 1;
  for (std::size_t k = 1; k < d; ++k) {
    s[k] = s[k - 1] * alpha;
    s[k].re /= static_cast<unsigned long>(k);
    s[k].im /= static_cast<unsigned long>(k);
  }
  return s;
}

// Largest |re| + |im| of the coefficient differences.
template <std::size_t N>
double max_abs_diff(const Series<N>& a, const ExactSeries& b) {
  double m = 0;
  for (std::size_t k = 0; k < b.size(); ++k) {
    const double e = abs1(exact(a[k]) - b[k]);
    if (e > m) m = e;
  }
  return m;
}

// Dense square matrix of exact complex entries, row major.
struct ExactMatrix {
  std::size_t n = 0;
  std::vector<ExactComplex> a;
  explicit ExactMatrix(std::size_t n_ = 0) : n(n_), a(n_ * n_) {}
  ExactComplex& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  const ExactComplex& operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

// Gaussian elimination with pivoting on the first nonzero entry.  Exact,
// so no numerical pivoting is needed.  Throws SingularDiagonal.
std::vector<ExactComplex> gaussian_solve(ExactMatrix M, std::vector<ExactComplex> rhs);

// The (n d) x (n d) block lower triangular Toeplitz matrix with blocks
// A_{k-j}, assembled explicitly.
template <std::size_t N>
ExactMatrix block_toeplitz(const SeriesMatrix<N>& A, std::size_t d) {
  const std::size_t n = A.dim();
  ExactMatrix M(n * d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t j = 0; j <= k; ++j)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) M(k * n + r, j * n + c) = exact(A.coeff(k - j).get(r, c));
  return M;
}

// Solution of the block system for the stacked right-hand side b, as
// coefficient vectors x[k][i].
template <std::size_t N>
std::vector<std::vector<ExactComplex>> dense_block_solve(const SeriesMatrix<N>& A,
                                                         const SeriesVec<N>& b) {
  const std::size_t n = A.dim(), d = b.order();
  std::vector<ExactComplex> rhs(n * d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < n; ++i) rhs[k * n + i] = exact(b.get(i, k));
  auto sol = gaussian_solve(block_toeplitz(A, d), std::move(rhs));
  std::vector<std::vector<ExactComplex>> x(d, std::vector<ExactComplex>(n));
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < n; ++i) x[k][i] = sol[k * n + i];
  return x;
}

}  // namespace mdn::oracle
