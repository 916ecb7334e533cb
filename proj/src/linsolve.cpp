#include "mdnewton/linsolve.hpp"

#include <algorithm>

#include "mdnewton/parallel.hpp"

namespace mdn {

template <std::size_t N>
DenseMatrix<N> DenseMatrix<N>::from_planar(const PlanarMatrix<N>& m) {
  DenseMatrix<N> d(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) d(i, j) = m.get(i, j);
  return d;
}

template <std::size_t N>
DenseMatrix<N> DenseMatrix<N>::identity(std::size_t n) {
  DenseMatrix<N> d(n);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = ComplexMD<N>(1.0);
  return d;
}

namespace {

// z <- H z for H = I - beta v v^H acting on rows k..n-1.
template <std::size_t N>
void apply_reflector(const std::vector<ComplexMD<N>>& v, const MultiDouble<N>& beta, std::size_t k,
                     std::vector<ComplexMD<N>>& z) {
  if (beta.is_zero()) return;
  ComplexMD<N> w;
  for (std::size_t i = 0; i < v.size(); ++i) w = cadd(w, cmul_4m(conj(v[i]), z[k + i]));
  w = cscale(w, beta);
  for (std::size_t i = 0; i < v.size(); ++i) z[k + i] = csub(z[k + i], cmul_4m(w, v[i]));
}

}  // namespace

template <std::size_t N>
DenseMatrix<N> QRFactors<N>::assemble_q() const {
  DenseMatrix<N> Q(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<ComplexMD<N>> z(n);
    z[j] = ComplexMD<N>(1.0);
    for (std::size_t k = n; k-- > 0;) apply_reflector(v[k], beta[k], k, z);
    for (std::size_t i = 0; i < n; ++i) Q(i, j) = z[i];
  }
  return Q;
}

template <std::size_t N>
QRFactors<N> householder_qr(const DenseMatrix<N>& A0, KernelLedger* ledger) {
  auto scope = KernelLedger::scope(ledger, KernelClass::Qr);
  const std::size_t n = A0.n;
  QRFactors<N> f;
  f.n = n;
  f.R = A0;
  f.v.resize(n);
  f.beta.resize(n);
  DenseMatrix<N>& R = f.R;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<ComplexMD<N>>& v = f.v[k];
    v.assign(n - k, ComplexMD<N>());
    MultiDouble<N> tail;  // sum of |R_ik|^2 for i > k
    for (std::size_t i = k + 1; i < n; ++i) tail = md_add(tail, cnorm2(R(i, k)));
    const ComplexMD<N> x0 = R(k, k);
    const MultiDouble<N> sumsq = md_add(cnorm2(x0), tail);
    if (sumsq.is_zero()) continue;  // zero column: H_k = I
    const MultiDouble<N> normx = md_sqrt(sumsq);
    const MultiDouble<N> a0 = cabs(x0);
    // alpha = -phase(x0) |x|, so that x0 - alpha never cancels.
    ComplexMD<N> alpha = a0.is_zero() ? ComplexMD<N>(md_neg(normx))
                                      : cneg(ComplexMD<N>(md_mul(md_div(x0.re, a0), normx),
                                                          md_mul(md_div(x0.im, a0), normx)));
    v[0] = csub(x0, alpha);
    for (std::size_t i = k + 1; i < n; ++i) v[i - k] = R(i, k);
    const MultiDouble<N> vhv = md_add(cnorm2(v[0]), tail);
    f.beta[k] = md_div(MultiDouble<N>(2.0), vhv);
    R(k, k) = alpha;
    for (std::size_t i = k + 1; i < n; ++i) R(i, k) = ComplexMD<N>();
    parallel_for(k + 1, n, [&](std::size_t j) {
      ComplexMD<N> w;
      for (std::size_t i = k; i < n; ++i) w = cadd(w, cmul_4m(conj(v[i - k]), R(i, j)));
      w = cscale(w, f.beta[k]);
      for (std::size_t i = k; i < n; ++i) R(i, j) = csub(R(i, j), cmul_4m(w, v[i - k]));
    });
  }
  for (std::size_t i = 0; i < n; ++i) {
    const MultiDouble<N> a = cabs(R(i, i));
    if (i == 0 || a < f.min_diag) f.min_diag = a;
  }
  return f;
}

template <std::size_t N>
std::vector<ComplexMD<N>> qhb(const QRFactors<N>& f, const std::vector<ComplexMD<N>>& b,
                              KernelLedger* ledger) {
  if (b.size() != f.n) throw Error(ErrorCode::DimensionMismatch, "qhb: vector length");
  auto scope = KernelLedger::scope(ledger, KernelClass::Qhb);
  std::vector<ComplexMD<N>> z = b;
  for (std::size_t k = 0; k < f.n; ++k) apply_reflector(f.v[k], f.beta[k], k, z);
  return z;
}

template <std::size_t N>
std::vector<ComplexMD<N>> back_substitute(const DenseMatrix<N>& R,
                                          const std::vector<ComplexMD<N>>& y,
                                          KernelLedger* ledger) {
  const std::size_t n = R.n;
  if (y.size() != n) throw Error(ErrorCode::DimensionMismatch, "back_substitute: vector length");
  auto scope = KernelLedger::scope(ledger, KernelClass::Bs);
  std::vector<ComplexMD<N>> x(n);
  for (std::size_t i = n; i-- > 0;) {
    if (R(i, i).is_zero()) throw SingularDiagonalError(i);
    ComplexMD<N> s = y[i];
    for (std::size_t j = i + 1; j < n; ++j) s = csub(s, cmul_4m(R(i, j), x[j]));
    x[i] = cdiv(s, R(i, i));
  }
  return x;
}

template <std::size_t N>
std::vector<ComplexMD<N>> to_entries(const PlanarVector<N>& v) {
  std::vector<ComplexMD<N>> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v.get(i);
  return r;
}

template <std::size_t N>
PlanarVector<N> to_planar(const std::vector<ComplexMD<N>>& v) {
  PlanarVector<N> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r.set(i, v[i]);
  return r;
}

template <std::size_t N>
void matvec_sub(const PlanarMatrix<N>& M, const PlanarVector<N>& x, PlanarVector<N>& y) {
  const std::size_t n = M.dim();
  if (x.size() != n || y.size() != n) throw Error(ErrorCode::DimensionMismatch, "matvec_sub");
  kernels::matvec_sub<N>(M.data(), x.data(), y.data(), n, 0, n);
  thread_ops() += coefficient_product_cost<N>().scaled(n * n);
}

template <std::size_t N>
void toeplitz_solve(const SeriesMatrix<N>& A, SeriesVec<N>& b, const QRFactors<N>& f,
                    std::size_t k0, std::size_t k1, SeriesVec<N>& dx, KernelLedger* ledger) {
  const std::size_t n = A.dim();
  if (b.dim() != n || dx.dim() != n || f.n != n)
    throw Error(ErrorCode::DimensionMismatch, "toeplitz_solve dimensions");
  if (k1 > A.order() || k1 > b.order() || k1 > dx.order())
    throw Error(ErrorCode::OrderMismatch, "toeplitz_solve stage range");
  for (std::size_t k = k0; k < k1; ++k) {
    dx.coeff(k) = to_planar(qr_solve(f, to_entries(b.coeff(k)), ledger));
    if (k + 1 < k1) {
      auto scope = KernelLedger::scope(ledger, KernelClass::Updates);
      parallel_for(k + 1, k1, [&](std::size_t kk) { matvec_sub(A.coeff(kk - k), dx.coeff(k), b.coeff(kk)); });
    }
  }
}

template <std::size_t N>
SeriesVec<N> toeplitz_solve(const SeriesMatrix<N>& A, const SeriesVec<N>& b, const QRFactors<N>& f,
                            KernelLedger* ledger) {
  SeriesVec<N> work = b;
  SeriesVec<N> dx(b.dim(), b.order());
  toeplitz_solve(A, work, f, 0, b.order(), dx, ledger);
  return dx;
}

template <std::size_t N>
MultiDouble<N> residual(const SeriesMatrix<N>& A, const SeriesVec<N>& dx, const SeriesVec<N>& b,
                        const std::vector<std::size_t>& rows, std::size_t k0, std::size_t k1,
                        KernelLedger* ledger) {
  const std::size_t n = b.dim();
  if (A.dim() != n || dx.dim() != n) throw Error(ErrorCode::DimensionMismatch, "residual dimensions");
  k1 = std::min(k1, b.order());
  if (k1 > A.order() || k1 > dx.order()) throw Error(ErrorCode::OrderMismatch, "residual order");
  for (auto i : rows)
    if (i >= n) throw Error(ErrorCode::IndexOutOfRange, "residual row");
  auto scope = KernelLedger::scope(ledger, KernelClass::Residuals);
  std::vector<MultiDouble<N>> norms(k1 > k0 ? k1 - k0 : 0);
  parallel_for(k0, k1, [&](std::size_t k) {
    PlanarVector<N> r = b.coeff(k);
    for (std::size_t i = k0; i <= k; ++i) {
      if (rows.empty()) {
        matvec_sub(A.coeff(k - i), dx.coeff(i), r);
      } else {
        for (auto row : rows)
          kernels::matvec_sub<N>(A.coeff(k - i).data(), dx.coeff(i).data(), r.data(), n, row,
                                 row + 1);
        thread_ops() += coefficient_product_cost<N>().scaled(rows.size() * n);
      }
    }
    MultiDouble<N> s;
    if (rows.empty()) {
      s = vector_norm1(r);
    } else {
      for (auto row : rows) s = md_add(s, cabs1(r.get(row)));
    }
    norms[k - k0] = s;
  });
  MultiDouble<N> m;
  for (const auto& s : norms)
    if (s > m) m = s;
  return m;
}

#define MDN_INSTANTIATE(N)                                                                      \
  template struct DenseMatrix<N>;                                                               \
  template struct QRFactors<N>;                                                                 \
  template QRFactors<N> householder_qr<N>(const DenseMatrix<N>&, KernelLedger*);               \
  template std::vector<ComplexMD<N>> qhb<N>(const QRFactors<N>&, const std::vector<ComplexMD<N>>&, \
                                            KernelLedger*);                                     \
  template std::vector<ComplexMD<N>> back_substitute<N>(                                        \
      const DenseMatrix<N>&, const std::vector<ComplexMD<N>>&, KernelLedger*);                  \
  template std::vector<ComplexMD<N>> to_entries<N>(const PlanarVector<N>&);                     \
  template PlanarVector<N> to_planar<N>(const std::vector<ComplexMD<N>>&);                      \
  template void matvec_sub<N>(const PlanarMatrix<N>&, const PlanarVector<N>&, PlanarVector<N>&); \
  template void toeplitz_solve<N>(const SeriesMatrix<N>&, SeriesVec<N>&, const QRFactors<N>&,   \
                                  std::size_t, std::size_t, SeriesVec<N>&, KernelLedger*);      \
  template SeriesVec<N> toeplitz_solve<N>(const SeriesMatrix<N>&, const SeriesVec<N>&,          \
                                          const QRFactors<N>&, KernelLedger*);                  \
  template MultiDouble<N> residual<N>(const SeriesMatrix<N>&, const SeriesVec<N>&,              \
                                      const SeriesVec<N>&, const std::vector<std::size_t>&,     \
                                      std::size_t, std::size_t, KernelLedger*);
MDN_INSTANTIATE(1)
MDN_INSTANTIATE(2)
MDN_INSTANTIATE(4)
MDN_INSTANTIATE(8)
#undef MDN_INSTANTIATE

}  // namespace mdn
