#pragma once

#include <cstddef>
#include <vector>

#include "mdnewton/ledger.hpp"
#include "mdnewton/matrix.hpp"
#include "mdnewton/series.hpp"

namespace mdn {

// Dense complex matrix in entry form, row major.  Used where the O(n^3)
// factorization does not warrant planar storage.
template <std::size_t N>
struct DenseMatrix {
  std::size_t n = 0;
  std::vector<ComplexMD<N>> a;

  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n_) : n(n_), a(n_ * n_) {}
  ComplexMD<N>& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  const ComplexMD<N>& operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }

  static DenseMatrix from_planar(const PlanarMatrix<N>& m);
  static DenseMatrix identity(std::size_t n);
};

// A = Q R with Q = H_0 H_1 ... H_{n-1}, H_k = I - beta_k v_k v_k^H, where
// v_k is zero above row k.
template <std::size_t N>
struct QRFactors {
  std::size_t n = 0;
  std::vector<std::vector<ComplexMD<N>>> v;  // v[k] holds rows k..n-1
  std::vector<MultiDouble<N>> beta;
  DenseMatrix<N> R;
  MultiDouble<N> min_diag;  // filled by householder_qr

  // Smallest |R_ii|, the rank-deficiency indicator.
  MultiDouble<N> min_diagonal() const { return min_diag; }
  DenseMatrix<N> assemble_q() const;
};

template <std::size_t N>
QRFactors<N> householder_qr(const DenseMatrix<N>& A0, KernelLedger* ledger = nullptr);

template <std::size_t N>
QRFactors<N> householder_qr(const PlanarMatrix<N>& A0, KernelLedger* ledger = nullptr) {
  return householder_qr(DenseMatrix<N>::from_planar(A0), ledger);
}

// Q^H b.  Throws DimensionMismatch.
template <std::size_t N>
std::vector<ComplexMD<N>> qhb(const QRFactors<N>& f, const std::vector<ComplexMD<N>>& b,
                              KernelLedger* ledger = nullptr);

// Solves R x = y.  Throws SingularDiagonalError on an exactly zero pivot.
template <std::size_t N>
std::vector<ComplexMD<N>> back_substitute(const DenseMatrix<N>& R,
                                          const std::vector<ComplexMD<N>>& y,
                                          KernelLedger* ledger = nullptr);

// Least-squares solve of A0 x = b through the factors.
template <std::size_t N>
std::vector<ComplexMD<N>> qr_solve(const QRFactors<N>& f, const std::vector<ComplexMD<N>>& b,
                                   KernelLedger* ledger = nullptr) {
  return back_substitute(f.R, qhb(f, b, ledger), ledger);
}

template <std::size_t N>
std::vector<ComplexMD<N>> to_entries(const PlanarVector<N>& v);
template <std::size_t N>
PlanarVector<N> to_planar(const std::vector<ComplexMD<N>>& v);

// y -= M x on planar data (every row).
template <std::size_t N>
void matvec_sub(const PlanarMatrix<N>& M, const PlanarVector<N>& x, PlanarVector<N>& y);

// Staged forward substitution for the block lower triangular Toeplitz
// system over stages [k0, k1).  b is updated in place: after stage i is
// solved, b_k -= A_{k-i} dx_i for every later active k.  Stages outside
// the range are left untouched in dx and never read.
template <std::size_t N>
void toeplitz_solve(const SeriesMatrix<N>& A, SeriesVec<N>& b, const QRFactors<N>& f,
                    std::size_t k0, std::size_t k1, SeriesVec<N>& dx,
                    KernelLedger* ledger = nullptr);

// Convenience form over all stages with a fresh dx.
template <std::size_t N>
SeriesVec<N> toeplitz_solve(const SeriesMatrix<N>& A, const SeriesVec<N>& b, const QRFactors<N>& f,
                            KernelLedger* ledger = nullptr);

// series_norm of b - A dx, truncated at the order of b, over stages
// [k0, k1) (default all).  With rows nonempty only those equations are
// formed and measured.
template <std::size_t N>
MultiDouble<N> residual(const SeriesMatrix<N>& A, const SeriesVec<N>& dx, const SeriesVec<N>& b,
                        const std::vector<std::size_t>& rows = {}, std::size_t k0 = 0,
                        std::size_t k1 = static_cast<std::size_t>(-1),
                        KernelLedger* ledger = nullptr);

}  // namespace mdn
