#include "mdnewton/newton.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "mdnewton/parallel.hpp"

namespace mdn {

std::vector<std::size_t> staggered_orders(std::size_t d_max) {
  std::vector<std::size_t> s;
  if (d_max == 0) return s;
  std::size_t d = 1;
  for (;;) {
    s.push_back(std::min(d, d_max));
    if (d >= d_max) break;
    d = d + 1 + d / 2;
  }
  return s;
}

namespace {

template <std::size_t N>
std::vector<std::size_t> sample_rows(std::size_t n, std::size_t count, Rng& rng) {
  std::vector<std::size_t> rows;
  if (count == 0 || count >= n) return rows;
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.next() % (n - i));
    std::swap(all[i], all[j]);
    rows.push_back(all[i]);
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

}  // namespace

template <std::size_t N>
NewtonResult<N> run_newton(const MonomialSystem<N>& sys, const SeriesVec<N>& x0,
                           const NewtonOptions& options) {
  const auto t_start = std::chrono::steady_clock::now();
  const Tally tally_start = tally();
  const std::size_t n = sys.dim();
  const std::size_t d_max = sys.order();
  if (x0.dim() != n) throw Error(ErrorCode::DimensionMismatch, "start dimension");

  NewtonResult<N> res;
  KernelLedger* L = &res.ledger;
  const MultiDouble<N> tol(options.tolerance ? *options.tolerance : default_tolerance<N>());
  res.tolerance = tol.approx();
  const double sqrt_eps = std::sqrt(eps_v<N>);

  SeriesVec<N> x = x0.resized(d_max);
  const auto schedule = staggered_orders(d_max);
  std::size_t level = 0;
  std::size_t d = schedule[0];
  std::size_t kstar = 0;

  std::optional<QRFactors<N>> factors;
  bool dx0_large = false;  // latest ||dx_0|| above sqrt(eps) ||x_0||
  Rng sampler(options.sample_seed);

  auto finish = [&](NewtonStatus status, int iterations) {
    res.status = status;
    res.iterations = iterations;
    res.x = std::move(x);
    const Tally delta = tally() - tally_start;
    res.ops = delta.ops;
    res.conv = delta.conv;
    res.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return std::move(res);
  };

  for (int it = 1; it <= options.max_iterations; ++it) {
    IterationRecord rec;
    rec.iteration = it;
    Evaluation<N> ev;
    std::vector<MultiDouble<N>> bnorms;
    // Stages that converge during this iteration still receive this
    // iteration's correction; they are frozen from the next one on.
    const std::size_t first = kstar;
    bool all_done = false;
    // Evaluate; retire converged stages; raise the order while everything
    // active has converged.
    for (;;) {
      {
        auto s = KernelLedger::scope(L, KernelClass::Convolution);
        ev = evaluate_system(sys, x, d);
      }
      {
        auto s = KernelLedger::scope(L, KernelClass::Residuals);
        bnorms.resize(d);
        parallel_for(kstar, d, [&](std::size_t k) { bnorms[k] = vector_norm1(ev.b.coeff(k)); });
      }
      while (kstar < d && bnorms[kstar] < tol) ++kstar;
      if (kstar < d) break;
      if (d == d_max) {
        all_done = true;
        break;
      }
      d = schedule[++level];
    }
    rec.order = d;
    rec.first_active = first;
    MultiDouble<N> bmax;
    for (std::size_t k = first; k < d; ++k) {
      rec.stage_b_norms.push_back(bnorms[k].approx());
      if (bnorms[k] > bmax) bmax = bnorms[k];
    }
    rec.b_norm = bmax.approx();

    if (!factors || (first == 0 && dx0_large)) {
      factors = householder_qr(DenseMatrix<N>::from_planar(ev.A.coeff(0)), L);
      ++res.qr_count;
      rec.qr_refactored = true;
      res.min_r_diagonal = factors->min_diagonal().approx();
    }

    const SeriesVec<N> b_orig = ev.b;
    SeriesVec<N> dx(n, d);
    toeplitz_solve(ev.A, ev.b, *factors, first, d, dx, L);

    {
      const auto rows = sample_rows<N>(n, options.residual_sample, sampler);
      rec.residual = residual(ev.A, dx, b_orig, rows, first, d, L).approx();
    }
    {
      auto s = KernelLedger::scope(L, KernelClass::Updates);
      parallel_for(first, d, [&](std::size_t k) {
        for (std::size_t i = 0; i < n; ++i) x.set(i, k, cadd(x.get(i, k), dx.get(i, k)));
      });
    }
    MultiDouble<N> dxmax;
    {
      auto s = KernelLedger::scope(L, KernelClass::Residuals);
      std::vector<MultiDouble<N>> dn(d);
      parallel_for(first, d, [&](std::size_t k) { dn[k] = vector_norm1(dx.coeff(k)); });
      for (std::size_t k = first; k < d; ++k) {
        rec.stage_dx_norms.push_back(dn[k].approx());
        if (dn[k] > dxmax) dxmax = dn[k];
      }
      if (first == 0) {
        const MultiDouble<N> x0n = vector_norm1(x.coeff(0));
        dx0_large = dn[0] > md_mul(MultiDouble<N>(sqrt_eps), x0n);
      }
    }
    rec.dx_norm = dxmax.approx();
    for (auto c : kKernelClasses)
      rec.class_seconds[static_cast<std::size_t>(c)] = res.ledger.at(c).seconds;
    res.log.push_back(rec);
    if (options.on_iteration) options.on_iteration(rec);

    if (all_done || (d == d_max && dxmax < tol)) return finish(NewtonStatus::Converged, it);
  }
  return finish(NewtonStatus::MaxIterationsExceeded, options.max_iterations);
}

#define MDN_INSTANTIATE(N)                                                               \
  template NewtonResult<N> run_newton<N>(const MonomialSystem<N>&, const SeriesVec<N>&, \
                                         const NewtonOptions&);
MDN_INSTANTIATE(1)
MDN_INSTANTIATE(2)
MDN_INSTANTIATE(4)
MDN_INSTANTIATE(8)
#undef MDN_INSTANTIATE

}  // namespace mdn
