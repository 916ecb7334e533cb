#include "mdnewton/evaldiff.hpp"

#include <algorithm>

#include "mdnewton/parallel.hpp"

namespace mdn {

template <std::size_t N>
void speel(const std::vector<const Series<N>*>& xs, MonomialResult<N>& out) {
  const std::size_t m = xs.size();
  if (m == 0) throw Error(ErrorCode::EmptyMonomial, "monomial without variables");
  const std::size_t d = xs[0]->order();
  out.gradient.assign(m, Series<N>(d));
  if (m == 1) {
    out.value = *xs[0];
    out.gradient[0] = Series<N>::one(d);
    return;
  }
  if (m == 2) {
    out.value = convolve(*xs[0], *xs[1]);
    out.gradient[0] = *xs[1];
    out.gradient[1] = *xs[0];
    return;
  }
  // fwd[t] = x0 ... x(t+1), bwd[t] = x(m-1) ... x(m-2-t)
  std::vector<Series<N>> fwd(m - 1, Series<N>(d)), bwd(m - 2, Series<N>(d));
  convolve_into(*xs[0], *xs[1], fwd[0]);
  for (std::size_t t = 1; t + 1 < m; ++t) convolve_into(fwd[t - 1], *xs[t + 1], fwd[t]);
  convolve_into(*xs[m - 1], *xs[m - 2], bwd[0]);
  for (std::size_t t = 1; t + 2 < m; ++t) convolve_into(bwd[t - 1], *xs[m - 2 - t], bwd[t]);

  out.gradient[0] = bwd[m - 3];
  out.gradient[m - 1] = fwd[m - 3];
  for (std::size_t j = 1; j + 1 < m; ++j) {
    const Series<N>& right = j + 3 <= m ? bwd[m - 3 - j] : *xs[m - 1];
    if (j == 1)
      convolve_into(right, *xs[0], out.gradient[j]);
    else
      convolve_into(fwd[j - 2], right, out.gradient[j]);
  }
  out.value = std::move(fwd[m - 2]);
}

template <std::size_t N>
MonomialResult<N> speel_monomial(const std::vector<std::size_t>& vars, const SeriesVec<N>& x) {
  if (vars.empty()) throw Error(ErrorCode::EmptyMonomial, "monomial without variables");
  std::vector<std::size_t> sorted = vars;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(ErrorCode::DuplicateVariable, "variable repeated in monomial");
  if (sorted.back() >= x.dim()) throw Error(ErrorCode::IndexOutOfRange, "variable index");
  std::vector<Series<N>> gathered;
  gathered.reserve(vars.size());
  for (auto v : vars) gathered.push_back(x.component(v));
  std::vector<const Series<N>*> xs;
  for (auto& s : gathered) xs.push_back(&s);
  MonomialResult<N> r;
  speel(xs, r);
  return r;
}

namespace {

template <std::size_t N>
struct RowWork {
  std::vector<Series<N>> series;  // gathered inputs, indexed by variable
  std::vector<bool> have;
  MonomialResult<N> col1, col2;
};

template <std::size_t N>
void run_column(const ExponentMatrix& E, std::size_t i, const SeriesVec<N>& x, std::size_t d,
                RowWork<N>& w, MonomialResult<N>& out) {
  const auto vars = E.vars(i);
  std::vector<const Series<N>*> xs;
  for (auto v : vars) {
    if (!w.have[v]) {
      w.series[v] = Series<N>(d);
      x.gather_component(v, w.series[v], d);
      w.have[v] = true;
    }
    xs.push_back(&w.series[v]);
  }
  speel(xs, out);
}

template <std::size_t N>
Series<N> scaled(const Series<N>& s, const ComplexMD<N>& c) {
  Series<N> r(s.order());
  for (std::size_t k = 0; k < s.order(); ++k) r.set(k, cmul_4m(c, s[k]));
  return r;
}

// Evaluates row i: its value f_i and, when A is given, its Jacobian row.
template <std::size_t N>
Series<N> evaluate_row(const MonomialSystem<N>& sys, std::size_t i, const SeriesVec<N>& x,
                       std::size_t d, SeriesMatrix<N>* A) {
  RowWork<N> w;
  w.series.resize(x.dim());
  w.have.assign(x.dim(), false);
  run_column(sys.E1, i, x, d, w, w.col1);
  const bool scale1 = sys.columns == 2 || !sys.unit_c1();
  Series<N> value = scale1 ? scaled(w.col1.value, sys.c1[i]) : w.col1.value;
  const auto vars1 = sys.E1.vars(i);
  std::vector<std::size_t> vars2;
  if (sys.columns == 2) {
    run_column(sys.E2, i, x, d, w, w.col2);
    value = [&] {
      Series<N> v2 = scaled(w.col2.value, sys.c2[i]);
      Series<N> r(d);
      for (std::size_t k = 0; k < d; ++k) r.set(k, cadd(value[k], v2[k]));
      return r;
    }();
    vars2 = sys.E2.vars(i);
  }
  if (!A) return value;

  auto write = [&](std::size_t v, const Series<N>& g) {
    for (std::size_t k = 0; k < d; ++k) A->coeff(k).set(i, v, g[k]);
  };
  for (std::size_t a = 0; a < vars1.size(); ++a) {
    const std::size_t v = vars1[a];
    Series<N> g = scale1 ? scaled(w.col1.gradient[a], sys.c1[i]) : w.col1.gradient[a];
    auto it = std::find(vars2.begin(), vars2.end(), v);
    if (it != vars2.end()) {
      Series<N> g2 = scaled(w.col2.gradient[it - vars2.begin()], sys.c2[i]);
      for (std::size_t k = 0; k < d; ++k) g.set(k, cadd(g[k], g2[k]));
    }
    write(v, g);
  }
  for (std::size_t b = 0; b < vars2.size(); ++b) {
    const std::size_t v = vars2[b];
    if (std::find(vars1.begin(), vars1.end(), v) != vars1.end()) continue;
    write(v, scaled(w.col2.gradient[b], sys.c2[i]));
  }
  return value;
}

template <std::size_t N>
void check_shapes(const MonomialSystem<N>& sys, const SeriesVec<N>& x, std::size_t d) {
  if (x.dim() != sys.dim()) throw Error(ErrorCode::DimensionMismatch, "x dimension");
  if (d > x.order()) throw Error(ErrorCode::OrderMismatch, "evaluation order exceeds x");
}

}  // namespace

template <std::size_t N>
SeriesVec<N> system_values(const MonomialSystem<N>& sys, const SeriesVec<N>& x) {
  const std::size_t d = x.order();
  check_shapes(sys, x, d);
  SeriesVec<N> f(x.dim(), d);
  std::vector<Series<N>> rows(x.dim());
  parallel_for(0, x.dim(), [&](std::size_t i) { rows[i] = evaluate_row<N>(sys, i, x, d, nullptr); });
  for (std::size_t i = 0; i < x.dim(); ++i) f.set_component(i, rows[i]);
  return f;
}

template <std::size_t N>
Evaluation<N> evaluate_system(const MonomialSystem<N>& sys, const SeriesVec<N>& x, std::size_t d) {
  if (d == 0) d = x.order();
  check_shapes(sys, x, d);
  if (sys.rhs.order() < d) throw Error(ErrorCode::OrderMismatch, "rhs order below evaluation order");
  const std::size_t n = x.dim();
  Evaluation<N> ev{SeriesMatrix<N>(n, d), SeriesVec<N>(n, d)};
  parallel_for(0, n, [&](std::size_t i) {
    Series<N> f = evaluate_row(sys, i, x, d, &ev.A);
    for (std::size_t k = 0; k < d; ++k) ev.b.set(i, k, csub(sys.rhs.get(i, k), f[k]));
  });
  return ev;
}

double reference_mul_cost(Precision p) {
  switch (p.limbs) {
    case 2: return 23;
    case 4: return 336;
    case 8: return 1742;
  }
  return 1;
}

OpCounter add_cost(Precision p) {
  switch (p.limbs) {
    case 1: return add_cost<1>();
    case 2: return add_cost<2>();
    case 4: return add_cost<4>();
    case 8: return add_cost<8>();
  }
  throw Error(ErrorCode::InvalidArgument, "precision");
}
OpCounter mul_cost(Precision p) {
  switch (p.limbs) {
    case 1: return mul_cost<1>();
    case 2: return mul_cost<2>();
    case 4: return mul_cost<4>();
    case 8: return mul_cost<8>();
  }
  throw Error(ErrorCode::InvalidArgument, "precision");
}
OpCounter div_cost(Precision p) {
  switch (p.limbs) {
    case 1: return div_cost<1>();
    case 2: return div_cost<2>();
    case 4: return div_cost<4>();
    case 8: return div_cost<8>();
  }
  throw Error(ErrorCode::InvalidArgument, "precision");
}
OpCounter sqrt_cost(Precision p) {
  switch (p.limbs) {
    case 1: return sqrt_cost<1>();
    case 2: return sqrt_cost<2>();
    case 4: return sqrt_cost<4>();
    case 8: return sqrt_cost<8>();
  }
  throw Error(ErrorCode::InvalidArgument, "precision");
}

ArithmeticIntensity intensity_report(std::size_t n, std::size_t d, Precision p) {
  ArithmeticIntensity r;
  const double nn = static_cast<double>(n), dd = static_cast<double>(d);
  const double base = (3 * nn - 5) * dd * dd / (nn * dd);
  r.predicted_factor = reference_mul_cost(p) / p.limbs;
  r.predicted = base * r.predicted_factor;
  r.measured_factor = static_cast<double>(mul_cost(p).total()) / p.limbs;
  r.measured = base * r.measured_factor;
  r.matvec_intensity = nn * nn * dd * dd / ((nn + 1) * nn * dd);
  r.convolution_intensity = base;
  return r;
}

#define MDN_INSTANTIATE(N)                                                                  \
  template void speel<N>(const std::vector<const Series<N>*>&, MonomialResult<N>&);         \
  template MonomialResult<N> speel_monomial<N>(const std::vector<std::size_t>&,             \
                                               const SeriesVec<N>&);                        \
  template SeriesVec<N> system_values<N>(const MonomialSystem<N>&, const SeriesVec<N>&);    \
  template Evaluation<N> evaluate_system<N>(const MonomialSystem<N>&, const SeriesVec<N>&, \
                                            std::size_t);
MDN_INSTANTIATE(1)
MDN_INSTANTIATE(2)
MDN_INSTANTIATE(4)
MDN_INSTANTIATE(8)
#undef MDN_INSTANTIATE

}  // namespace mdn
