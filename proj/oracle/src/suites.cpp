#include "mdnewton/oracle/suites.hpp"

#include <algorithm>
#include <cstdio>

#include "mdnewton/evaldiff.hpp"
#include "mdnewton/linsolve.hpp"
#include "mdnewton/oracle/exact.hpp"

namespace mdn::oracle {

std::vector<ExactComplex> gaussian_solve(ExactMatrix M, std::vector<ExactComplex> rhs) {
  const std::size_t n = M.n;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero(M(p, c))) ++p;
    if (p == n) throw SingularDiagonalError(c);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(M(p, j), M(c, j));
      std::swap(rhs[p], rhs[c]);
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      if (is_zero(M(r, c))) continue;
      const ExactComplex f = M(r, c) / M(c, c);
      for (std::size_t j = c; j < n; ++j) M(r, j) = M(r, j) - f * M(c, j);
      rhs[r] = rhs[r] - f * rhs[c];
    }
  }
  std::vector<ExactComplex> x(n);
  for (std::size_t i = n; i-- > 0;) {
    ExactComplex s = rhs[i];
    for (std::size_t j = i + 1; j < n; ++j) s = s - M(i, j) * x[j];
    x[i] = s / M(i, i);
  }
  return x;
}

namespace {

std::string format(const char* fmt, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, fmt, a, b);
  return buf;
}

template <std::size_t N>
MultiDouble<N> faulty_mul(const MultiDouble<N>& a, const MultiDouble<N>& b) {
  MultiDouble<N> r = md_mul(a, b);
  return md_add(r, MultiDouble<N>(r.limbs[0] * 64 * eps_v<N>));
}

template <std::size_t N>
void check_precision(const DyadicOptions& o, std::vector<OpCheck>& out) {
  Rng rng(o.seed + N);
  OpCheck add{Precision{int(N)}, "add", o.pairs, 0, 0};
  OpCheck mul{Precision{int(N)}, "mul", o.pairs, 0, 0};
  const double e = eps_v<N>;
  for (std::size_t i = 0; i < o.pairs; ++i) {
    const MultiDouble<N> a = random_dyadic<N>(rng), b = random_dyadic<N>(rng);
    const mpq_class qa = exact(a), qb = exact(b);
    const double ea = relative_error(exact(md_add(a, b)), qa + qb) / e;
    const MultiDouble<N> m = o.fault_in_mul ? faulty_mul(a, b) : md_mul(a, b);
    const double em = relative_error(exact(m), qa * qb) / e;
    add.worst_eps = std::max(add.worst_eps, ea);
    mul.worst_eps = std::max(mul.worst_eps, em);
    if (ea > 4) ++add.failures;
    if (em > 4) ++mul.failures;
  }
  out.push_back(add);
  out.push_back(mul);
}

// Random series with coefficients of modulus below one.
template <std::size_t N>
SeriesVec<N> random_point(std::size_t n, std::size_t d, Rng& rng) {
  SeriesVec<N> x(n, d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < n; ++i)
      x.set(i, k, ComplexMD<N>(MultiDouble<N>(rng.uniform(-1, 1)), MultiDouble<N>(rng.uniform(-1, 1))));
  return x;
}

// Largest absolute difference between evaluate_system and the expansion.
template <std::size_t N>
double brute_force_difference(const MonomialSystem<N>& sys, const SeriesVec<N>& x) {
  const std::size_t n = sys.dim(), d = x.order();
  const Evaluation<N> ev = evaluate_system(sys, x);
  std::vector<ExactSeries> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = exact(x.component(i));
  double worst = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ExactSeries f(d);
    std::vector<ExactSeries> grad(n, ExactSeries(d));
    auto add_column = [&](const ExponentMatrix& E, const ComplexMD<N>& c) {
      const ExactComplex ce = exact(c);
      const auto vars = E.vars(i);
      ExactSeries p = one_series(d);
      for (auto v : vars) p = multiply(p, xs[v]);
      for (std::size_t k = 0; k < d; ++k) f[k] = f[k] + p[k] * ce;
      for (auto v : vars) {
        ExactSeries g = one_series(d);
        for (auto w : vars)
          if (w != v) g = multiply(g, xs[w]);
        for (std::size_t k = 0; k < d; ++k) grad[v][k] = grad[v][k] + g[k] * ce;
      }
    };
    add_column(sys.E1, sys.c1[i]);
    if (sys.columns == 2) add_column(sys.E2, sys.c2[i]);
    for (std::size_t k = 0; k < d; ++k) {
      const ExactComplex b = exact(sys.rhs.get(i, k)) - f[k];
      worst = std::max(worst, abs1(exact(ev.b.get(i, k)) - b));
      for (std::size_t j = 0; j < n; ++j)
        worst = std::max(worst, abs1(exact(ev.A.coeff(k).get(i, j)) - grad[j][k]));
    }
  }
  return worst;
}

// speel_monomial against exact products; error relative to the product of
// the coefficient magnitudes.
template <std::size_t N>
void speel_check(std::size_t m, std::size_t d, Rng& rng, SuiteResult& r) {
  const SeriesVec<N> x = random_point<N>(m, d, rng);
  std::vector<std::size_t> vars(m);
  for (std::size_t j = 0; j < m; ++j) vars[j] = j;
  const MonomialResult<N> res = speel_monomial(vars, x);
  std::vector<ExactSeries> xs(m);
  for (std::size_t j = 0; j < m; ++j) xs[j] = exact(x.component(j));
  // Scale: magnitudes here are at most 2^(m) d^(m-1); use that bound.
  const double scale = std::pow(2.0, double(m)) * std::pow(double(d), double(m - 1));
  const double tol = 8 * eps_v<N> * double(d) * double(m) * scale;
  auto check = [&](const Series<N>& got, const ExactSeries& want) {
    const double e = max_abs_diff(got, want);
    ++r.cases;
    r.worst = std::max(r.worst, e / (eps_v<N> * scale));
    if (e > tol) ++r.failures;
  };
  ExactSeries value = one_series(d);
  for (auto& s : xs) value = multiply(value, s);
  check(res.value, value);
  for (std::size_t v = 0; v < m; ++v) {
    ExactSeries g = one_series(d);
    for (std::size_t w = 0; w < m; ++w)
      if (w != v) g = multiply(g, xs[w]);
    check(res.gradient[v], g);
  }
}

template <std::size_t N>
double exp_product_error(Rng& rng, std::size_t d) {
  const double ta = rng.uniform01(), tb = rng.uniform01();
  const ComplexMD<N> a(MultiDouble<N>(std::cos(6.283185307179586 * ta)),
                       MultiDouble<N>(std::sin(6.283185307179586 * ta)));
  const ComplexMD<N> b(MultiDouble<N>(std::cos(6.283185307179586 * tb)),
                       MultiDouble<N>(std::sin(6.283185307179586 * tb)));
  const Series<N> prod = convolve(mdn::exp_series(a, d), mdn::exp_series(b, d));
  return max_abs_diff(prod, exp_series(exact(a) + exact(b), d));
}

}  // namespace

std::vector<OpCheck> dyadic_checks(const DyadicOptions& options) {
  std::vector<OpCheck> out;
  check_precision<2>(options, out);
  check_precision<4>(options, out);
  check_precision<8>(options, out);
  return out;
}

SuiteResult dyadic_suite(const DyadicOptions& options) {
  SuiteResult r{"dyadic", true, 0, 0, 0, 4, ""};
  for (const auto& c : dyadic_checks(options)) {
    r.cases += c.pairs;
    r.failures += c.failures;
    r.worst = std::max(r.worst, c.worst_eps);
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s%s %s %.3g eps", r.detail.empty() ? "" : "; ",
                  std::string(short_name(c.precision)).c_str(), c.op.c_str(), c.worst_eps);
    r.detail += buf;
  }
  r.passed = r.failures == 0;
  return r;
}

double toeplitz_max_difference(std::size_t n, std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  const auto spec = random_spec<1>(n, d, AlphaMode::UnitComplex, 0.1, 1.0, rng);
  const auto g = make_system<1>(spec, 1, rng);
  const auto x = perturb_start(g.exact, rng).resized(d);
  // Random higher coefficients populate every block and give b of order one.
  SeriesVec<1> xs = x;
  const SeriesVec<1> noise = random_point<1>(n, d, rng);
  for (std::size_t k = 1; k < d; ++k)
    for (std::size_t i = 0; i < n; ++i) xs.set(i, k, noise.get(i, k));
  const Evaluation<1> ev = evaluate_system(g.system, xs);
  const auto f = householder_qr(ev.A.coeff(0));
  const SeriesVec<1> dx = toeplitz_solve(ev.A, ev.b, f);
  const auto want = dense_block_solve(ev.A, ev.b);
  double worst = 0;
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < n; ++i)
      worst = std::max(worst, abs1(exact(dx.get(i, k)) - want[k][i]));
  return worst;
}

SuiteResult toeplitz_suite(std::uint64_t seed) {
  SuiteResult r{"toeplitz", true, 0, 0, 0, 1e-10, ""};
  for (std::size_t n : {2, 3, 4})
    for (std::size_t d : {1, 2, 4}) {
      const double e = toeplitz_max_difference(n, d, seed + n * 10 + d);
      ++r.cases;
      r.worst = std::max(r.worst, e);
      if (e > r.tolerance) ++r.failures;
    }
  r.passed = r.failures == 0;
  r.detail = format("worst %.3g absolute (bound %.0e)", r.worst, r.tolerance);
  return r;
}

SuiteResult gradient_suite(std::uint64_t seed) {
  SuiteResult r{"gradient", true, 0, 0, 0, 1e-12, ""};
  Rng rng(seed);
  double brute = 0;
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t d = 1; d <= 4; ++d)
      for (int columns = 1; columns <= (n >= 2 ? 2 : 1); ++columns) {
        const auto spec = random_spec<1>(n, d, AlphaMode::UnitComplex, 0.1, 1.0, rng);
        const auto g = make_system<1>(spec, columns, rng);
        const double e = brute_force_difference(g.system, random_point<1>(n, d, rng));
        ++r.cases;
        brute = std::max(brute, e);
        if (e > 1e-12) ++r.failures;
      }
  // Multiple-double monomials; worst reported in eps units of the scale.
  SuiteResult md{"", true, 0, 0, 0, 0, ""};
  for (std::size_t m = 1; m <= 6; ++m) {
    speel_check<2>(m, 8, rng, md);
    speel_check<4>(m, 8, rng, md);
    speel_check<8>(m, 8, rng, md);
  }
  r.cases += md.cases;
  r.failures += md.failures;
  r.worst = brute;
  r.passed = r.failures == 0;
  r.detail = format("brute force %.3g absolute (bound 1e-12); monomials %.3g scaled eps", brute, md.worst);
  return r;
}

SuiteResult exp_product_suite(std::uint64_t seed) {
  SuiteResult r{"exp-product", true, 0, 0, 0, 0, ""};
  Rng rng(seed);
  const std::size_t d = 32;
  double worst_units = 0;  // error / (16 d eps(p))
  auto run = [&](double err, double e) {
    ++r.cases;
    const double u = err / (16 * double(d) * e);
    worst_units = std::max(worst_units, u);
    if (u > 1) ++r.failures;
  };
  for (int i = 0; i < 8; ++i) {
    run(exp_product_error<1>(rng, d), eps_v<1>);
    run(exp_product_error<2>(rng, d), eps_v<2>);
    run(exp_product_error<4>(rng, d), eps_v<4>);
    run(exp_product_error<8>(rng, d), eps_v<8>);
  }
  r.worst = worst_units;
  r.tolerance = 1;
  r.passed = r.failures == 0;
  r.detail = format("worst %.3g of the 16 d eps(p) bound over %.0f series", worst_units, double(r.cases));
  return r;
}

std::vector<SuiteResult> run_all(const VerifyOptions& options) {
  return {dyadic_suite(options.dyadic), toeplitz_suite(options.seed),
          gradient_suite(options.seed), exp_product_suite(options.seed)};
}

}  // namespace mdn::oracle
