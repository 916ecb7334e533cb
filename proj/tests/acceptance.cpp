// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance            run every criterion
//   acceptance 5 10       run the listed criteria
//
// Exit status is 0 when every selected criterion passes.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "mdnewton/evaldiff.hpp"
#include "mdnewton/kernels.hpp"
#include "mdnewton/newton.hpp"
#include "mdnewton/oracle/exact.hpp"
#include "mdnewton/oracle/suites.hpp"
#include "mdnewton/parallel.hpp"
#include "mdnewton/report.hpp"

using namespace mdn;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

constexpr std::uint64_t kSeed = 7;

template <std::size_t N>
struct Solved {
  GeneratedSystem<N> g;
  NewtonResult<N> r;
  double error = 0;  // max_k ||x_k - exact_k||_1
  double bound = 0;  // 1e3 eps(p) n
};

template <std::size_t N>
Solved<N> solve(std::size_t n, std::size_t d, int columns, std::size_t threads = 1) {
  set_thread_count(threads);
  Rng rng(kSeed);
  const auto spec = random_spec<N>(n, d, AlphaMode::UnitComplex, 0.1, 1.0, rng);
  Solved<N> s{make_system<N>(spec, columns, rng), {}, 0, 1e3 * eps_v<N> * double(n)};
  const auto x0 = perturb_start(s.g.exact, rng);
  s.r = run_newton(s.g.system, x0);
  for (std::size_t k = 0; k < d; ++k) {
    MultiDouble<N> e;
    for (std::size_t i = 0; i < n; ++i) e = md_add(e, cabs1(csub(s.r.x.get(i, k), s.g.exact.get(i, k))));
    s.error = std::max(s.error, e.approx());
  }
  set_thread_count(1);
  return s;
}

template <std::size_t N>
bool converged(const Solved<N>& s) {
  return s.r.status == NewtonStatus::Converged;
}

Outcome c01() {
  oracle::DyadicOptions o;
  o.pairs = 100000;
  const auto checks = oracle::dyadic_checks(o);
  bool ok = true;
  std::string detail;
  for (const auto& c : checks) {
    ok = ok && c.failures == 0 && c.worst_eps <= 4;
    detail += fmt("%s %s worst %.3g eps; ", std::string(short_name(c.precision)).c_str(), c.op.c_str(),
                  c.worst_eps);
  }
  return {ok, detail + "bound 4 eps, 1e5 pairs each"};
}

template <std::size_t N>
bool mul_count_constant() {
  Rng rng(kSeed);
  for (int i = 0; i < 2000; ++i) {
    MultiDouble<N> a, b;
    for (std::size_t l = 0; l < N; ++l) {
      a.limbs[l] = std::ldexp(rng.uniform(-1, 1), -53 * int(l));
      b.limbs[l] = i % 7 == 0 ? 0.0 : std::ldexp(rng.uniform(-1, 1), -53 * int(l));
    }
    a = renormalize<N>(std::span<const double>(a.limbs));
    b = renormalize<N>(std::span<const double>(b.limbs));
    const OpCounter before = thread_ops();
    (void)md_mul(a, b);
    if (!(thread_ops() - before == mul_cost<N>())) return false;
  }
  return true;
}

Outcome c02() {
  const bool constant = mul_count_constant<2>() && mul_count_constant<4>() && mul_count_constant<8>();
  const auto dd = mul_cost<2>(), qd = mul_cost<4>(), od = mul_cost<8>();
  const bool ok = constant && dd.total() == 23;
  return {ok, fmt("constant per call: %s; dd %llu (%llu add %llu sub %llu mul, reference 23); "
                  "qd %llu (reference 336); od %llu (reference 1742)",
                  constant ? "yes" : "no", (unsigned long long)dd.total(),
                  (unsigned long long)dd.additions, (unsigned long long)dd.subtractions,
                  (unsigned long long)dd.multiplications, (unsigned long long)qd.total(),
                  (unsigned long long)od.total())};
}

Outcome c03() {
  bool ok = true;
  std::string detail;
  Rng rng(kSeed);
  for (std::size_t n : {4, 8, 16})
    for (std::size_t d : {2, 8, 64}) {
      SeriesVec<2> x(n, d);
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t i = 0; i < n; ++i) x.set(i, k, ComplexMD<2>(rng.uniform(-1, 1), rng.uniform(-1, 1)));
      std::vector<std::size_t> vars(n);
      for (std::size_t i = 0; i < n; ++i) vars[i] = i;
      const Tally before = tally();
      (void)speel_monomial<2>(vars, x);
      const auto got = (tally() - before).conv.coefficient_products;
      const auto want = static_cast<std::uint64_t>((3 * n - 5) * d * d);
      ok = ok && got == want;
      if (got != want) detail += fmt("n=%zu d=%zu got %llu want %llu; ", n, d, (unsigned long long)got,
                                     (unsigned long long)want);
    }
  return {ok, detail.empty() ? "all 9 (n, d) pairs match (3n-5) d^2 exactly" : detail};
}

Outcome c04() {
  double worst = 0;
  for (std::uint64_t s = 0; s < 5; ++s) worst = std::max(worst, oracle::toeplitz_max_difference(3, 4, kSeed + s));
  return {worst <= 1e-10, fmt("n=3 d=4 doubles, 5 systems, worst |dx - dense| %.3g (bound 1e-10)", worst)};
}

Outcome c05() {
  const auto s = solve<8>(16, 64, 1);
  const bool ok = converged(s) && s.r.iterations <= 24 && s.error <= s.bound;
  return {ok, fmt("n=16 d=64 od: %s in %d iterations, error %.3g (bound %.3g), %.1f s",
                  std::string(status_name(s.r.status)).c_str(), s.r.iterations, s.error, s.bound,
                  s.r.wall_seconds)};
}

template <std::size_t N>
std::string ladder_line(const Solved<N>& s, std::size_t d) {
  return fmt("(%zu, %s) %s error %.3g bound %.3g; ", d, std::string(short_name(Precision{int(N)})).c_str(),
             converged(s) ? "converged" : "not converged", s.error, s.bound);
}

Outcome c06() {
  const auto a = solve<1>(16, 8, 1);
  const auto b = solve<2>(16, 24, 1);
  const auto c = solve<4>(16, 32, 1);
  const auto e = solve<8>(16, 64, 1);
  const auto neg = solve<2>(16, 64, 1);
  const bool positive = converged(a) && a.error <= a.bound && converged(b) && b.error <= b.bound &&
                        converged(c) && c.error <= c.bound && converged(e) && e.error <= e.bound;
  const bool negative = !converged(neg) || neg.error > neg.bound;
  std::string detail = ladder_line(a, 8) + ladder_line(b, 24) + ladder_line(c, 32) + ladder_line(e, 64) +
                       ladder_line(neg, 64);
  detail += negative ? "(64, dd) misses the bound as expected" : "(64, dd) unexpectedly meets the bound";
  return {positive && negative, detail};
}

Outcome c07() {
  const auto one = solve<8>(16, 64, 1);
  const auto two = solve<8>(16, 64, 2);
  double worst = 0;
  for (std::size_t k = 0; k < 64; ++k)
    for (std::size_t i = 0; i < 16; ++i)
      worst = std::max(worst, cabs1(csub(one.r.x.get(i, k), two.r.x.get(i, k))).approx());
  const double c1 = double(one.r.ledger.at(KernelClass::Convolution).ops.total());
  const double c2 = double(two.r.ledger.at(KernelClass::Convolution).ops.total());
  const double ratio = c2 / c1;
  const double tol = 1e3 * eps_v<8>;
  const bool ok = converged(one) && converged(two) && worst <= tol && std::fabs(ratio - 2) <= 0.1;
  return {ok, fmt("max coefficient difference %.3g (bound %.3g); convolution ops two/one = %.4f "
                  "(%d vs %d iterations, target 2 +- 5%%)",
                  worst, tol, ratio, two.r.iterations, one.r.iterations)};
}

Outcome c08() {
  const std::vector<std::size_t> want = {1, 2, 4, 7, 11, 17, 26, 40, 61, 64};
  const auto got = staggered_orders(64);
  std::string s;
  for (auto d : got) s += std::to_string(d) + " ";
  return {got == want, "staggered_orders(64) = " + s};
}

Outcome c09() {
  const ComplexMD<4> z0(0.3, 0.4);
  Series<4> g(8);
  ComplexMD<4> c(1.0);
  for (std::size_t k = 0; k < 8; ++k) {
    g.set(k, c);
    c = cdiv(c, z0);
  }
  const auto f = fabry_ratio(g);
  const auto diff = oracle::exact(f.z) - oracle::exact(z0);
  const double rel = std::sqrt(mpq_class(diff.re * diff.re + diff.im * diff.im).get_d()) / 0.5;
  const auto ratios = fabry_ratios(exp_series(ComplexMD<8>(1.0), 64));
  bool increasing = true;
  for (std::size_t k = 1; k < ratios.size(); ++k) increasing = increasing && ratios[k].re > ratios[k - 1].re;
  return {rel <= 1e-30 && increasing,
          fmt("geometric z0 = 0.3+0.4i at qd, d=8: relative error %.3g (bound 1e-30); exp(t) d=64 "
              "ratios strictly increasing: %s (%.4g ... %.4g)",
              rel, increasing ? "yes" : "no", ratios.front().re.approx(), ratios.back().re.approx())};
}

Outcome c10() {
  const auto s = solve<8>(16, 64, 1);
  const auto& L = s.r.ledger;
  std::uint64_t stages = 0;
  for (const auto& rec : s.r.log) stages += rec.order - rec.first_active;
  const auto rep = ledger_report(L, s.r.wall_seconds);
  double pct = 0;
  for (const auto& c : rep.classes) pct += c.percent;
  const bool qr = L.at(KernelClass::Qr).invocations == 1;
  const bool per_stage =
      L.at(KernelClass::Qhb).invocations == stages && L.at(KernelClass::Bs).invocations == stages;
  const bool sum = std::fabs(pct - 100) <= 0.1;
  const bool conserved = L.total_ops() == s.r.ops;
  return {qr && per_stage && sum && conserved,
          fmt("qr invocations %llu; qhb %llu, bs %llu, active stage solves %llu; percentages sum %.4f; "
              "ledger ops %llu vs counter %llu",
              (unsigned long long)L.at(KernelClass::Qr).invocations,
              (unsigned long long)L.at(KernelClass::Qhb).invocations,
              (unsigned long long)L.at(KernelClass::Bs).invocations, (unsigned long long)stages, pct,
              (unsigned long long)L.total_ops().total(), (unsigned long long)s.r.ops.total())};
}

Outcome c11() {
  const std::size_t threads = 4;
  const auto q = solve<4>(64, 64, 1, threads);
  const auto o = solve<8>(64, 64, 1, threads);
  const double wall = o.r.wall_seconds / q.r.wall_seconds;
  const double ops = double(o.r.ledger.total_ops().total()) / double(q.r.ledger.total_ops().total());
  return {converged(q) && converged(o) && wall < ops,
          fmt("n=64 d=64, %zu threads (%u hardware): wall od/qd %.3f (%.1f s / %.1f s) vs op ratio "
              "%.3f; qd %s, od %s",
              threads, std::thread::hardware_concurrency(), wall, o.r.wall_seconds, q.r.wall_seconds,
              ops, std::string(status_name(q.r.status)).c_str(),
              std::string(status_name(o.r.status)).c_str())};
}

Outcome c12() {
  const auto a = solve<4>(16, 32, 1, 1);
  const auto b = solve<4>(16, 32, 1, 4);
  const bool same_x = a.r.x == b.r.x;
  const bool same_ops = a.r.ops == b.r.ops && a.r.conv == b.r.conv;
  bool same_classes = true;
  for (auto c : kKernelClasses) same_classes = same_classes && a.r.ledger.at(c).ops == b.r.ledger.at(c).ops;
  return {same_x && same_ops && same_classes,
          fmt("n=16 d=32 qd, threads 1 vs 4: solution limbs %s, op counts %s, per-class ops %s",
              same_x ? "identical" : "differ", same_ops ? "identical" : "differ",
              same_classes ? "identical" : "differ")};
}

struct Criterion {
  const char* title;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> c = {
      {"arithmetic conformance", c01},  {"cost constants", c02},
      {"convolution count law", c03},   {"Toeplitz equivalence", c04},
      {"Newton accuracy", c05},         {"precision/order ladder", c06},
      {"two-column equivalence", c07},  {"staggered schedule", c08},
      {"Fabry estimator", c09},         {"kernel ledger sanity", c10},
      {"compute-bound scaling", c11},   {"determinism", c12},
  };
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::size_t> which;
  for (int i = 1; i < argc; ++i) {
    const int k = std::atoi(argv[i]);
    if (k < 1 || k > static_cast<int>(criteria().size())) {
      std::fprintf(stderr, "unknown criterion %s\n", argv[i]);
      return 1;
    }
    which.push_back(static_cast<std::size_t>(k));
  }
  if (which.empty())
    for (std::size_t k = 1; k <= criteria().size(); ++k) which.push_back(k);

  kernels::set_isa(kernels::best_isa());
  bool all = true;
  for (std::size_t k : which) {
    const auto& c = criteria()[k - 1];
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    all = all && o.pass;
    std::printf("criterion %2zu %s: %s | %s\n", k, o.pass ? "PASS" : "FAIL", c.title, o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
