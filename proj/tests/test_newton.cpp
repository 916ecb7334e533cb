#include <doctest.h>

#include <set>

#include "mdnewton/newton.hpp"
#include "mdnewton/parallel.hpp"
#include "support.hpp"

using namespace mdn;

namespace {

template <std::size_t N>
struct Problem {
  GeneratedSystem<N> g;
  SeriesVec<N> x0;
};

template <std::size_t N>
Problem<N> problem(std::size_t n, std::size_t d, std::uint64_t seed, int columns = 1) {
  Rng rng(seed);
  const auto spec = random_spec<N>(n, d, AlphaMode::UnitComplex, 0.1, 1.0, rng);
  auto g = make_system<N>(spec, columns, rng);
  auto x0 = perturb_start(g.exact, rng);
  return {std::move(g), std::move(x0)};
}

template <std::size_t N>
double forward_error(const SeriesVec<N>& x, const SeriesVec<N>& exact) {
  double worst = 0;
  for (std::size_t k = 0; k < exact.order(); ++k) {
    MultiDouble<N> s;
    for (std::size_t i = 0; i < exact.dim(); ++i) s = md_add(s, cabs1(csub(x.get(i, k), exact.get(i, k))));
    worst = std::max(worst, s.approx());
  }
  return worst;
}

}  // namespace

TEST_CASE("staggered orders") {
  using V = std::vector<std::size_t>;
  CHECK(staggered_orders(64) == V{1, 2, 4, 7, 11, 17, 26, 40, 61, 64});
  CHECK(staggered_orders(4) == V{1, 2, 4});
  CHECK(staggered_orders(1) == V{1});
  CHECK(staggered_orders(3) == V{1, 2, 3});
  for (std::size_t d = 1; d <= 100; ++d) {
    const auto s = staggered_orders(d);
    CHECK(s.back() == d);
    for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i] > s[i - 1]);
  }
}

TEST_CASE("exact start converges at once") {
  Rng rng(1);
  const auto spec = random_spec<2>(6, 17, AlphaMode::UnitComplex, 0.1, 1.0, rng);
  const auto g = make_system<2>(spec, 1, rng);
  const auto r = run_newton(g.system, g.exact);
  CHECK(r.status == NewtonStatus::Converged);
  CHECK(r.iterations == 1);
  CHECK(r.log.front().dx_norm <= r.tolerance);
  CHECK(forward_error(r.x, g.exact) <= 1e3 * eps_v<2> * 6);
}

TEST_CASE_TEMPLATE("perturbed start converges to the exact series", T, std::integral_constant<std::size_t, 1>,
                   std::integral_constant<std::size_t, 2>, std::integral_constant<std::size_t, 4>) {
  constexpr std::size_t N = T::value;
  const std::size_t d = N == 1 ? 8 : N == 2 ? 16 : 24;
  const auto p = problem<N>(8, d, 3);
  const auto r = run_newton(p.g.system, p.x0);
  CHECK(r.status == NewtonStatus::Converged);
  CHECK(r.iterations <= 24);
  CHECK(forward_error(r.x, p.g.exact) <= 1e3 * eps_v<N> * 8);
  CHECK(r.qr_count >= 1);
  CHECK(r.min_r_diagonal > 0);
}

TEST_CASE("order is held until the active stages converge") {
  const auto p = problem<2>(5, 20, 4);
  const auto r = run_newton(p.g.system, p.x0);
  REQUIRE(r.status == NewtonStatus::Converged);
  const auto s = staggered_orders(20);
  std::size_t prev = 0;
  for (const auto& rec : r.log) {
    CHECK(std::find(s.begin(), s.end(), rec.order) != s.end());
    CHECK(rec.order >= prev);
    prev = rec.order;
    CHECK(rec.stage_b_norms.size() == rec.order - rec.first_active);
    CHECK(rec.stage_dx_norms.size() == rec.order - rec.first_active);
  }
  // Two iterations per level at most, as the reused factors give linear
  // contraction by about sqrt(eps).
  CHECK(r.iterations <= 2 * int(s.size()) + 1);
}

TEST_CASE("retired stages stay frozen") {
  const auto p = problem<2>(6, 26, 5);
  const auto full = run_newton(p.g.system, p.x0);
  REQUIRE(full.status == NewtonStatus::Converged);
  std::size_t prev_first = 0;
  for (const auto& rec : full.log) {
    CHECK(rec.first_active >= prev_first);
    prev_first = rec.first_active;
  }
  // State after i iterations is the run capped at i.  A stage below the
  // next iteration's first_active must never change again.
  for (int i = 1; i < full.iterations; ++i) {
    NewtonOptions o;
    o.max_iterations = i;
    const auto part = run_newton(p.g.system, p.x0, o);
    const std::size_t frozen = full.log[std::size_t(i)].first_active;
    for (std::size_t k = 0; k < frozen; ++k)
      for (std::size_t j = 0; j < 6; ++j) CHECK(part.x.get(j, k) == full.x.get(j, k));
  }
}

TEST_CASE("ledger conservation and invocation counts") {
  const auto p = problem<2>(8, 26, 6);
  const auto r = run_newton(p.g.system, p.x0);
  REQUIRE(r.status == NewtonStatus::Converged);
  CHECK(r.ledger.total_ops() == r.ops);
  OpCounter sum;
  for (auto c : kKernelClasses) sum += r.ledger.at(c).ops;
  CHECK(sum == r.ops);
  CHECK(r.ledger.at(KernelClass::Qr).invocations == r.qr_count);
  CHECK(r.qr_count == 1);
  std::uint64_t stages = 0;
  for (const auto& rec : r.log) stages += rec.order - rec.first_active;
  CHECK(r.ledger.at(KernelClass::Qhb).invocations == stages);
  CHECK(r.ledger.at(KernelClass::Bs).invocations == stages);
  CHECK(r.ledger.at(KernelClass::Convolution).conv.coefficient_products == r.conv.coefficient_products);
  const auto rep = ledger_report(r.ledger, r.wall_seconds);
  double pct = 0;
  for (const auto& c : rep.classes) pct += c.percent;
  CHECK(pct == doctest::Approx(100).epsilon(0.001));
}

TEST_CASE("results do not depend on the thread count") {
  const auto p = problem<4>(9, 17, 7, 2);
  set_thread_count(1);
  const auto a = run_newton(p.g.system, p.x0);
  set_thread_count(4);
  const auto b = run_newton(p.g.system, p.x0);
  set_thread_count(1);
  CHECK(a.x == b.x);
  CHECK(a.ops == b.ops);
  CHECK(a.conv == b.conv);
  CHECK(a.iterations == b.iterations);
  for (auto c : kKernelClasses) CHECK(a.ledger.at(c).ops == b.ledger.at(c).ops);
}

TEST_CASE("iteration cap") {
  const auto p = problem<2>(6, 16, 8);
  NewtonOptions o;
  o.max_iterations = 2;
  std::vector<int> seen;
  o.on_iteration = [&](const IterationRecord& rec) { seen.push_back(rec.iteration); };
  const auto r = run_newton(p.g.system, p.x0, o);
  CHECK(r.status == NewtonStatus::MaxIterationsExceeded);
  CHECK(r.iterations == 2);
  CHECK(seen == std::vector<int>{1, 2});
  CHECK(r.x.order() == 16);
}

TEST_CASE("two columns reach the one column solution") {
  const auto one = problem<4>(6, 20, 9, 1);
  const auto two = problem<4>(6, 20, 9, 2);
  REQUIRE(one.g.exact == two.g.exact);
  const auto r1 = run_newton(one.g.system, one.x0), r2 = run_newton(two.g.system, two.x0);
  REQUIRE(r1.status == NewtonStatus::Converged);
  REQUIRE(r2.status == NewtonStatus::Converged);
  for (std::size_t k = 0; k < 20; ++k)
    for (std::size_t i = 0; i < 6; ++i) CHECK(test::abs1_diff(r1.x.get(i, k), r2.x.get(i, k)) <= 1e3 * eps_v<4>);
}

TEST_CASE("sampled residual") {
  const auto p = problem<2>(8, 11, 10);
  NewtonOptions o;
  o.residual_sample = 2;
  const auto sampled = run_newton(p.g.system, p.x0, o);
  const auto full = run_newton(p.g.system, p.x0);
  CHECK(sampled.x == full.x);
  for (std::size_t i = 0; i < full.log.size(); ++i) CHECK(sampled.log[i].residual <= full.log[i].residual);
  CHECK_THROWS_AS(run_newton(p.g.system, SeriesVec<2>(3, 11)), Error);
}
