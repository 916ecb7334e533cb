#include <doctest.h>

#include "mdnewton/multidouble.hpp"
#include "mdnewton/oracle/exact.hpp"
#include "mdnewton/oracle/suites.hpp"
#include "support.hpp"

using namespace mdn;
using mdn::oracle::exact;
using mdn::oracle::relative_error;

TEST_CASE("two_sum captures the rounding error") {
  auto r = two_sum(1.0, 0x1p-60);
  CHECK(r.s == 1.0);
  CHECK(r.e == 0x1p-60);
  r = two_sum(1.0, 0.0);
  CHECK(r.s == 1.0);
  CHECK(r.e == 0.0);
  r = two_sum(0x1p53, 1.0);
  CHECK(r.s == 0x1p53);
  CHECK(r.e == 1.0);
}

TEST_CASE("two_prod is error free") {
  auto r = two_prod(1.0, 1.0);
  CHECK(r.s == 1.0);
  CHECK(r.e == 0.0);
  r = two_prod(0.0, 3.7);
  CHECK(r.s == 0.0);
  CHECK(r.e == 0.0);
  const double a = 1 + 0x1p-52;
  r = two_prod(a, a);
  CHECK(r.s == a * a);
  CHECK(exact(r.s) + exact(r.e) == exact(a) * exact(a));
  CHECK(r.e == 0x1p-104);
  mdn::Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.uniform(-1e3, 1e3), y = rng.uniform(-1e-3, 1e3);
    const auto p = two_prod(x, y);
    CHECK(exact(p.s) + exact(p.e) == exact(x) * exact(y));
  }
}

TEST_CASE("eps constants and precision names") {
  CHECK(eps(kDouble) == doctest::Approx(2.2e-16).epsilon(0.01));
  CHECK(eps(kDoubleDouble) == doctest::Approx(4.9e-32).epsilon(0.01));
  CHECK(eps(kQuadDouble) == doctest::Approx(6.1e-64).epsilon(0.01));
  CHECK(eps(kOctoDouble) == doctest::Approx(4.6e-128).epsilon(0.01));
  for (auto p : {kDouble, kDoubleDouble, kQuadDouble, kOctoDouble}) CHECK(parse_precision(short_name(p))->limbs == p.limbs);
  CHECK_FALSE(parse_precision("hd"));
  CHECK_FALSE(valid(Precision{3}));
}

TEST_CASE("md_add examples") {
  CHECK(md_add(MultiDouble<2>(1.0), MultiDouble<2>(0.0)) == MultiDouble<2>(1.0));
  const auto s = md_add(MultiDouble<2>(1.0), MultiDouble<2>(0x1p-60));
  CHECK(s.limbs[0] == 1.0);
  CHECK(s.limbs[1] == 0x1p-60);
  mdn::Rng rng(5);
  const auto x = test::random_md<8>(rng);
  CHECK(md_add(x, md_neg(x)).is_zero());
  CHECK(md_sub(x, x).is_zero());
}

TEST_CASE_TEMPLATE("md_mul identity and commutativity", T, std::integral_constant<std::size_t, 2>,
                   std::integral_constant<std::size_t, 4>, std::integral_constant<std::size_t, 8>) {
  constexpr std::size_t N = T::value;
  mdn::Rng rng(11 + N);
  for (int i = 0; i < 200; ++i) {
    const auto a = test::random_md<N>(rng), b = test::random_md<N>(rng);
    CHECK(md_mul(MultiDouble<N>(1.0), a) == a);
    CHECK(md_mul(a, b) == md_mul(b, a));
    CHECK(md_add(a, b) == md_add(b, a));
    CHECK(is_nonoverlapping(md_mul(a, b)));
    CHECK(is_nonoverlapping(md_add(a, b)));
    CHECK(is_nonoverlapping(md_div(a, b)));
    CHECK(is_nonoverlapping(md_sqrt(md_abs(a))));
  }
}

TEST_CASE_TEMPLATE("operation counts are input independent", T, std::integral_constant<std::size_t, 1>,
                   std::integral_constant<std::size_t, 2>, std::integral_constant<std::size_t, 4>,
                   std::integral_constant<std::size_t, 8>) {
  constexpr std::size_t N = T::value;
  mdn::Rng rng(17);
  for (int i = 0; i < 50; ++i) {
    const auto a = test::random_md<N>(rng), b = i % 5 == 0 ? MultiDouble<N>() : test::random_md<N>(rng);
    OpCounter before = thread_ops();
    (void)md_mul(a, b);
    CHECK(thread_ops() - before == mul_cost<N>());
    before = thread_ops();
    (void)md_add(a, b);
    CHECK(thread_ops() - before == add_cost<N>());
  }
}

TEST_CASE("multiplication counts of the cost table") {
  CHECK(mul_cost<1>().total() == 1);
  // Hardware multiplications match the table exactly at every level.
  CHECK(mul_cost<2>().multiplications == 9);
  CHECK(mul_cost<4>().multiplications == 73);
  CHECK(mul_cost<8>().multiplications == 259);
  CHECK(mul_cost<2>().subtractions == 9);
  CHECK(mul_cost(kOctoDouble) == mul_cost<8>());
}

TEST_CASE("md_div") {
  mdn::Rng rng(23);
  const auto x = test::random_md<4>(rng);
  CHECK(md_div(x, MultiDouble<4>(1.0)) == x);
  const auto third = md_div(MultiDouble<4>(1.0), MultiDouble<4>(3.0));
  CHECK(relative_error(exact(third), mpq_class(1, 3)) <= 8 * eps(kQuadDouble));
  CHECK_THROWS_AS(md_div(x, MultiDouble<4>()), Error);
  try {
    md_div(x, MultiDouble<4>());
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DivisionByZero);
  }
  for (int i = 0; i < 200; ++i) {
    const auto a = test::random_md<8>(rng), b = test::random_md<8>(rng);
    const auto q = md_div(a, b);
    CHECK(relative_error(exact(q), exact(a) / exact(b)) <= 8 * eps(kOctoDouble));
  }
}

TEST_CASE("md_sqrt") {
  CHECK(md_sqrt(MultiDouble<1>(4.0)) == MultiDouble<1>(2.0));
  CHECK(md_sqrt(MultiDouble<2>(4.0)) == MultiDouble<2>(2.0));
  CHECK(md_sqrt(MultiDouble<4>(4.0)) == MultiDouble<4>(2.0));
  CHECK(md_sqrt(MultiDouble<8>(4.0)) == MultiDouble<8>(2.0));
  CHECK(md_sqrt(MultiDouble<8>()).is_zero());
  // |s^2 - 2| / 2 is twice the relative error of s.
  const auto s = md_sqrt(MultiDouble<8>(2.0));
  CHECK(relative_error(exact(s) * exact(s), mpq_class(2)) / 2 <= 8 * eps(kOctoDouble));
  CHECK_THROWS_AS(md_sqrt(MultiDouble<2>(-1.0)), Error);
}

TEST_CASE("renormalize") {
  const auto a = renormalize<2>({0.5, 0.5});
  CHECK(a.limbs[0] == 1.0);
  CHECK(a.limbs[1] == 0.0);
  const auto b = renormalize<4>({1.0, 1.0, 0x1p-60, 0.0});
  CHECK(b.limbs == std::array<double, 4>{2.0, 0x1p-60, 0.0, 0.0});
  mdn::Rng rng(29);
  for (int i = 0; i < 100; ++i) {
    const auto x = test::random_md<8>(rng);
    CHECK(renormalize<8>(std::span<const double>(x.limbs)) == x);
    double raw[6];
    for (double& r : raw) r = std::ldexp(rng.uniform(-1, 1), static_cast<int>(rng.next() % 200) - 100);
    const auto y = renormalize<4>(std::span<const double>(raw, 6));
    CHECK(is_nonoverlapping(y));
    mpq_class want(0);
    for (double r : raw) want += exact(r);
    CHECK(relative_error(exact(y), want) <= eps(kQuadDouble));
  }
}

TEST_CASE("ordering and helpers") {
  const MultiDouble<2> one(1.0), tiny(0x1p-80);
  CHECK(md_add(one, tiny) > one);
  CHECK(md_sub(one, tiny) < one);
  CHECK(md_compare(one, one) == 0);
  CHECK(md_abs(MultiDouble<2>(-3.0)) == MultiDouble<2>(3.0));
  CHECK(md_ldexp(one, 3) == MultiDouble<2>(8.0));
  const auto c = convert<4>(md_add(one, tiny));
  CHECK(c.limbs[1] == 0x1p-80);
  CHECK(convert<2>(c) == md_add(one, tiny));
}

TEST_CASE("dyadic oracle agreement, small sample") {
  oracle::DyadicOptions o;
  o.pairs = 2000;
  for (const auto& c : oracle::dyadic_checks(o)) {
    INFO(short_name(c.precision), " ", c.op);
    CHECK(c.failures == 0);
    CHECK(c.worst_eps <= 4);
  }
}

TEST_CASE("quad double truncated to two limbs agrees with double double") {
  mdn::Rng rng(31);
  for (int i = 0; i < 500; ++i) {
    const auto a = test::random_md<2>(rng), b = test::random_md<2>(rng);
    const auto q = md_mul(convert<4>(a), convert<4>(b));
    const auto d = md_mul(a, b);
    CHECK(relative_error(exact(convert<2>(q)), exact(d)) <= 4 * eps(kDoubleDouble));
    const auto qs = md_add(convert<4>(a), convert<4>(b));
    CHECK(relative_error(exact(convert<2>(qs)), exact(md_add(a, b))) <= 4 * eps(kDoubleDouble));
  }
}
