#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "mdnewton/experiment.hpp"
#include "mdnewton/report.hpp"
#include "support.hpp"

using namespace mdn;

namespace {

RunConfig small_config() {
  RunConfig c;
  c.dim = 4;
  c.order = 6;
  c.precision = kDoubleDouble;
  return c;
}

std::size_t count_fields(const std::string& line) {
  std::size_t n = 1;
  bool quoted = false;
  for (char ch : line) {
    if (ch == '"') quoted = !quoted;
    if (ch == ',' && !quoted) ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("hex floats round trip exactly") {
  Rng rng(1);
  for (double x : {0.0, -0.0, 1.0, 0x1p-1074, 0x1.fffffffffffffp+1023, 1.0 / 3, -2.5e-300}) {
    CHECK(parse_hex_double(hex_double(x)) == x);
    CHECK(std::signbit(parse_hex_double(hex_double(x))) == std::signbit(x));
  }
  for (int i = 0; i < 1000; ++i) {
    const double x = std::ldexp(rng.uniform(-1, 1), int(rng.next() % 2000) - 1000);
    CHECK(float_from_json(float_json(x)) == x);
  }
  CHECK(hex_double(1.0) == "0x1p+0");
  CHECK_THROWS(parse_hex_double("zebra"));
}

TEST_CASE("multiple double values and systems round trip") {
  Rng rng(2);
  const auto a = test::random_md<8>(rng);
  CHECK(md_from_json<8>(md_json(a)) == a);
  const auto z = test::random_complex<4>(rng);
  CHECK(complex_from_json<4>(complex_json(z)) == z);
  const auto x = test::random_series_vec<2>(3, 5, rng);
  CHECK(series_vec_from_json<2>(series_vec_json(x)) == x);
  const auto spec = random_spec<2>(4, 5, AlphaMode::UnitComplex, 0.1, 1.0, rng);
  const auto g = make_system<2>(spec, 2, rng);
  const auto back = system_from_json<2>(system_json(g.system));
  CHECK(back.E1 == g.system.E1);
  CHECK(back.E2 == g.system.E2);
  CHECK(back.c1 == g.system.c1);
  CHECK(back.c2 == g.system.c2);
  CHECK(back.rhs == g.system.rhs);
  CHECK(exponent_from_json(exponent_json(g.system.E1), 4) == g.system.E1);
}

TEST_CASE("config round trips") {
  RunConfig c = small_config();
  c.tolerance = 1e-25;
  c.alpha_mode = AlphaMode::RealNearOne;
  c.report_path = "r.json";
  CHECK(config_from_json(config_json(c)) == c);
}

TEST_CASE("report round trip is the identity") {
  RunConfig c = small_config();
  c.columns = 2;
  const RunReport r = execute(c);
  CHECK(r.status == "converged");
  const json j = report_json(r);
  const RunReport back = report_from_json(j);
  CHECK(report_json(back) == j);
  CHECK(back.solution == r.solution);
  CHECK(back.log.size() == r.log.size());
  CHECK(j.dump() == report_json(report_from_json(json::parse(j.dump(2)))).dump());
  CHECK(r.fabry.size() == 4);
  CHECK(r.forward_error <= r.forward_error_bound);
  CHECK(r.solution.size() == 4 * 6 * 2 * 2);
}

TEST_CASE("validation") {
  auto bad = [](auto edit) {
    RunConfig c = small_config();
    edit(c);
    try {
      validate(c);
    } catch (const Error& e) {
      return e.code() == ErrorCode::InvalidArgument;
    }
    return false;
  };
  CHECK(bad([](RunConfig& c) { c.dim = 0; }));
  CHECK(bad([](RunConfig& c) { c.order = 0; }));
  CHECK(bad([](RunConfig& c) { c.columns = 3; }));
  CHECK(bad([](RunConfig& c) { c.damping = 0; }));
  CHECK(bad([](RunConfig& c) { c.damping = 1.5; }));
  CHECK(bad([](RunConfig& c) { c.alpha_spread = 1; }));
  CHECK(bad([](RunConfig& c) { c.max_iters = 0; }));
  CHECK(bad([](RunConfig& c) { c.tolerance = -1.0; }));
  CHECK(bad([](RunConfig& c) { c.residual_sample = 9; }));
  CHECK(bad([](RunConfig& c) { c.threads = 0; }));
  CHECK(bad([](RunConfig& c) { c.kernels = "sse"; }));
  CHECK_NOTHROW(validate(small_config()));
}

TEST_CASE("precision warnings") {
  RunConfig c = small_config();
  CHECK(config_warnings(c).empty());
  c.order = 96;
  c.precision = kOctoDouble;
  REQUIRE(config_warnings(c).size() == 1);
  CHECK(config_warnings(c)[0].find("exceeds octo-double guarantee") != std::string::npos);
  c.order = 40;
  c.precision = kDoubleDouble;
  REQUIRE(config_warnings(c).size() == 1);
  CHECK(config_warnings(c)[0].find("recommended precision od") != std::string::npos);
  c.precision = kOctoDouble;
  CHECK(config_warnings(c).empty());
}

TEST_CASE("sweep axes") {
  const RunConfig c = small_config();
  CHECK(apply_axis(c, SweepAxis::Precision, "qd").precision.limbs == 4);
  CHECK(apply_axis(c, SweepAxis::Order, "12").order == 12);
  CHECK(apply_axis(c, SweepAxis::Dim, "7").dim == 7);
  CHECK_THROWS_AS(apply_axis(c, SweepAxis::Order, "12x"), Error);
  CHECK_THROWS_AS(apply_axis(c, SweepAxis::Dim, ""), Error);
  CHECK_THROWS_AS(apply_axis(c, SweepAxis::Precision, "hd"), Error);
  CHECK(parse_sweep_axis("order") == SweepAxis::Order);
  CHECK_FALSE(parse_sweep_axis("seed"));
}

TEST_CASE("sweep rows and CSV") {
  const RunConfig c = small_config();
  CHECK(sweep(c, SweepAxis::Order, {}).empty());
  const std::string header = sweep_csv_header(SweepAxis::Order);
  CHECK(header.rfind("order,status,iterations,forward_error,convolution_seconds", 0) == 0);
  const auto rows = sweep(c, SweepAxis::Order, {"1", "2", "3", "0"});
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 0; i < 3; ++i) {
    REQUIRE(rows[i].report);
    CHECK(rows[i].report->status == "converged");
    CHECK(count_fields(sweep_csv_row(rows[i])) == count_fields(header));
  }
  CHECK_FALSE(rows[3].report);
  CHECK_FALSE(rows[3].error.empty());
  const std::string failed = sweep_csv_row(rows[3]);
  CHECK(failed.rfind("0,failed,", 0) == 0);
  CHECK(count_fields(failed) == count_fields(header));
  // A row reproduces standalone.
  const RunReport alone = execute(apply_axis(c, SweepAxis::Order, "3"));
  CHECK(alone.solution == rows[2].report->solution);
  CHECK(alone.ledger.total_ops == rows[2].report->ledger.total_ops);
}

TEST_CASE("iteration log records") {
  RunConfig c = small_config();
  std::vector<IterationRecord> seen;
  ExecuteOptions o;
  o.on_iteration = [&](const IterationRecord& r) { seen.push_back(r); };
  json sys;
  o.system = &sys;
  const RunReport r = execute(c, o);
  REQUIRE(seen.size() == r.log.size());
  for (const auto& rec : seen) {
    const json j = iteration_json(rec);
    CHECK(iteration_json(iteration_from_json(j)) == j);
    CHECK(j.contains("iteration"));
    CHECK(j.contains("order"));
  }
  CHECK(system_from_json<2>(sys).dim() == 4);
}
