#pragma once

// Independent checks of the library against exact rational arithmetic.
// Shared by the test binaries and `mdnewton verify`.

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mdnewton/multidouble.hpp"
#include "mdnewton/sysgen.hpp"

namespace mdn::oracle {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::size_t cases = 0;
  std::size_t failures = 0;
  double worst = 0;      // largest observed error, in the suite's own metric
  double tolerance = 0;  // the bound it is held to
  std::string detail;
};

// Random multiple double with dyadic limbs: leading limb of magnitude in
// [2^-20, 2^21), lower limbs random below it, renormalized.
template <std::size_t N>
MultiDouble<N> random_dyadic(Rng& rng) {
  const int e = static_cast<int>(rng.next() % 41) - 20;
  double raw[N];
  raw[0] = std::ldexp(1.0 + rng.uniform01(), e);
  if (rng.next() & 1) raw[0] = -raw[0];
  for (std::size_t i = 1; i < N; ++i) raw[i] = std::ldexp(rng.uniform(-1.0, 1.0), -53) * std::fabs(raw[i - 1]);
  return renormalize<N>(std::span<const double>(raw, N));
}

struct DyadicOptions {
  std::size_t pairs = 100000;
  std::uint64_t seed = 1;
  bool fault_in_mul = false;  // perturb every md_mul result, for fault isolation
};

// One (precision, operation) cell: worst relative error in units of eps(p).
struct OpCheck {
  Precision precision;
  std::string op;
  std::size_t pairs = 0;
  std::size_t failures = 0;
  double worst_eps = 0;
};

// add and mul at dd, qd and od; bound 4 eps(p) relative.
std::vector<OpCheck> dyadic_checks(const DyadicOptions& options);
SuiteResult dyadic_suite(const DyadicOptions& options = {});

// toeplitz_solve against the assembled (n d) x (n d) block system solved
// exactly, for a generated system at a perturbed start, plain doubles.
// Returns the largest |re| + |im| difference per entry.
double toeplitz_max_difference(std::size_t n, std::size_t d, std::uint64_t seed);
SuiteResult toeplitz_suite(std::uint64_t seed = 1);

// A and b from evaluate_system against symbolic expansion of the
// monomials (n <= 4, d <= 4, doubles, bound 1e-12), and speel_monomial at
// dd/qd/od against exact products (bound 8 eps(p) d m, scaled).
SuiteResult gradient_suite(std::uint64_t seed = 1);

// exp(a t) * exp(b t) = exp((a + b) t) at every precision, d = 32.
SuiteResult exp_product_suite(std::uint64_t seed = 1);

struct VerifyOptions {
  DyadicOptions dyadic;
  std::uint64_t seed = 1;
};

// The four suites in a fixed order: dyadic, toeplitz, gradient, exp-product.
std::vector<SuiteResult> run_all(const VerifyOptions& options = {});

}  // namespace mdn::oracle
