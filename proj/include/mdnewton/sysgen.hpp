#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

#include "mdnewton/series.hpp"

namespace mdn {

// Seedable generator with a portable uniform draw (std distributions are
// implementation defined, which would break cross-platform reproducibility).
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : g_(seed) {}
  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(g_() >> 11) * 0x1p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  std::uint64_t next() { return g_(); }

 private:
  std::mt19937_64 g_;
};

// n x n matrix of 0/1 exponents; row i lists the variables of monomial i.
struct ExponentMatrix {
  std::size_t n = 0;
  std::vector<std::vector<std::uint8_t>> rows;

  ExponentMatrix() = default;
  explicit ExponentMatrix(std::size_t n_) : n(n_), rows(n_, std::vector<std::uint8_t>(n_, 0)) {}

  // Variable indices with a nonzero exponent in row i, ascending.
  std::vector<std::size_t> vars(std::size_t i) const;
  // Throws DimensionMismatch or InvalidArgument (entries outside {0,1},
  // empty rows are EmptyMonomial).
  void validate() const;

  friend bool operator==(const ExponentMatrix&, const ExponentMatrix&) = default;
};

enum class Orientation { Lower, Upper };

ExponentMatrix triangular_ones(std::size_t n, Orientation orientation);

enum class AlphaMode { RealNearOne, UnitComplex };

std::string_view alpha_mode_name(AlphaMode m);
std::optional<AlphaMode> parse_alpha_mode(std::string_view s);

template <std::size_t N>
struct SolutionSpec {
  std::vector<ComplexMD<N>> alphas;
  std::size_t order = 1;
  MultiDouble<N> damping{1.0};
};

// n random alphas: unit modulus exp(2 pi i theta), or real
// +-(1 - spread u) with u uniform on [0, 1).
template <std::size_t N>
SolutionSpec<N> random_spec(std::size_t n, std::size_t order, AlphaMode mode, double spread,
                            double damping, Rng& rng);

template <std::size_t N>
struct MonomialSystem {
  int columns = 1;
  ExponentMatrix E1, E2;
  // Column coefficients.  A one-column system x^E = b(t) carries c1 = 1.
  std::vector<ComplexMD<N>> c1, c2;
  SeriesVec<N> rhs;

  std::size_t dim() const { return E1.n; }
  std::size_t order() const { return rhs.order(); }
  // True when column 1 is used unscaled (all c1 exactly one).
  bool unit_c1() const;
};

template <std::size_t N>
struct GeneratedSystem {
  MonomialSystem<N> system;
  SeriesVec<N> exact;
};

// The exact solution x_i(t) = exp(alpha_i delta t) truncated at spec.order.
template <std::size_t N>
SeriesVec<N> exact_solution(const SolutionSpec<N>& spec);

// Builds the system and its right-hand side.  Defaults: E1 lower ones; for
// two columns E2 upper ones and random unit-modulus c1, c2.  The
// right-hand side is the system evaluated at the exact solution by the same
// routines Newton uses, so the exact solution has zero residual.
template <std::size_t N>
GeneratedSystem<N> make_system(const SolutionSpec<N>& spec, int columns, Rng& rng,
                               std::optional<ExponentMatrix> E1 = std::nullopt,
                               std::optional<ExponentMatrix> E2 = std::nullopt,
                               std::optional<std::vector<ComplexMD<N>>> c1 = std::nullopt,
                               std::optional<std::vector<ComplexMD<N>>> c2 = std::nullopt);

// Recommended precision for series of order d; nullopt once hexa doubles
// would be needed (d > 64).
std::optional<Precision> recommend_precision(std::size_t d);

// Start value: exact x_0 with relative noise of size sqrt(eps) per entry
// (1-norm of the perturbation at most sqrt(eps) ||x_0||_1); higher
// coefficients zero.
template <std::size_t N>
SeriesVec<N> perturb_start(const SeriesVec<N>& exact, Rng& rng, double scale = 1.0);

}  // namespace mdn
