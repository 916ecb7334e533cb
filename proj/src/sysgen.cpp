#include "mdnewton/sysgen.hpp"

#include <cmath>
#include <numbers>

#include "mdnewton/evaldiff.hpp"

namespace mdn {

std::vector<std::size_t> ExponentMatrix::vars(std::size_t i) const {
  std::vector<std::size_t> v;
  for (std::size_t j = 0; j < n; ++j)
    if (rows[i][j]) v.push_back(j);
  return v;
}

void ExponentMatrix::validate() const {
  if (rows.size() != n) throw Error(ErrorCode::DimensionMismatch, "exponent matrix row count");
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw Error(ErrorCode::DimensionMismatch, "exponent matrix row length");
    bool any = false;
    for (auto e : rows[i]) {
      if (e > 1) throw Error(ErrorCode::InvalidArgument, "exponents must be 0 or 1");
      any = any || e == 1;
    }
    if (!any) throw Error(ErrorCode::EmptyMonomial, "row " + std::to_string(i) + " has no variable");
  }
}

ExponentMatrix triangular_ones(std::size_t n, Orientation orientation) {
  ExponentMatrix E(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      E.rows[i][j] = orientation == Orientation::Lower ? (j <= i) : (j <= n - 1 - i);
  return E;
}

std::string_view alpha_mode_name(AlphaMode m) {
  return m == AlphaMode::UnitComplex ? "unit-complex" : "real-near-one";
}

std::optional<AlphaMode> parse_alpha_mode(std::string_view s) {
  if (s == "unit-complex") return AlphaMode::UnitComplex;
  if (s == "real-near-one") return AlphaMode::RealNearOne;
  return std::nullopt;
}

std::optional<Precision> recommend_precision(std::size_t d) {
  if (d <= 8) return kDouble;
  if (d <= 24) return kDoubleDouble;
  if (d <= 32) return kQuadDouble;
  if (d <= 64) return kOctoDouble;
  return std::nullopt;
}

namespace {

template <std::size_t N>
ComplexMD<N> unit_complex(Rng& rng) {
  const double theta = 2.0 * std::numbers::pi * rng.uniform01();
  ComplexMD<N> z(std::cos(theta), std::sin(theta));
  // Rescale in working precision so that |z| = 1 to full accuracy.
  MultiDouble<N> r = cabs(z);
  return {md_div(z.re, r), md_div(z.im, r)};
}

}  // namespace

template <std::size_t N>
bool MonomialSystem<N>::unit_c1() const {
  for (const auto& c : c1)
    if (!(c == ComplexMD<N>(1.0))) return false;
  return true;
}

template <std::size_t N>
SolutionSpec<N> random_spec(std::size_t n, std::size_t order, AlphaMode mode, double spread,
                            double damping, Rng& rng) {
  SolutionSpec<N> s;
  s.order = order;
  s.damping = MultiDouble<N>(damping);
  for (std::size_t i = 0; i < n; ++i) {
    if (mode == AlphaMode::UnitComplex) {
      s.alphas.push_back(unit_complex<N>(rng));
    } else {
      const double sign = rng.uniform01() < 0.5 ? -1.0 : 1.0;
      s.alphas.push_back(ComplexMD<N>(sign * (1.0 - spread * rng.uniform01())));
    }
  }
  return s;
}

template <std::size_t N>
SeriesVec<N> exact_solution(const SolutionSpec<N>& spec) {
  const std::size_t n = spec.alphas.size();
  SeriesVec<N> x(n, spec.order);
  for (std::size_t i = 0; i < n; ++i) {
    ComplexMD<N> a = spec.alphas[i];
    if (!(spec.damping == MultiDouble<N>(1.0))) a = cscale(a, spec.damping);
    x.set_component(i, exp_series(a, spec.order));
  }
  return x;
}

template <std::size_t N>
GeneratedSystem<N> make_system(const SolutionSpec<N>& spec, int columns, Rng& rng,
                               std::optional<ExponentMatrix> E1, std::optional<ExponentMatrix> E2,
                               std::optional<std::vector<ComplexMD<N>>> c1,
                               std::optional<std::vector<ComplexMD<N>>> c2) {
  const std::size_t n = spec.alphas.size();
  if (columns != 1 && columns != 2)
    throw Error(ErrorCode::InvalidArgument, "columns must be 1 or 2");
  if (n == 0) throw Error(ErrorCode::DimensionMismatch, "empty system");
  GeneratedSystem<N> g;
  auto& sys = g.system;
  sys.columns = columns;
  sys.E1 = E1 ? *E1 : triangular_ones(n, Orientation::Lower);
  if (sys.E1.n != n) throw Error(ErrorCode::DimensionMismatch, "E1 dimension");
  sys.E1.validate();
  if (columns == 2) {
    sys.E2 = E2 ? *E2 : triangular_ones(n, Orientation::Upper);
    if (sys.E2.n != n) throw Error(ErrorCode::DimensionMismatch, "E2 dimension");
    sys.E2.validate();
    if (c1) {
      sys.c1 = *c1;
    } else {
      for (std::size_t i = 0; i < n; ++i) sys.c1.push_back(unit_complex<N>(rng));
    }
    if (c2) {
      sys.c2 = *c2;
    } else {
      for (std::size_t i = 0; i < n; ++i) sys.c2.push_back(unit_complex<N>(rng));
    }
    if (sys.c2.size() != n) throw Error(ErrorCode::DimensionMismatch, "c2 length");
  } else {
    sys.c1 = c1 ? *c1 : std::vector<ComplexMD<N>>(n, ComplexMD<N>(1.0));
  }
  if (sys.c1.size() != n) throw Error(ErrorCode::DimensionMismatch, "c1 length");
  g.exact = exact_solution(spec);
  sys.rhs = system_values(sys, g.exact);
  return g;
}

template <std::size_t N>
SeriesVec<N> perturb_start(const SeriesVec<N>& exact, Rng& rng, double scale) {
  const double noise = scale * std::sqrt(eps(Precision{static_cast<int>(N)}));
  SeriesVec<N> x(exact.dim(), exact.order());
  for (std::size_t i = 0; i < exact.dim(); ++i) {
    ComplexMD<N> x0 = exact.get(i, 0);
    const double mag = cabs1(x0).approx();
    const double ur = rng.uniform(-1.0, 1.0), ui = rng.uniform(-1.0, 1.0);
    ComplexMD<N> u(noise * mag * ur / 2, noise * mag * ui / 2);
    x.set(i, 0, cadd(x0, u));
  }
  return x;
}

#define MDN_INSTANTIATE(N)                                                                    \
  template struct MonomialSystem<N>;                                                          \
  template SolutionSpec<N> random_spec<N>(std::size_t, std::size_t, AlphaMode, double, double, \
                                          Rng&);                                              \
  template SeriesVec<N> exact_solution<N>(const SolutionSpec<N>&);                            \
  template GeneratedSystem<N> make_system<N>(                                                 \
      const SolutionSpec<N>&, int, Rng&, std::optional<ExponentMatrix>,                       \
      std::optional<ExponentMatrix>, std::optional<std::vector<ComplexMD<N>>>,                \
      std::optional<std::vector<ComplexMD<N>>>);                                              \
  template SeriesVec<N> perturb_start<N>(const SeriesVec<N>&, Rng&, double);
MDN_INSTANTIATE(1)
MDN_INSTANTIATE(2)
MDN_INSTANTIATE(4)
MDN_INSTANTIATE(8)
#undef MDN_INSTANTIATE

}  // namespace mdn
