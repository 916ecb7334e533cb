#pragma once

#include <cstddef>
#include <vector>

#include "mdnewton/matrix.hpp"
#include "mdnewton/series.hpp"
#include "mdnewton/sysgen.hpp"

namespace mdn {

// Value and all partial derivatives of one product of m distinct
// variables.  gradient[j] belongs to vars[j].
template <std::size_t N>
struct MonomialResult {
  Series<N> value;
  std::vector<Series<N>> gradient;
};

// Reverse mode over series: m-1 forward products x1*x2, (x1x2)*x3, ...;
// m-2 backward products xm*x(m-1), (xm x(m-1))*x(m-2), ...; and m-2 cross
// products for the interior variables, 3m-5 convolutions in all for m >= 3.
// m = 1 and m = 2 take the obvious shortcuts (0 and 1 convolution).
// Throws EmptyMonomial, DuplicateVariable, IndexOutOfRange.
template <std::size_t N>
MonomialResult<N> speel_monomial(const std::vector<std::size_t>& vars, const SeriesVec<N>& x);

// Same scheme on already gathered series; xs[j] is the series of vars[j].
template <std::size_t N>
void speel(const std::vector<const Series<N>*>& xs, MonomialResult<N>& out);

// Convolutions the scheme uses for m variables.
constexpr std::size_t speel_products(std::size_t m) { return m <= 1 ? 0 : m == 2 ? 1 : 3 * m - 5; }

template <std::size_t N>
struct Evaluation {
  SeriesMatrix<N> A;  // Jacobian series
  SeriesVec<N> b;     // rhs - f(x)
};

// f(x(t)) truncated at the order of x.
template <std::size_t N>
SeriesVec<N> system_values(const MonomialSystem<N>& sys, const SeriesVec<N>& x);

// Jacobian A(t) and Newton right-hand side b(t) = rhs(t) - f(x(t)), both
// truncated at order d (default: the order of x), using the first d
// coefficients of x.  Rows run in parallel.
template <std::size_t N>
Evaluation<N> evaluate_system(const MonomialSystem<N>& sys, const SeriesVec<N>& x,
                              std::size_t d = 0);

struct ArithmeticIntensity {
  double predicted_factor = 0;    // multiplication cost per limb: 23/2, 336/4, 1742/8
  double predicted = 0;           // (3n-5) d^2 / (n d) times the factor
  double measured_factor = 0;     // same with this build's measured multiply cost
  double measured = 0;
  double matvec_intensity = 0;    // about d
  double convolution_intensity = 0;  // about 3d
};

// Reference multiply costs per precision from the literature: 1, 23, 336, 1742.
double reference_mul_cost(Precision p);

ArithmeticIntensity intensity_report(std::size_t n, std::size_t d, Precision p);

}  // namespace mdn
