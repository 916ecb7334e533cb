#pragma once

// Run configuration, run report and their JSON forms.  Floats are written
// as {"hex": C99 hex literal, "dec": nearest decimal}; readers use the hex
// string, so every limb survives a round trip.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mdnewton/ledger.hpp"
#include "mdnewton/newton.hpp"
#include "mdnewton/sysgen.hpp"

namespace mdn {

using json = nlohmann::json;

std::string hex_double(double x);
// Throws InvalidArgument on malformed input.
double parse_hex_double(const std::string& s);

json float_json(double x);
double float_from_json(const json& j);

template <std::size_t N>
json md_json(const MultiDouble<N>& a) {
  json limbs = json::array();
  for (double l : a.limbs) limbs.push_back(hex_double(l));
  return {{"limbs", limbs}, {"dec", a.approx()}};
}

template <std::size_t N>
MultiDouble<N> md_from_json(const json& j) {
  const json& limbs = j.at("limbs");
  if (limbs.size() != N) throw Error(ErrorCode::PrecisionMismatch, "limb count");
  MultiDouble<N> a;
  for (std::size_t i = 0; i < N; ++i) a.limbs[i] = parse_hex_double(limbs[i].get<std::string>());
  return a;
}

template <std::size_t N>
json complex_json(const ComplexMD<N>& z) {
  return {{"re", md_json(z.re)}, {"im", md_json(z.im)}};
}

template <std::size_t N>
ComplexMD<N> complex_from_json(const json& j) {
  return {md_from_json<N>(j.at("re")), md_from_json<N>(j.at("im"))};
}

// Array over components of arrays over coefficients.
template <std::size_t N>
json series_vec_json(const SeriesVec<N>& x) {
  json out = json::array();
  for (std::size_t i = 0; i < x.dim(); ++i) {
    json comp = json::array();
    for (std::size_t k = 0; k < x.order(); ++k) comp.push_back(complex_json(x.get(i, k)));
    out.push_back(comp);
  }
  return out;
}

template <std::size_t N>
SeriesVec<N> series_vec_from_json(const json& j) {
  const std::size_t n = j.size(), d = n ? j[0].size() : 0;
  SeriesVec<N> x(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    if (j[i].size() != d) throw Error(ErrorCode::OrderMismatch, "ragged series vector");
    for (std::size_t k = 0; k < d; ++k) x.set(i, k, complex_from_json<N>(j[i][k]));
  }
  return x;
}

// Rows as lists of variable indices.
json exponent_json(const ExponentMatrix& E);
ExponentMatrix exponent_from_json(const json& j, std::size_t n);

template <std::size_t N>
json system_json(const MonomialSystem<N>& sys) {
  json j;
  j["precision"] = std::string(short_name(Precision{int(N)}));
  j["dim"] = sys.dim();
  j["order"] = sys.order();
  j["columns"] = sys.columns;
  j["E1"] = exponent_json(sys.E1);
  json c1 = json::array(), c2 = json::array();
  for (const auto& c : sys.c1) c1.push_back(complex_json(c));
  j["c1"] = c1;
  if (sys.columns == 2) {
    j["E2"] = exponent_json(sys.E2);
    for (const auto& c : sys.c2) c2.push_back(complex_json(c));
    j["c2"] = c2;
  }
  j["rhs"] = series_vec_json(sys.rhs);
  return j;
}

template <std::size_t N>
MonomialSystem<N> system_from_json(const json& j) {
  if (j.at("precision").get<std::string>() != short_name(Precision{int(N)}))
    throw Error(ErrorCode::PrecisionMismatch, "system precision");
  MonomialSystem<N> sys;
  const std::size_t n = j.at("dim").get<std::size_t>();
  sys.columns = j.at("columns").get<int>();
  sys.E1 = exponent_from_json(j.at("E1"), n);
  for (const auto& c : j.at("c1")) sys.c1.push_back(complex_from_json<N>(c));
  if (sys.columns == 2) {
    sys.E2 = exponent_from_json(j.at("E2"), n);
    for (const auto& c : j.at("c2")) sys.c2.push_back(complex_from_json<N>(c));
  }
  sys.rhs = series_vec_from_json<N>(j.at("rhs"));
  return sys;
}

struct RunConfig {
  std::size_t dim = 16;
  std::size_t order = 8;
  Precision precision = kDouble;
  int columns = 1;
  AlphaMode alpha_mode = AlphaMode::UnitComplex;
  double alpha_spread = 0.1;
  double damping = 1.0;
  std::uint64_t seed = 7;
  int max_iters = 24;
  std::optional<double> tolerance;
  std::size_t residual_sample = 0;
  std::size_t threads = 1;
  std::string kernels = "auto";
  std::string report_path, log_path, system_out;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

json config_json(const RunConfig& c);
RunConfig config_from_json(const json& j);

struct FabryEntry {
  bool defined = false;  // false when the last coefficient is zero
  double re = 0, im = 0, radius = 0;
  friend bool operator==(const FabryEntry&, const FabryEntry&) = default;
};

struct Environment {
  std::string isa;
  std::size_t threads = 1;
  std::size_t hardware_threads = 0;
  std::string compiler;
  friend bool operator==(const Environment&, const Environment&) = default;
};

struct RunReport {
  RunConfig config;
  std::vector<std::string> warnings;
  std::string status;  // "converged" or "max-iterations-exceeded"
  int iterations = 0;
  double tolerance = 0;
  double forward_error = 0;        // max_k ||x_k - exact_k||_1
  double forward_error_bound = 0;  // 1e3 eps(p) n
  std::size_t qr_count = 0;
  double min_r_diagonal = 0;
  std::vector<IterationRecord> log;
  LedgerReport ledger;
  ConvolutionCounter conv;
  std::vector<FabryEntry> fabry;
  Environment environment;
  // Solution limbs: component, coefficient, re limbs then im limbs.
  std::size_t limbs = 1;
  std::vector<double> solution;
};

json iteration_json(const IterationRecord& r);
IterationRecord iteration_from_json(const json& j);

json report_json(const RunReport& r);
RunReport report_from_json(const json& j);

std::string_view status_name(NewtonStatus s);

}  // namespace mdn
