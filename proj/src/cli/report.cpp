#include "mdnewton/report.hpp"

#include <cstdio>
#include <cstdlib>

namespace mdn {

std::string hex_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", x);
  return buf;
}

double parse_hex_double(const std::string& s) {
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size())
    throw Error(ErrorCode::InvalidArgument, "malformed float literal: " + s);
  return x;
}

json float_json(double x) { return {{"hex", hex_double(x)}, {"dec", x}}; }

double float_from_json(const json& j) { return parse_hex_double(j.at("hex").get<std::string>()); }

json exponent_json(const ExponentMatrix& E) {
  json rows = json::array();
  for (std::size_t i = 0; i < E.n; ++i) rows.push_back(E.vars(i));
  return rows;
}

ExponentMatrix exponent_from_json(const json& j, std::size_t n) {
  if (j.size() != n) throw Error(ErrorCode::DimensionMismatch, "exponent matrix rows");
  ExponentMatrix E(n);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& v : j[i]) {
      const auto k = v.get<std::size_t>();
      if (k >= n) throw Error(ErrorCode::IndexOutOfRange, "exponent variable index");
      E.rows[i][k] = 1;
    }
  E.validate();
  return E;
}

json config_json(const RunConfig& c) {
  json j;
  j["dim"] = c.dim;
  j["order"] = c.order;
  j["precision"] = std::string(short_name(c.precision));
  j["columns"] = c.columns;
  j["alpha_mode"] = std::string(alpha_mode_name(c.alpha_mode));
  j["alpha_spread"] = float_json(c.alpha_spread);
  j["damping"] = float_json(c.damping);
  j["seed"] = c.seed;
  j["max_iters"] = c.max_iters;
  j["tolerance"] = c.tolerance ? float_json(*c.tolerance) : json(nullptr);
  j["residual_sample"] = c.residual_sample;
  j["threads"] = c.threads;
  j["kernels"] = c.kernels;
  j["report"] = c.report_path;
  j["log"] = c.log_path;
  j["system_out"] = c.system_out;
  return j;
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  c.dim = j.at("dim").get<std::size_t>();
  c.order = j.at("order").get<std::size_t>();
  const auto p = parse_precision(j.at("precision").get<std::string>());
  if (!p) throw Error(ErrorCode::InvalidArgument, "unknown precision");
  c.precision = *p;
  c.columns = j.at("columns").get<int>();
  const auto m = parse_alpha_mode(j.at("alpha_mode").get<std::string>());
  if (!m) throw Error(ErrorCode::InvalidArgument, "unknown alpha mode");
  c.alpha_mode = *m;
  c.alpha_spread = float_from_json(j.at("alpha_spread"));
  c.damping = float_from_json(j.at("damping"));
  c.seed = j.at("seed").get<std::uint64_t>();
  c.max_iters = j.at("max_iters").get<int>();
  if (!j.at("tolerance").is_null()) c.tolerance = float_from_json(j.at("tolerance"));
  c.residual_sample = j.at("residual_sample").get<std::size_t>();
  c.threads = j.at("threads").get<std::size_t>();
  c.kernels = j.at("kernels").get<std::string>();
  c.report_path = j.at("report").get<std::string>();
  c.log_path = j.at("log").get<std::string>();
  c.system_out = j.at("system_out").get<std::string>();
  return c;
}

namespace {

json floats_json(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(float_json(x));
  return a;
}

std::vector<double> floats_from_json(const json& j) {
  std::vector<double> v;
  for (const auto& e : j) v.push_back(float_from_json(e));
  return v;
}

json ops_json(const OpCounter& o) {
  return {{"add", o.additions},
          {"sub", o.subtractions},
          {"mul", o.multiplications},
          {"div", o.divisions},
          {"total", o.total()}};
}

OpCounter ops_from_json(const json& j) {
  OpCounter o;
  o.additions = j.at("add").get<std::uint64_t>();
  o.subtractions = j.at("sub").get<std::uint64_t>();
  o.multiplications = j.at("mul").get<std::uint64_t>();
  o.divisions = j.at("div").get<std::uint64_t>();
  return o;
}

json ledger_json(const LedgerReport& r) {
  json classes = json::array();
  for (const auto& c : r.classes)
    classes.push_back({{"name", c.name},
                       {"invocations", c.invocations},
                       {"ops", ops_json(c.ops)},
                       {"seconds", float_json(c.seconds)},
                       {"percent", float_json(c.percent)},
                       {"gflops", float_json(c.gflops)}});
  return {{"classes", classes},
          {"total_ops", ops_json(r.total_ops)},
          {"total_kernel_seconds", float_json(r.total_kernel_seconds)},
          {"wall_seconds", float_json(r.wall_seconds)},
          {"gflops", float_json(r.gflops)}};
}

LedgerReport ledger_from_json(const json& j) {
  LedgerReport r;
  for (const auto& c : j.at("classes")) {
    ClassReport cr;
    cr.name = c.at("name").get<std::string>();
    cr.invocations = c.at("invocations").get<std::uint64_t>();
    cr.ops = ops_from_json(c.at("ops"));
    cr.seconds = float_from_json(c.at("seconds"));
    cr.percent = float_from_json(c.at("percent"));
    cr.gflops = float_from_json(c.at("gflops"));
    r.classes.push_back(cr);
  }
  r.total_ops = ops_from_json(j.at("total_ops"));
  r.total_kernel_seconds = float_from_json(j.at("total_kernel_seconds"));
  r.wall_seconds = float_from_json(j.at("wall_seconds"));
  r.gflops = float_from_json(j.at("gflops"));
  return r;
}

}  // namespace

std::string_view status_name(NewtonStatus s) {
  return s == NewtonStatus::Converged ? "converged" : "max-iterations-exceeded";
}

json iteration_json(const IterationRecord& r) {
  json secs;
  for (auto c : kKernelClasses)
    secs[std::string(kernel_class_name(c))] = float_json(r.class_seconds[static_cast<std::size_t>(c)]);
  return {{"iteration", r.iteration},
          {"order", r.order},
          {"first_active", r.first_active},
          {"stage_b_norms", floats_json(r.stage_b_norms)},
          {"stage_dx_norms", floats_json(r.stage_dx_norms)},
          {"b_norm", float_json(r.b_norm)},
          {"dx_norm", float_json(r.dx_norm)},
          {"residual", float_json(r.residual)},
          {"qr_refactored", r.qr_refactored},
          {"class_seconds", secs}};
}

IterationRecord iteration_from_json(const json& j) {
  IterationRecord r;
  r.iteration = j.at("iteration").get<int>();
  r.order = j.at("order").get<std::size_t>();
  r.first_active = j.at("first_active").get<std::size_t>();
  r.stage_b_norms = floats_from_json(j.at("stage_b_norms"));
  r.stage_dx_norms = floats_from_json(j.at("stage_dx_norms"));
  r.b_norm = float_from_json(j.at("b_norm"));
  r.dx_norm = float_from_json(j.at("dx_norm"));
  r.residual = float_from_json(j.at("residual"));
  r.qr_refactored = j.at("qr_refactored").get<bool>();
  for (auto c : kKernelClasses)
    r.class_seconds[static_cast<std::size_t>(c)] =
        float_from_json(j.at("class_seconds").at(std::string(kernel_class_name(c))));
  return r;
}

json report_json(const RunReport& r) {
  json j;
  j["config"] = config_json(r.config);
  j["warnings"] = r.warnings;
  j["status"] = r.status;
  j["iterations"] = r.iterations;
  j["tolerance"] = float_json(r.tolerance);
  j["forward_error"] = float_json(r.forward_error);
  j["forward_error_bound"] = float_json(r.forward_error_bound);
  j["qr_count"] = r.qr_count;
  j["min_r_diagonal"] = float_json(r.min_r_diagonal);
  json log = json::array();
  for (const auto& rec : r.log) log.push_back(iteration_json(rec));
  j["log"] = log;
  j["ledger"] = ledger_json(r.ledger);
  j["convolutions"] = {{"series_products", r.conv.series_products},
                       {"coefficient_products", r.conv.coefficient_products}};
  json fabry = json::array();
  for (const auto& f : r.fabry)
    fabry.push_back(f.defined ? json{{"re", float_json(f.re)},
                                     {"im", float_json(f.im)},
                                     {"radius", float_json(f.radius)}}
                              : json(nullptr));
  j["fabry"] = fabry;
  j["environment"] = {{"isa", r.environment.isa},
                      {"threads", r.environment.threads},
                      {"hardware_threads", r.environment.hardware_threads},
                      {"compiler", r.environment.compiler}};
  json sol = json::array();
  for (double x : r.solution) sol.push_back(hex_double(x));
  j["solution"] = {{"limbs", r.limbs}, {"values", sol}};
  return j;
}

RunReport report_from_json(const json& j) {
  RunReport r;
  r.config = config_from_json(j.at("config"));
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  r.status = j.at("status").get<std::string>();
  r.iterations = j.at("iterations").get<int>();
  r.tolerance = float_from_json(j.at("tolerance"));
  r.forward_error = float_from_json(j.at("forward_error"));
  r.forward_error_bound = float_from_json(j.at("forward_error_bound"));
  r.qr_count = j.at("qr_count").get<std::size_t>();
  r.min_r_diagonal = float_from_json(j.at("min_r_diagonal"));
  for (const auto& rec : j.at("log")) r.log.push_back(iteration_from_json(rec));
  r.ledger = ledger_from_json(j.at("ledger"));
  r.conv.series_products = j.at("convolutions").at("series_products").get<std::uint64_t>();
  r.conv.coefficient_products = j.at("convolutions").at("coefficient_products").get<std::uint64_t>();
  for (const auto& f : j.at("fabry")) {
    FabryEntry e;
    if (!f.is_null()) {
      e.defined = true;
      e.re = float_from_json(f.at("re"));
      e.im = float_from_json(f.at("im"));
      e.radius = float_from_json(f.at("radius"));
    }
    r.fabry.push_back(e);
  }
  const json& env = j.at("environment");
  r.environment.isa = env.at("isa").get<std::string>();
  r.environment.threads = env.at("threads").get<std::size_t>();
  r.environment.hardware_threads = env.at("hardware_threads").get<std::size_t>();
  r.environment.compiler = env.at("compiler").get<std::string>();
  r.limbs = j.at("solution").at("limbs").get<std::size_t>();
  for (const auto& v : j.at("solution").at("values"))
    r.solution.push_back(parse_hex_double(v.get<std::string>()));
  return r;
}

}  // namespace mdn
