// mdnewton: run, sweep and verify front end.
//
// Exit codes: 0 success, 1 usage error, 2 run did not converge (run) or an
// oracle suite failed (verify).

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mdnewton/experiment.hpp"
#include "mdnewton/oracle/suites.hpp"
#include "mdnewton/parallel.hpp"

namespace {

using namespace mdn;

struct Flags {
  RunConfig config;
  std::string precision = "d";
  std::string alpha_mode = "unit-complex";
  double tolerance = 0;
};

void add_run_flags(CLI::App* app, Flags& f) {
  auto& c = f.config;
  app->add_option("--dim", c.dim, "number of variables n")->capture_default_str();
  app->add_option("--order", c.order, "truncation order d")->capture_default_str();
  app->add_option("--precision", f.precision, "d, dd, qd or od")->capture_default_str();
  app->add_option("--columns", c.columns, "monomial columns, 1 or 2")->capture_default_str();
  app->add_option("--alpha-mode", f.alpha_mode, "unit-complex or real-near-one")->capture_default_str();
  app->add_option("--alpha-spread", c.alpha_spread, "real-near-one: alpha in +-[1-s, 1]")
      ->capture_default_str();
  app->add_option("--damping", c.damping, "scale delta in (0, 1] of the exponents")->capture_default_str();
  app->add_option("--seed", c.seed, "generator seed")->capture_default_str();
  app->add_option("--max-iters", c.max_iters, "Newton iteration cap")->capture_default_str();
  app->add_option("--tolerance", f.tolerance, "override of the 1e3 eps(p) tolerance");
  app->add_option("--residual-sample", c.residual_sample, "equations in the residual, 0 = all")
      ->capture_default_str();
  app->add_option("--threads", c.threads, "worker threads (default MDNEWTON_THREADS or 1)");
  app->add_option("--kernels", c.kernels, "auto, scalar or avx2")->capture_default_str();
}

// Folds string flags into the configuration; throws on bad values.
void finish_config(Flags& f) {
  const auto p = parse_precision(f.precision);
  if (!p) throw Error(ErrorCode::InvalidArgument, "--precision must be d, dd, qd or od");
  f.config.precision = *p;
  const auto m = parse_alpha_mode(f.alpha_mode);
  if (!m) throw Error(ErrorCode::InvalidArgument, "--alpha-mode must be unit-complex or real-near-one");
  f.config.alpha_mode = *m;
  if (f.tolerance != 0) f.config.tolerance = f.tolerance;
  validate(f.config);
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  return static_cast<bool>(out);
}

void print_summary(const RunReport& r) {
  std::printf("status %s after %d iterations (tolerance %.3g)\n", r.status.c_str(), r.iterations,
              r.tolerance);
  std::printf("forward error %.3e (bound %.3e)\n", r.forward_error, r.forward_error_bound);
  std::printf("%-12s %8s %14s %10s %8s %8s\n", "kernel", "calls", "ops", "seconds", "percent",
              "Gflop/s");
  for (const auto& c : r.ledger.classes)
    std::printf("%-12s %8llu %14llu %10.4f %8.2f %8.3f\n", c.name.c_str(),
                static_cast<unsigned long long>(c.invocations),
                static_cast<unsigned long long>(c.ops.total()), c.seconds, c.percent, c.gflops);
  std::printf("kernel time %.4f s, wall time %.4f s, %.3f Gflop/s\n", r.ledger.total_kernel_seconds,
              r.ledger.wall_seconds, r.ledger.gflops);
}

int cmd_run(Flags& f) {
  finish_config(f);
  for (const auto& w : config_warnings(f.config)) std::fprintf(stderr, "warning: %s\n", w.c_str());

  std::ofstream log;
  if (!f.config.log_path.empty()) {
    log.open(f.config.log_path);
    if (!log) throw Error(ErrorCode::InvalidArgument, "cannot open log file " + f.config.log_path);
  }
  json system;
  ExecuteOptions o;
  if (log.is_open()) o.on_iteration = [&](const IterationRecord& rec) { log << iteration_json(rec).dump() << '\n' << std::flush; };
  if (!f.config.system_out.empty()) o.system = &system;

  const RunReport r = execute(f.config, o);
  print_summary(r);
  if (!f.config.report_path.empty() && !write_file(f.config.report_path, report_json(r).dump(2) + "\n"))
    throw Error(ErrorCode::InvalidArgument, "cannot write report " + f.config.report_path);
  if (!f.config.system_out.empty() && !write_file(f.config.system_out, system.dump(2) + "\n"))
    throw Error(ErrorCode::InvalidArgument, "cannot write system " + f.config.system_out);
  return r.status == "converged" ? 0 : 2;
}

std::vector<std::string> split_values(const std::string& s) {
  std::vector<std::string> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) v.push_back(item);
  return v;
}

int cmd_sweep(Flags& f, const std::string& axis_name, const std::string& values,
              const std::string& csv_path) {
  const auto axis = parse_sweep_axis(axis_name);
  if (!axis) throw Error(ErrorCode::InvalidArgument, "--axis must be precision, order or dim");
  finish_config(f);
  const auto list = split_values(values);
  for (const auto& v : list) validate(apply_axis(f.config, *axis, v));

  std::ofstream file;
  if (!csv_path.empty()) {
    file.open(csv_path);
    if (!file) throw Error(ErrorCode::InvalidArgument, "cannot open " + csv_path);
  }
  std::ostream& out = csv_path.empty() ? std::cout : file;
  out << sweep_csv_header(*axis) << '\n' << std::flush;
  for (const auto& v : list) {
    // One row at a time, so partial results survive an interrupted sweep.
    const auto rows = sweep(f.config, *axis, {v});
    for (const auto& w : rows.front().report ? rows.front().report->warnings : std::vector<std::string>{})
      std::fprintf(stderr, "warning (%s): %s\n", v.c_str(), w.c_str());
    if (!rows.front().error.empty())
      std::fprintf(stderr, "row %s failed: %s\n", v.c_str(), rows.front().error.c_str());
    out << sweep_csv_row(rows.front()) << '\n' << std::flush;
  }
  return 0;
}

int cmd_verify(const oracle::VerifyOptions& o) {
  const auto results = oracle::run_all(o);
  bool ok = true;
  std::printf("%-12s %-6s %9s %9s  %s\n", "suite", "result", "cases", "failures", "detail");
  for (const auto& r : results) {
    std::printf("%-12s %-6s %9zu %9zu  %s\n", r.name.c_str(), r.passed ? "pass" : "FAIL", r.cases,
                r.failures, r.detail.c_str());
    ok = ok && r.passed;
  }
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Power series Newton solver in multiple-double precision"};
  app.require_subcommand(1);

  Flags run_flags, sweep_flags;
  run_flags.config.threads = sweep_flags.config.threads = default_thread_count();

  auto* run = app.add_subcommand("run", "solve one generated system and report");
  add_run_flags(run, run_flags);
  run->add_option("--report", run_flags.config.report_path, "JSON report path");
  run->add_option("--log", run_flags.config.log_path, "JSONL convergence log path");
  run->add_option("--system-out", run_flags.config.system_out, "write the generated system as JSON");

  auto* sw = app.add_subcommand("sweep", "repeat a run along one axis, CSV out");
  add_run_flags(sw, sweep_flags);
  std::string axis = "precision", values, csv;
  sw->add_option("--axis", axis, "precision, order or dim")->capture_default_str();
  sw->add_option("--values", values, "comma separated axis values");
  sw->add_option("--csv", csv, "output path (default stdout)");

  auto* verify = app.add_subcommand("verify", "run the oracle suites");
  oracle::VerifyOptions vo;
  std::string fault;
  verify->add_option("--pairs", vo.dyadic.pairs, "random pairs per precision and operation")
      ->capture_default_str();
  verify->add_option("--seed", vo.seed, "suite seed")->capture_default_str();
  verify->add_option("--inject-fault", fault, "corrupt an operation: md_mul");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*run) return cmd_run(run_flags);
    if (*sw) return cmd_sweep(sweep_flags, axis, values, csv);
    if (*verify) {
      if (!fault.empty() && fault != "md_mul") {
        std::fprintf(stderr, "error: --inject-fault supports md_mul only\n");
        return 1;
      }
      vo.dyadic.fault_in_mul = !fault.empty();
      vo.dyadic.seed = vo.seed;
      return cmd_verify(vo);
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.code() == ErrorCode::InvalidArgument ? 1 : 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 1;
}
