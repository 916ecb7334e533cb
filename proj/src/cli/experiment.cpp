#include "mdnewton/experiment.hpp"

#include <cstdio>
#include <thread>

#include "mdnewton/kernels.hpp"
#include "mdnewton/parallel.hpp"

namespace mdn {

namespace {

std::string_view long_name(Precision p) {
  switch (p.limbs) {
    case 1: return "double";
    case 2: return "double-double";
    case 4: return "quad-double";
    case 8: return "octo-double";
  }
  return "?";
}

template <std::size_t N>
double forward_error(const SeriesVec<N>& x, const SeriesVec<N>& exact) {
  MultiDouble<N> worst;
  for (std::size_t k = 0; k < exact.order(); ++k) {
    MultiDouble<N> s;
    for (std::size_t i = 0; i < exact.dim(); ++i) s = md_add(s, cabs1(csub(x.get(i, k), exact.get(i, k))));
    if (s > worst) worst = s;
  }
  return worst.approx();
}

template <std::size_t N>
RunReport execute_n(const RunConfig& c, const ExecuteOptions& options) {
  RunReport r;
  r.config = c;
  r.warnings = config_warnings(c);

  Rng rng(c.seed);
  const auto spec = random_spec<N>(c.dim, c.order, c.alpha_mode, c.alpha_spread, c.damping, rng);
  const auto g = make_system<N>(spec, c.columns, rng);
  if (options.system) *options.system = system_json(g.system);
  const auto x0 = perturb_start(g.exact, rng);

  NewtonOptions o;
  o.max_iterations = c.max_iters;
  o.tolerance = c.tolerance;
  o.residual_sample = c.residual_sample;
  o.sample_seed = c.seed;
  o.on_iteration = options.on_iteration;
  const NewtonResult<N> res = run_newton(g.system, x0, o);

  r.status = std::string(status_name(res.status));
  r.iterations = res.iterations;
  r.tolerance = res.tolerance;
  r.forward_error = forward_error(res.x, g.exact);
  r.forward_error_bound = 1e3 * eps_v<N> * double(c.dim);
  r.qr_count = res.qr_count;
  r.min_r_diagonal = res.min_r_diagonal;
  r.log = res.log;
  r.ledger = ledger_report(res.ledger, res.wall_seconds);
  r.conv = res.conv;
  for (std::size_t i = 0; i < c.dim; ++i) {
    FabryEntry e;
    if (c.order >= 2) {
      try {
        const auto f = fabry_ratio(res.x.component(i));
        e = {true, f.z.re.approx(), f.z.im.approx(), f.radius.approx()};
      } catch (const Error&) {
        // zero last coefficient: no estimate
      }
    }
    r.fabry.push_back(e);
  }
  r.limbs = N;
  for (std::size_t i = 0; i < c.dim; ++i)
    for (std::size_t k = 0; k < c.order; ++k) {
      const ComplexMD<N> z = res.x.get(i, k);
      r.solution.insert(r.solution.end(), z.re.limbs.begin(), z.re.limbs.end());
      r.solution.insert(r.solution.end(), z.im.limbs.begin(), z.im.limbs.end());
    }
  return r;
}

std::string csv_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

void validate(const RunConfig& c) {
  auto bad = [](const std::string& m) { throw Error(ErrorCode::InvalidArgument, m); };
  if (c.dim < 1) bad("--dim must be at least 1");
  if (c.order < 1) bad("--order must be at least 1");
  if (!valid(c.precision)) bad("--precision must be d, dd, qd or od");
  if (c.columns != 1 && c.columns != 2) bad("--columns must be 1 or 2");
  if (!(c.damping > 0 && c.damping <= 1)) bad("--damping must lie in (0, 1]");
  if (!(c.alpha_spread >= 0 && c.alpha_spread < 1)) bad("--alpha-spread must lie in [0, 1)");
  if (c.max_iters < 1) bad("--max-iters must be at least 1");
  if (c.tolerance && !(*c.tolerance > 0)) bad("--tolerance must be positive");
  if (c.residual_sample > c.dim) bad("--residual-sample exceeds --dim");
  if (c.threads < 1) bad("--threads must be at least 1");
  const auto isa = kernels::parse_isa(c.kernels);
  if (!isa) bad("--kernels must be auto, scalar or avx2");
  if (*isa == kernels::Isa::Avx2 && !kernels::avx2_supported()) bad("AVX2 is not available on this CPU");
}

std::vector<std::string> config_warnings(const RunConfig& c) {
  std::vector<std::string> w;
  const auto rec = recommend_precision(c.order);
  if (!rec) {
    w.push_back("order " + std::to_string(c.order) +
                " exceeds octo-double guarantee; accuracy is no longer guaranteed");
  } else if (rec->limbs > c.precision.limbs) {
    w.push_back("order " + std::to_string(c.order) + " exceeds " +
                std::string(long_name(c.precision)) + " guarantee; recommended precision " +
                std::string(short_name(*rec)));
  }
  return w;
}

RunReport execute(const RunConfig& c, const ExecuteOptions& options) {
  validate(c);
  set_thread_count(c.threads);
  kernels::set_isa(*kernels::parse_isa(c.kernels));
  RunReport r;
  switch (c.precision.limbs) {
    case 1: r = execute_n<1>(c, options); break;
    case 2: r = execute_n<2>(c, options); break;
    case 4: r = execute_n<4>(c, options); break;
    default: r = execute_n<8>(c, options); break;
  }
  r.environment.isa = std::string(kernels::isa_name(kernels::active_isa()));
  r.environment.threads = thread_count();
  r.environment.hardware_threads = std::thread::hardware_concurrency();
  r.environment.compiler = __VERSION__;
  return r;
}

std::optional<SweepAxis> parse_sweep_axis(std::string_view s) {
  if (s == "precision") return SweepAxis::Precision;
  if (s == "order") return SweepAxis::Order;
  if (s == "dim") return SweepAxis::Dim;
  return std::nullopt;
}

std::string_view sweep_axis_name(SweepAxis a) {
  switch (a) {
    case SweepAxis::Precision: return "precision";
    case SweepAxis::Order: return "order";
    case SweepAxis::Dim: return "dim";
  }
  return "?";
}

RunConfig apply_axis(RunConfig base, SweepAxis axis, const std::string& value) {
  auto count = [&](const char* what) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(value, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != value.size())
      throw Error(ErrorCode::InvalidArgument, std::string("bad ") + what + " value: " + value);
    return static_cast<std::size_t>(v);
  };
  switch (axis) {
    case SweepAxis::Precision: {
      const auto p = parse_precision(value);
      if (!p) throw Error(ErrorCode::InvalidArgument, "bad precision value: " + value);
      base.precision = *p;
      break;
    }
    case SweepAxis::Order: base.order = count("order"); break;
    case SweepAxis::Dim: base.dim = count("dim"); break;
  }
  return base;
}

std::vector<SweepRow> sweep(const RunConfig& base, SweepAxis axis,
                            const std::vector<std::string>& values) {
  std::vector<SweepRow> rows;
  for (const auto& v : values) {
    SweepRow row;
    row.value = v;
    try {
      RunConfig c = apply_axis(base, axis, v);
      c.report_path.clear();
      c.log_path.clear();
      c.system_out.clear();
      row.report = execute(c);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string sweep_csv_header(SweepAxis axis) {
  std::string h(sweep_axis_name(axis));
  h += ",status,iterations,forward_error";
  for (auto c : kKernelClasses) h += "," + std::string(kernel_class_name(c)) + "_seconds";
  h += ",total_kernel_seconds,wall_seconds";
  for (auto c : kKernelClasses) h += "," + std::string(kernel_class_name(c)) + "_ops";
  h += ",total_ops,gflops,error";
  return h;
}

std::string sweep_csv_row(const SweepRow& row) {
  std::string s = row.value;
  if (!row.report) {
    s += ",failed,,";
    for (std::size_t i = 0; i < 2 * kKernelClassCount + 5; ++i) s += ",";
    std::string e = row.error;
    for (auto& ch : e)
      if (ch == '"') ch = '\'';
    return s + "\"" + e + "\"";
  }
  const RunReport& r = *row.report;
  s += "," + r.status + "," + std::to_string(r.iterations) + "," + csv_double(r.forward_error);
  for (const auto& c : r.ledger.classes) s += "," + csv_double(c.seconds);
  s += "," + csv_double(r.ledger.total_kernel_seconds) + "," + csv_double(r.ledger.wall_seconds);
  for (const auto& c : r.ledger.classes) s += "," + std::to_string(c.ops.total());
  s += "," + std::to_string(r.ledger.total_ops.total()) + "," + csv_double(r.ledger.gflops) + ",";
  return s;
}

}  // namespace mdn
