#pragma once

// The experiment pipeline behind the command line: generate a system,
// perturb the start, run Newton, and summarize.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mdnewton/report.hpp"

namespace mdn {

// Throws Error(InvalidArgument) on an unusable configuration.
void validate(const RunConfig& c);

// Notes for configurations that run but void the accuracy guarantee.
std::vector<std::string> config_warnings(const RunConfig& c);

struct ExecuteOptions {
  std::function<void(const IterationRecord&)> on_iteration;
  json* system = nullptr;  // receives the generated system when set
};

// Sets the thread count and kernel ISA from the configuration, then runs.
RunReport execute(const RunConfig& c, const ExecuteOptions& options = {});

enum class SweepAxis { Precision, Order, Dim };
std::optional<SweepAxis> parse_sweep_axis(std::string_view s);
std::string_view sweep_axis_name(SweepAxis a);

// base with the axis set to value.  Throws InvalidArgument.
RunConfig apply_axis(RunConfig base, SweepAxis axis, const std::string& value);

struct SweepRow {
  std::string value;
  std::optional<RunReport> report;
  std::string error;  // set when the row failed
};

// Rows run one after another; a failing row is recorded and the sweep
// goes on.
std::vector<SweepRow> sweep(const RunConfig& base, SweepAxis axis,
                            const std::vector<std::string>& values);

std::string sweep_csv_header(SweepAxis axis);
std::string sweep_csv_row(const SweepRow& row);

}  // namespace mdn
