#include "mdnewton/ledger.hpp"

namespace mdn {

std::string_view kernel_class_name(KernelClass c) {
  switch (c) {
    case KernelClass::Convolution: return "convolution";
    case KernelClass::Qr: return "qr";
    case KernelClass::Qhb: return "qhb";
    case KernelClass::Bs: return "bs";
    case KernelClass::Updates: return "updates";
    case KernelClass::Residuals: return "residuals";
  }
  return "?";
}

std::optional<KernelClass> parse_kernel_class(std::string_view s) {
  for (auto c : kKernelClasses)
    if (kernel_class_name(c) == s) return c;
  return std::nullopt;
}

KernelLedger::Scope::Scope(KernelLedger* ledger, KernelClass c)
    : ledger_(ledger), class_(c) {
  if (ledger_) {
    start_ = tally();
    t0_ = std::chrono::steady_clock::now();
  }
}

KernelLedger::Scope::~Scope() {
  if (!ledger_) return;
  const auto t1 = std::chrono::steady_clock::now();
  const Tally delta = tally() - start_;
  ClassStats& s = ledger_->at(class_);
  ++s.invocations;
  s.ops += delta.ops;
  s.conv += delta.conv;
  s.seconds += std::chrono::duration<double>(t1 - t0_).count();
}

OpCounter KernelLedger::total_ops() const {
  OpCounter t;
  for (const auto& s : stats_) t += s.ops;
  return t;
}

double KernelLedger::total_seconds() const {
  double t = 0;
  for (const auto& s : stats_) t += s.seconds;
  return t;
}

LedgerReport ledger_report(const KernelLedger& ledger, double wall_seconds) {
  LedgerReport r;
  r.total_ops = ledger.total_ops();
  r.total_kernel_seconds = ledger.total_seconds();
  r.wall_seconds = wall_seconds;
  for (auto c : kKernelClasses) {
    const ClassStats& s = ledger.at(c);
    ClassReport cr;
    cr.name = std::string(kernel_class_name(c));
    cr.invocations = s.invocations;
    cr.ops = s.ops;
    cr.seconds = s.seconds;
    cr.percent = r.total_kernel_seconds > 0 ? 100.0 * s.seconds / r.total_kernel_seconds : 0.0;
    cr.gflops = s.seconds > 0 ? static_cast<double>(s.ops.total()) / s.seconds / 1e9 : 0.0;
    r.classes.push_back(cr);
  }
  r.gflops = r.total_kernel_seconds > 0
                 ? static_cast<double>(r.total_ops.total()) / r.total_kernel_seconds / 1e9
                 : 0.0;
  return r;
}

}  // namespace mdn
