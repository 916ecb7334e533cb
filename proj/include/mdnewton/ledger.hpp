#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mdnewton/counting.hpp"

namespace mdn {

enum class KernelClass { Convolution, Qr, Qhb, Bs, Updates, Residuals };
inline constexpr std::size_t kKernelClassCount = 6;
inline constexpr std::array<KernelClass, kKernelClassCount> kKernelClasses = {
    KernelClass::Convolution, KernelClass::Qr,      KernelClass::Qhb,
    KernelClass::Bs,          KernelClass::Updates, KernelClass::Residuals};

std::string_view kernel_class_name(KernelClass c);
std::optional<KernelClass> parse_kernel_class(std::string_view s);

struct ClassStats {
  std::uint64_t invocations = 0;
  OpCounter ops;
  ConvolutionCounter conv;
  double seconds = 0;
};

// Per-class invocation counts, hardware double operations and wall time.
// Work is attributed through Scope objects, which diff the calling
// thread's tally (workers fold theirs back in before a parallel loop
// returns) and time the region on a monotonic clock.
class KernelLedger {
 public:
  class Scope {
   public:
    Scope(KernelLedger* ledger, KernelClass c);
    Scope(const Scope&) = delete;
    Scope& operator=(const Scope&) = delete;
    ~Scope();

   private:
    KernelLedger* ledger_;
    KernelClass class_;
    Tally start_;
    std::chrono::steady_clock::time_point t0_;
  };

  // A null ledger makes the scope a no-op, so kernels can take an
  // optional ledger pointer.
  static Scope scope(KernelLedger* ledger, KernelClass c) { return Scope(ledger, c); }

  const ClassStats& at(KernelClass c) const { return stats_[static_cast<std::size_t>(c)]; }
  ClassStats& at(KernelClass c) { return stats_[static_cast<std::size_t>(c)]; }
  OpCounter total_ops() const;
  double total_seconds() const;

 private:
  std::array<ClassStats, kKernelClassCount> stats_{};
};

struct ClassReport {
  std::string name;
  std::uint64_t invocations = 0;
  OpCounter ops;
  double seconds = 0;
  double percent = 0;  // of total kernel time
  double gflops = 0;   // double operations per second / 1e9
};

struct LedgerReport {
  std::vector<ClassReport> classes;
  OpCounter total_ops;
  double total_kernel_seconds = 0;
  double wall_seconds = 0;
  double gflops = 0;  // total ops over total kernel time
};

LedgerReport ledger_report(const KernelLedger& ledger, double wall_seconds);

}  // namespace mdn
