#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "mdnewton/evaldiff.hpp"
#include "mdnewton/ledger.hpp"
#include "mdnewton/linsolve.hpp"

namespace mdn {

// 1, then d := d + 1 + floor(d/2), capped at d_max.
std::vector<std::size_t> staggered_orders(std::size_t d_max);

enum class NewtonStatus { Converged, MaxIterationsExceeded };

struct IterationRecord {
  int iteration = 0;
  std::size_t order = 0;        // active order d
  std::size_t first_active = 0;  // lowest stage solved this iteration; those below are frozen
  std::vector<double> stage_b_norms;   // ||b_k||, k = first_active..order-1
  std::vector<double> stage_dx_norms;  // ||dx_k|| of the same stages
  double b_norm = 0;
  double dx_norm = 0;
  double residual = 0;
  bool qr_refactored = false;
  std::array<double, kKernelClassCount> class_seconds{};  // cumulative
};

struct NewtonOptions {
  int max_iterations = 24;
  std::optional<double> tolerance;  // default 1e3 * eps(p)
  std::size_t residual_sample = 0;  // 0: all equations
  std::uint64_t sample_seed = 0;
  // Called after every iteration, e.g. to stream a JSONL log.
  std::function<void(const IterationRecord&)> on_iteration;
};

template <std::size_t N>
struct NewtonResult {
  NewtonStatus status = NewtonStatus::MaxIterationsExceeded;
  int iterations = 0;
  SeriesVec<N> x;
  KernelLedger ledger;
  std::vector<IterationRecord> log;
  OpCounter ops;            // everything counted on the calling thread during the run
  ConvolutionCounter conv;
  std::size_t qr_count = 0;
  double min_r_diagonal = 0;  // smallest |R_ii| of the latest factorization
  double tolerance = 0;
  double wall_seconds = 0;
};

template <std::size_t N>
double default_tolerance() {
  return 1e3 * eps_v<N>;
}

// Staggered Newton on the series system.  x0 supplies the start (usually
// only its leading coefficient is nonzero); it is padded to the system's
// order.
template <std::size_t N>
NewtonResult<N> run_newton(const MonomialSystem<N>& sys, const SeriesVec<N>& x0,
                           const NewtonOptions& options = {});

}  // namespace mdn
