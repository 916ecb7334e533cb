#pragma once

#include <cstdint>

namespace mdn {

// Hardware double operations performed by multiple-double arithmetic.
// Square roots of hardware doubles are booked as divisions.
struct OpCounter {
  std::uint64_t additions = 0;
  std::uint64_t subtractions = 0;
  std::uint64_t multiplications = 0;
  std::uint64_t divisions = 0;

  constexpr std::uint64_t total() const {
    return additions + subtractions + multiplications + divisions;
  }

  constexpr OpCounter& operator+=(const OpCounter& o) {
    additions += o.additions;
    subtractions += o.subtractions;
    multiplications += o.multiplications;
    divisions += o.divisions;
    return *this;
  }

  constexpr OpCounter& operator-=(const OpCounter& o) {
    additions -= o.additions;
    subtractions -= o.subtractions;
    multiplications -= o.multiplications;
    divisions -= o.divisions;
    return *this;
  }

  friend constexpr OpCounter operator+(OpCounter a, const OpCounter& b) { return a += b; }
  friend constexpr OpCounter operator-(OpCounter a, const OpCounter& b) { return a -= b; }

  constexpr OpCounter scaled(std::uint64_t k) const {
    return {additions * k, subtractions * k, multiplications * k, divisions * k};
  }

  friend constexpr bool operator==(const OpCounter&, const OpCounter&) = default;
};

// Series-level work: how many series products and how many coefficient
// products (d^2 per padded convolution) were performed.
struct ConvolutionCounter {
  std::uint64_t series_products = 0;
  std::uint64_t coefficient_products = 0;

  constexpr ConvolutionCounter& operator+=(const ConvolutionCounter& o) {
    series_products += o.series_products;
    coefficient_products += o.coefficient_products;
    return *this;
  }
  constexpr ConvolutionCounter& operator-=(const ConvolutionCounter& o) {
    series_products -= o.series_products;
    coefficient_products -= o.coefficient_products;
    return *this;
  }
  friend constexpr ConvolutionCounter operator-(ConvolutionCounter a, const ConvolutionCounter& b) {
    return a -= b;
  }
  friend constexpr bool operator==(const ConvolutionCounter&, const ConvolutionCounter&) = default;
};

// Everything a thread has counted so far.  Each thread owns one; the thread
// pool folds worker deltas back into the calling thread after a parallel
// region, so counting never takes a lock on the hot path.
struct Tally {
  OpCounter ops;
  ConvolutionCounter conv;

  Tally& operator+=(const Tally& o) {
    ops += o.ops;
    conv += o.conv;
    return *this;
  }
  Tally& operator-=(const Tally& o) {
    ops -= o.ops;
    conv -= o.conv;
    return *this;
  }
  friend Tally operator-(Tally a, const Tally& b) { return a -= b; }
};

inline thread_local Tally this_thread_tally;

inline Tally& tally() { return this_thread_tally; }
inline OpCounter& thread_ops() { return this_thread_tally.ops; }
inline ConvolutionCounter& thread_convolutions() { return this_thread_tally.conv; }

}  // namespace mdn
