#pragma once

#include <chrono>
#include <cstddef>
#include <optional>

#include "latred/core.hpp"

namespace latred {

/// Outcome of any reducer run on a standalone basis.
struct ReductionResult {
  Basis basis;
  /// Productive steps: greedy pivots, LLL swaps, or applied alternative steps.
  std::size_t iterations = 0;
  NormSummary before;
  NormSummary after;
  double seconds = 0.0;
  std::optional<TransformRecord> transform;
};

/// Monotonic wall-clock stopwatch.
class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace latred
