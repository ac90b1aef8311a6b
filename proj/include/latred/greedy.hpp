#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "latred/core.hpp"
#include "latred/result.hpp"
#include "latred/score.hpp"

namespace latred {

/// Settings for the greedy pivot reducer.
struct ReduceConfig {
  /// Exponents run to convergence in order, e.g. {2, 1}.
  std::vector<double> p_schedule{2.0};
  ScoreMode score_mode = ScoreMode::sum;
  /// Cap on productive iterations across the whole schedule.
  std::optional<std::size_t> max_iterations;
  bool track_transform = false;

  /// Throws std::invalid_argument on an empty schedule or a p <= 0.
  void validate() const;
};

/// Rounded projection coefficients of every column onto pivot k.
/// c[k] == 0, and c is all zero when column k is zero.
struct PivotCoefficients {
  std::size_t k = 0;
  std::vector<i128> c;
};

struct PivotChoice {
  std::size_t k = 0;
  PivotCoefficients coeffs;
  Score score;
};

PivotCoefficients coefficients_for_pivot(const GramMatrix& gram, std::size_t k);

/// Score obtained by projecting every column off pivot coeffs.k.
Score pivot_score(const GramMatrix& gram, const PivotCoefficients& coeffs, double p, ScoreMode mode);

/// Pivot with the smallest score, lowest index on ties.
PivotChoice select_pivot(const GramMatrix& gram, double p, ScoreMode mode);

/// a_j <- a_j - c_j a_k for every column, with the Gram matrix updated in
/// O(n^2) rather than recomputed.
void apply_pivot(LatticeState& state, const PivotCoefficients& coeffs);

/// Runs each p of the schedule until no pivot strictly lowers the score.
/// Returns the number of productive iterations.
std::size_t reduce_in_place(LatticeState& state, const ReduceConfig& config);

ReductionResult reduce(Basis basis, const ReduceConfig& config);

}  // namespace latred
