#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "latred/core.hpp"
#include "latred/result.hpp"

namespace latred {

// Two heuristics that do not carry the greedy reducer's monotonicity
// guarantee. They exist to be compared against it, not to be used.

enum class AltVariant { random_combination, mgs_pivot };

struct AltConfig {
  AltVariant variant = AltVariant::random_combination;
  /// Exponent for mgs_pivot scoring.
  double p = 2.0;
  /// Number of random_combination steps.
  std::size_t iterations = 1;
  std::uint64_t seed = 0;
  bool track_transform = false;

  void validate() const;
};

enum class StepOutcome { applied, unchanged, singular };

/// Replaces column j by a_j - sum_k nint(c_k) a_k where c minimises
/// ||a_j - sum_{k != j} c_k a_k|| over the reals (normal equations on the
/// Gram submatrix without j, solved in floating point). A singular system
/// leaves the state untouched.
StepOutcome random_combination_step(LatticeState& state, std::size_t j);

/// Real-valued least-squares coefficients used by random_combination_step;
/// entry j is 0. Empty when the system is singular.
std::vector<double> combination_coefficients(const GramMatrix& gram, std::size_t j);

/// `config.iterations` steps on uniformly drawn columns. Norms may grow.
/// `iterations` in the result counts applied steps.
ReductionResult random_combination_reduce(Basis basis, const AltConfig& config);

/// Pivoted modified Gram-Schmidt: n rounds, each picking the unused column
/// whose orthogonalised form, projected with rounded coefficients off every
/// other unused column, gives the smallest sum of p-th powers of norms.
/// Column positions are preserved. `iterations` counts pivot rounds.
ReductionResult mgs_pivot_reduce(Basis basis, double p, bool track_transform = false);

ReductionResult alt_reduce(Basis basis, const AltConfig& config);

}  // namespace latred
