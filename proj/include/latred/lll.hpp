#pragma once

#include <cstddef>

#include "latred/core.hpp"
#include "latred/gram_schmidt.hpp"
#include "latred/result.hpp"

namespace latred {

/// LLL settings.
struct LLLConfig {
  /// Lovasz parameter, 1/4 < delta <= 1.
  double delta = 1.0 - 1e-15;
  /// Upper bound on Gram-Schmidt passes per vector (>= 2).
  int reorth_cap = 4;
  bool track_transform = false;

  void validate() const;
};

/// Columns whose orthogonal part falls below this fraction of their own
/// squared norm are treated as dependent.
inline constexpr double kRankFloor = 1e-30;

/// Re-orthogonalised Gram-Schmidt of every column.
GSState orthogonalize(const Basis& basis, const LLLConfig& config);

/// Size-reduces column k against columns k-1 .. 0 with integer column
/// operations (rounding halves away from zero) and updates mu row k.
/// Returns the largest |coefficient| applied.
double size_reduce(GSState& gs, LatticeState& state, std::size_t k);

/// delta * B_{k-1} <= B_k + mu_{k,k-1}^2 * B_{k-1}. Requires k >= 1.
bool lovasz_ok(const GSState& gs, std::size_t k, double delta);

/// Runs LLL on the state in place and returns the number of swaps. Throws
/// RankDeficientError naming the first dependent column.
std::size_t lll_reduce_in_place(LatticeState& state, const LLLConfig& config);

ReductionResult lll_reduce(Basis basis, const LLLConfig& config);

/// Largest |mu| over j < k and smallest Lovasz slack
/// B_k + mu^2 B_{k-1} - delta B_{k-1}, from a fresh orthogonalisation.
struct LLLCheck {
  double max_abs_mu = 0.0;
  double min_lovasz_slack = 0.0;
};
LLLCheck check_lll(const Basis& basis, double delta, int reorth_cap = 4);

}  // namespace latred
