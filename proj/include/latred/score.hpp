#pragma once

#include <cstddef>
#include <optional>

#include "latred/core.hpp"

namespace latred {

/// How the squared norms after a candidate projection are combined.
enum class ScoreMode {
  sum,  ///< sum of p-th powers of the norms
  max,  ///< largest squared norm (p is ignored)
};

/// Score of a candidate pivot. `exact` is populated when the score is an
/// integer (sum with p = 2, or max), and then decides comparisons.
struct Score {
  double value = 0.0;
  std::optional<i128> exact;
};

/// Strict "a improves on b". Exact when both carry exact values; otherwise a
/// zero-tolerance floating comparison.
inline bool score_less(const Score& a, const Score& b) {
  if (a.exact && b.exact) return *a.exact < *b.exact;
  return a.value < b.value;
}

/// Squared norm of a_j - c * a_k from Gram entries alone:
/// g_jj + c * (c * g_kk - 2 * g_jk). Negative results mean the Gram matrix
/// no longer describes real vectors and raise std::logic_error.
i128 projected_norm_sq(const GramMatrix& gram, std::size_t j, std::size_t k, i128 c);

/// Folds squared norms into a score in a fixed order.
class ScoreAccumulator {
 public:
  ScoreAccumulator(double p, ScoreMode mode);

  void add(i128 norm_sq);
  Score finish() const;

 private:
  double half_p_;
  ScoreMode mode_;
  bool exact_sum_;
  i128 exact_ = 0;
  double value_ = 0.0;
};

/// Score of the basis as it stands (every coefficient zero).
Score current_score(const GramMatrix& gram, double p, ScoreMode mode);

}  // namespace latred
