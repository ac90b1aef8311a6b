#include "latred/score.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace latred {

i128 projected_norm_sq(const GramMatrix& gram, std::size_t j, std::size_t k, i128 c) {
  const i128 gjj = gram(j, j);
  if (c == 0) return gjj;
  // c * g_kk stays near g_jk, so this ordering keeps intermediates small.
  const i128 inner = checked::sub(checked::mul(c, gram(k, k)), checked::mul(2, gram(j, k)));
  const i128 result = checked::add(gjj, checked::mul(c, inner));
  if (result < 0) {
    throw std::logic_error("negative projected squared norm for column " + std::to_string(j) +
                           " against pivot " + std::to_string(k) + ": Gram matrix is corrupt");
  }
  return result;
}

ScoreAccumulator::ScoreAccumulator(double p, ScoreMode mode)
    : half_p_(p / 2.0), mode_(mode), exact_sum_(mode == ScoreMode::sum && p == 2.0) {}

void ScoreAccumulator::add(i128 norm_sq) {
  if (mode_ == ScoreMode::max) {
    exact_ = std::max(exact_, norm_sq);
  } else if (exact_sum_) {
    exact_ = checked::add(exact_, norm_sq);
  } else {
    value_ += std::pow(to_double(norm_sq), half_p_);
  }
}

Score ScoreAccumulator::finish() const {
  if (mode_ == ScoreMode::max || exact_sum_) return Score{to_double(exact_), exact_};
  return Score{value_, std::nullopt};
}

Score current_score(const GramMatrix& gram, double p, ScoreMode mode) {
  ScoreAccumulator acc(p, mode);
  for (std::size_t j = 0; j < gram.size(); ++j) acc.add(gram(j, j));
  return acc.finish();
}

}  // namespace latred
