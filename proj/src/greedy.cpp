#include "latred/greedy.hpp"

#include <stdexcept>
#include <string>
#include <utility>

#include "latred/kernels.hpp"

namespace latred {

void ReduceConfig::validate() const {
  if (p_schedule.empty()) throw std::invalid_argument("p schedule must not be empty");
  for (const double p : p_schedule) {
    if (!(p > 0.0)) throw std::invalid_argument("every p must be positive, got " + std::to_string(p));
  }
}

PivotCoefficients coefficients_for_pivot(const GramMatrix& gram, std::size_t k) {
  PivotCoefficients out{k, std::vector<i128>(gram.size(), 0)};
  for (std::size_t j = 0; j < gram.size(); ++j) out.c[j] = kernels::pivot_coefficient(gram, j, k);
  return out;
}

Score pivot_score(const GramMatrix& gram, const PivotCoefficients& coeffs, double p, ScoreMode mode) {
  ScoreAccumulator acc(p, mode);
  for (std::size_t j = 0; j < gram.size(); ++j) acc.add(projected_norm_sq(gram, j, coeffs.k, coeffs.c[j]));
  return acc.finish();
}

PivotChoice select_pivot(const GramMatrix& gram, double p, ScoreMode mode) {
  const std::size_t n = gram.size();
  if (n == 0) throw std::invalid_argument("select_pivot: empty Gram matrix");
  std::vector<Score> scores(n);
  kernels::score_all(gram, p, mode, scores);
  std::size_t best = 0;
  for (std::size_t k = 1; k < n; ++k) {
    if (score_less(scores[k], scores[best])) best = k;
  }
  return PivotChoice{best, coefficients_for_pivot(gram, best), scores[best]};
}

void apply_pivot(LatticeState& state, const PivotCoefficients& coeffs) {
  if (coeffs.c.size() != state.gram.size() || coeffs.c[coeffs.k] != 0) {
    throw std::invalid_argument("apply_pivot: coefficients do not match the state");
  }
  kernels::subtract_pivot(state.basis, coeffs.k, coeffs.c);
  if (state.transform) kernels::subtract_pivot(*state.transform, coeffs.k, coeffs.c);
  kernels::gram_pivot_update(state.gram, coeffs.k, coeffs.c);
}

std::size_t reduce_in_place(LatticeState& state, const ReduceConfig& config) {
  config.validate();
  std::size_t iterations = 0;
  for (const double p : config.p_schedule) {
    while (!config.max_iterations || iterations < *config.max_iterations) {
      const Score current = current_score(state.gram, p, config.score_mode);
      PivotChoice choice = select_pivot(state.gram, p, config.score_mode);
      if (!score_less(choice.score, current)) break;
      apply_pivot(state, choice.coeffs);
      ++iterations;
    }
  }
  return iterations;
}

ReductionResult reduce(Basis basis, const ReduceConfig& config) {
  config.validate();
  Stopwatch clock;
  LatticeState state = LatticeState::from_basis(std::move(basis), config.track_transform);
  ReductionResult result;
  result.before = norm_summary(state.gram);
  result.iterations = reduce_in_place(state, config);
  result.after = norm_summary(state.gram);
  result.seconds = clock.seconds();
  result.basis = std::move(state.basis);
  result.transform = std::move(state.transform);
  return result;
}

}  // namespace latred
