#include "latred/altreduce.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "latred/gram_schmidt.hpp"
#include "latred/rng.hpp"
#include "latred/score.hpp"

namespace latred {

void AltConfig::validate() const {
  if (!(p > 0.0)) throw std::invalid_argument("p must be positive");
  if (variant == AltVariant::random_combination && iterations < 1) {
    throw std::invalid_argument("iterations must be at least 1");
  }
}

std::vector<double> combination_coefficients(const GramMatrix& gram, std::size_t j) {
  const std::size_t n = gram.size();
  std::vector<double> out(n, 0.0);
  if (n == 1) return out;
  const auto size = static_cast<Eigen::Index>(n - 1);
  Eigen::MatrixXd system(size, size);
  Eigen::VectorXd rhs(size);
  auto reduced = [j](std::size_t i) { return static_cast<Eigen::Index>(i < j ? i : i - 1); };
  for (std::size_t r = 0; r < n; ++r) {
    if (r == j) continue;
    rhs(reduced(r)) = to_double(gram(r, j));
    for (std::size_t c = 0; c < n; ++c) {
      if (c != j) system(reduced(r), reduced(c)) = to_double(gram(r, c));
    }
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(system);
  if (qr.rank() < size) return {};
  const Eigen::VectorXd solution = qr.solve(rhs);
  for (std::size_t r = 0; r < n; ++r) {
    if (r != j) out[r] = solution(reduced(r));
  }
  return out;
}

StepOutcome random_combination_step(LatticeState& state, std::size_t j) {
  const auto coeffs = combination_coefficients(state.gram, j);
  if (coeffs.empty()) return StepOutcome::singular;
  std::vector<i128> rounded(coeffs.size());
  bool any = false;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    rounded[k] = nint_double(coeffs[k]);
    any = any || rounded[k] != 0;
  }
  if (!any) return StepOutcome::unchanged;
  for (std::size_t k = 0; k < rounded.size(); ++k) {
    if (k != j) apply_column_op(state, j, k, rounded[k]);
  }
  return StepOutcome::applied;
}

ReductionResult random_combination_reduce(Basis basis, const AltConfig& config) {
  Stopwatch clock;
  LatticeState state = LatticeState::from_basis(std::move(basis), config.track_transform);
  ReductionResult result;
  result.before = norm_summary(state.gram);
  SplitMix64 rng(config.seed);
  const std::size_t n = state.basis.cols();
  for (std::size_t step = 0; step < config.iterations; ++step) {
    const auto j = static_cast<std::size_t>(rng.below(n));
    if (random_combination_step(state, j) == StepOutcome::applied) ++result.iterations;
  }
  result.after = norm_summary(state.gram);
  result.seconds = clock.seconds();
  result.basis = std::move(state.basis);
  result.transform = std::move(state.transform);
  return result;
}

namespace {

struct MgsCandidate {
  std::vector<double> bstar;
  double bstar_norm_sq = 0.0;
  std::vector<i128> coeffs;
  Score score;
};

MgsCandidate evaluate_candidate(const LatticeState& state, const std::vector<std::vector<double>>& pivots,
                                const std::vector<double>& pivot_norms, const std::vector<bool>& used,
                                std::size_t t, double p) {
  const std::size_t n = state.basis.cols();
  MgsCandidate cand;
  cand.bstar = column_as_double(state.basis, t);
  std::vector<double> mu(pivots.size());
  project_out(cand.bstar, pivots, pivot_norms, pivots.size(), mu, 4);
  cand.bstar_norm_sq = dot(cand.bstar, cand.bstar);
  cand.coeffs.assign(n, 0);
  ScoreAccumulator acc(p, ScoreMode::sum);
  for (std::size_t j = 0; j < n; ++j) {
    if (!used[j] && j != t) {
      const auto aj = column_as_double(state.basis, j);
      cand.coeffs[j] = nint_double(dot(aj, cand.bstar) / cand.bstar_norm_sq);
    }
    acc.add(projected_norm_sq(state.gram, j, t, cand.coeffs[j]));
  }
  cand.score = acc.finish();
  return cand;
}

}  // namespace

ReductionResult mgs_pivot_reduce(Basis basis, double p, bool track_transform) {
  if (!(p > 0.0)) throw std::invalid_argument("p must be positive");
  Stopwatch clock;
  LatticeState state = LatticeState::from_basis(std::move(basis), track_transform);
  ReductionResult result;
  result.before = norm_summary(state.gram);

  const std::size_t n = state.basis.cols();
  std::vector<bool> used(n, false);
  std::vector<std::vector<double>> pivots;
  std::vector<double> pivot_norms;
  for (std::size_t round = 0; round < n; ++round) {
    std::optional<std::size_t> best;
    MgsCandidate best_cand;
    for (std::size_t t = 0; t < n; ++t) {
      if (used[t]) continue;
      const double col_norm = to_double(state.gram(t, t));
      if (col_norm == 0.0) continue;
      MgsCandidate cand = evaluate_candidate(state, pivots, pivot_norms, used, t, p);
      if (!(cand.bstar_norm_sq >= 1e-30 * col_norm)) continue;  // dependent on earlier pivots
      if (!best || score_less(cand.score, best_cand.score)) {
        best = t;
        best_cand = std::move(cand);
      }
    }
    if (!best) break;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != *best) apply_column_op(state, j, *best, best_cand.coeffs[j]);
    }
    used[*best] = true;
    pivots.push_back(std::move(best_cand.bstar));
    pivot_norms.push_back(best_cand.bstar_norm_sq);
    ++result.iterations;
  }

  result.after = norm_summary(state.gram);
  result.seconds = clock.seconds();
  result.basis = std::move(state.basis);
  result.transform = std::move(state.transform);
  return result;
}

ReductionResult alt_reduce(Basis basis, const AltConfig& config) {
  config.validate();
  if (config.variant == AltVariant::mgs_pivot) return mgs_pivot_reduce(std::move(basis), config.p, config.track_transform);
  return random_combination_reduce(std::move(basis), config);
}

}  // namespace latred
