#include "latred/lll.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace latred {

namespace {

// Coefficients above this lose enough bits in the floating mu update that
// the row is recomputed from the exact basis before trusting it again.
constexpr double kRefreshThreshold = 67108864.0;  // 2^26

constexpr std::size_t kMaxSwaps = 100'000'000;

void require_independent(const GSState& gs, const LatticeState& state, std::size_t k) {
  const double col_norm = to_double(state.gram(k, k));
  if (!(gs.norm_sq[k] >= kRankFloor * col_norm) || col_norm == 0.0) {
    throw RankDeficientError(k, "column " + std::to_string(k) +
                                    " is (numerically) linearly dependent on the columns before it");
  }
}

}  // namespace

void LLLConfig::validate() const {
  if (!(delta > 0.25 && delta <= 1.0)) throw std::invalid_argument("delta must lie in (1/4, 1]");
  if (reorth_cap < 2) throw std::invalid_argument("reorth_cap must be at least 2");
}

GSState orthogonalize(const Basis& basis, const LLLConfig& config) {
  return gram_schmidt(basis, config.reorth_cap);
}

double size_reduce(GSState& gs, LatticeState& state, std::size_t k) {
  double largest = 0.0;
  auto& row = gs.mu[k];
  for (std::size_t j = k; j-- > 0;) {
    const i128 r = nint_double(row[j]);
    if (r == 0) continue;
    apply_column_op(state, k, j, r);
    const double rd = to_double(r);
    const auto& rowj = gs.mu[j];
    for (std::size_t i = 0; i < j; ++i) row[i] -= rd * rowj[i];
    row[j] -= rd;
    largest = std::max(largest, std::fabs(rd));
  }
  return largest;
}

bool lovasz_ok(const GSState& gs, std::size_t k, double delta) {
  const double mu = gs.mu[k][k - 1];
  const double prev = gs.norm_sq[k - 1];
  return delta * prev <= gs.norm_sq[k] + mu * mu * prev;
}

std::size_t lll_reduce_in_place(LatticeState& state, const LLLConfig& config) {
  config.validate();
  const std::size_t n = state.basis.cols();
  GSState gs = orthogonalize(state.basis, config);
  for (std::size_t k = 0; k < n; ++k) require_independent(gs, state, k);

  std::size_t swaps = 0;
  std::size_t k = 1;
  while (k < n) {
    while (size_reduce(gs, state, k) > kRefreshThreshold) {
      recompute_gs_vector(gs, state.basis, k, config.reorth_cap);
    }
    if (lovasz_ok(gs, k, config.delta)) {
      ++k;
      continue;
    }
    swap_columns(state, k - 1, k);
    if (++swaps > kMaxSwaps) throw std::runtime_error("LLL exceeded the swap limit without converging");
    // The swapped pair is rebuilt from the exact columns, not updated.
    recompute_gs_vector(gs, state.basis, k - 1, config.reorth_cap);
    recompute_gs_vector(gs, state.basis, k, config.reorth_cap);
    require_independent(gs, state, k - 1);
    require_independent(gs, state, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const auto a = column_as_double(state.basis, i);
      gs.mu[i][k - 1] = dot(a, gs.bstar[k - 1]) / gs.norm_sq[k - 1];
      gs.mu[i][k] = dot(a, gs.bstar[k]) / gs.norm_sq[k];
    }
    k = std::max<std::size_t>(k - 1, 1);
  }
  return swaps;
}

ReductionResult lll_reduce(Basis basis, const LLLConfig& config) {
  config.validate();
  Stopwatch clock;
  LatticeState state = LatticeState::from_basis(std::move(basis), config.track_transform);
  ReductionResult result;
  result.before = norm_summary(state.gram);
  result.iterations = lll_reduce_in_place(state, config);
  result.after = norm_summary(state.gram);
  result.seconds = clock.seconds();
  result.basis = std::move(state.basis);
  result.transform = std::move(state.transform);
  return result;
}

LLLCheck check_lll(const Basis& basis, double delta, int reorth_cap) {
  const GSState gs = gram_schmidt(basis, reorth_cap);
  LLLCheck out;
  out.min_lovasz_slack = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < gs.n; ++k) {
    for (std::size_t j = 0; j < k; ++j) out.max_abs_mu = std::max(out.max_abs_mu, std::fabs(gs.mu[k][j]));
    const double mu = gs.mu[k][k - 1];
    const double prev = gs.norm_sq[k - 1];
    out.min_lovasz_slack = std::min(out.min_lovasz_slack, gs.norm_sq[k] + mu * mu * prev - delta * prev);
  }
  return out;
}

}  // namespace latred
