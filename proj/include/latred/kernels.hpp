#pragma once

// Hot loops of the greedy reducer. Each kernel has a `_serial` reference and
// an OpenMP version with identical results; the reference is kept for tests
// and for the benchmark comparison. The unsuffixed entry points pick the
// parallel path when the problem is large enough to amortise a team.

#include <cstddef>
#include <span>

#include "latred/core.hpp"
#include "latred/score.hpp"

namespace latred::kernels {

/// Below this many columns the unsuffixed entry points stay serial.
inline constexpr std::size_t kParallelMinColumns = 32;

/// Number of OpenMP threads available (1 without OpenMP).
int max_threads();

GramMatrix gram_serial(const Basis& basis);
GramMatrix gram_parallel(const Basis& basis);

/// Rounded projection coefficient of column j onto pivot k; zero for j == k
/// or a zero pivot.
i128 pivot_coefficient(const GramMatrix& gram, std::size_t j, std::size_t k);

/// Score of pivot k in O(n).
Score score_pivot(const GramMatrix& gram, std::size_t k, double p, ScoreMode mode);

/// out[k] = score_pivot(gram, k, ...) for every k; O(n^2) total.
void score_all_serial(const GramMatrix& gram, double p, ScoreMode mode, std::span<Score> out);
void score_all_parallel(const GramMatrix& gram, double p, ScoreMode mode, std::span<Score> out);

/// column j -= coeffs[j] * column k for every j (coeffs[k] must be 0).
void subtract_pivot_serial(IntMatrix& matrix, std::size_t k, std::span<const i128> coeffs);
void subtract_pivot_parallel(IntMatrix& matrix, std::size_t k, std::span<const i128> coeffs);

/// Gram matrix after subtract_pivot with the same coefficients, in O(n^2)
/// from the old entries:
///   g'_jl = g_jl + c_j c_l g_kk - c_j g_kl - c_l g_jk.
void gram_pivot_update_serial(GramMatrix& gram, std::size_t k, std::span<const i128> coeffs);
void gram_pivot_update_parallel(GramMatrix& gram, std::size_t k, std::span<const i128> coeffs);

GramMatrix gram(const Basis& basis);
void score_all(const GramMatrix& gram, double p, ScoreMode mode, std::span<Score> out);
void subtract_pivot(IntMatrix& matrix, std::size_t k, std::span<const i128> coeffs);
void gram_pivot_update(GramMatrix& gram, std::size_t k, std::span<const i128> coeffs);

}  // namespace latred::kernels
