#include "latred/kernels.hpp"

#include <exception>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace latred::kernels {

namespace {

// Exceptions must not cross an OpenMP region boundary; the first one thrown
// by any iteration is parked here and rethrown after the join.
class FirstError {
 public:
  template <typename Body>
  void run(Body&& body) noexcept {
    try {
      body();
    } catch (...) {
      std::lock_guard lock(mutex_);
      if (!error_) error_ = std::current_exception();
    }
  }

  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mutex_;
  std::exception_ptr error_;
};

i128 dot(std::span<const i128> a, std::span<const i128> b, std::size_t j, std::size_t k) {
  try {
    i128 acc = 0;
    for (std::size_t r = 0; r < a.size(); ++r) acc = checked::add(acc, checked::mul(a[r], b[r]));
    return acc;
  } catch (const OverflowError&) {
    throw OverflowError("128-bit overflow computing Gram entry (" + std::to_string(j) + ", " +
                        std::to_string(k) + ")");
  }
}

void gram_row(const Basis& basis, GramMatrix& g, std::size_t j) {
  const auto aj = basis.column(j);
  for (std::size_t k = j; k < basis.cols(); ++k) g.set_symmetric(j, k, dot(aj, basis.column(k), j, k));
}

void subtract_column(IntMatrix& matrix, std::size_t j, std::size_t k, i128 c) {
  if (c == 0) return;
  auto dst = matrix.column(j);
  const auto src = std::as_const(matrix).column(k);
  for (std::size_t r = 0; r < dst.size(); ++r) dst[r] = checked::sub(dst[r], checked::mul(c, src[r]));
}

// Updates row j (entries l >= j) and mirrors them. Reads only row j and the
// saved pivot row, so distinct j may run concurrently.
void gram_update_row(GramMatrix& g, std::size_t j, std::span<const i128> pivot_row, i128 gkk,
                     std::span<const i128> c) {
  const std::size_t n = g.size();
  const i128 cj = c[j];
  for (std::size_t l = j; l < n; ++l) {
    const i128 cl = c[l];
    if (cj == 0 && cl == 0) continue;
    // g_jl - c_j (g_kl - c_l g_kk) - c_l g_jk
    const i128 t = checked::sub(pivot_row[l], checked::mul(cl, gkk));
    i128 v = checked::sub(g(j, l), checked::mul(cj, t));
    v = checked::sub(v, checked::mul(cl, pivot_row[j]));
    g.set_symmetric(j, l, v);
  }
}

}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

GramMatrix gram_serial(const Basis& basis) {
  GramMatrix g(basis.cols());
  for (std::size_t j = 0; j < basis.cols(); ++j) gram_row(basis, g, j);
  return g;
}

GramMatrix gram_parallel(const Basis& basis) {
  const auto n = static_cast<std::ptrdiff_t>(basis.cols());
  GramMatrix g(basis.cols());
  FirstError errors;
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    errors.run([&] { gram_row(basis, g, static_cast<std::size_t>(j)); });
  }
  errors.rethrow();
  return g;
}

i128 pivot_coefficient(const GramMatrix& gram, std::size_t j, std::size_t k) {
  const i128 gkk = gram(k, k);
  if (j == k || gkk == 0) return 0;
  return nint_ratio(gram(j, k), gkk);
}

Score score_pivot(const GramMatrix& gram, std::size_t k, double p, ScoreMode mode) {
  ScoreAccumulator acc(p, mode);
  for (std::size_t j = 0; j < gram.size(); ++j) {
    acc.add(projected_norm_sq(gram, j, k, pivot_coefficient(gram, j, k)));
  }
  return acc.finish();
}

void score_all_serial(const GramMatrix& gram, double p, ScoreMode mode, std::span<Score> out) {
  for (std::size_t k = 0; k < gram.size(); ++k) out[k] = score_pivot(gram, k, p, mode);
}

void score_all_parallel(const GramMatrix& gram, double p, ScoreMode mode, std::span<Score> out) {
  const auto n = static_cast<std::ptrdiff_t>(gram.size());
  FirstError errors;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    errors.run([&] { out[k] = score_pivot(gram, static_cast<std::size_t>(k), p, mode); });
  }
  errors.rethrow();
}

void subtract_pivot_serial(IntMatrix& matrix, std::size_t k, std::span<const i128> coeffs) {
  for (std::size_t j = 0; j < matrix.cols(); ++j) {
    if (j != k) subtract_column(matrix, j, k, coeffs[j]);
  }
}

void subtract_pivot_parallel(IntMatrix& matrix, std::size_t k, std::span<const i128> coeffs) {
  const auto n = static_cast<std::ptrdiff_t>(matrix.cols());
  FirstError errors;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const auto col = static_cast<std::size_t>(j);
    if (col != k) errors.run([&] { subtract_column(matrix, col, k, coeffs[col]); });
  }
  errors.rethrow();
}

void gram_pivot_update_serial(GramMatrix& gram, std::size_t k, std::span<const i128> coeffs) {
  const std::vector<i128> pivot_row(gram.row(k).begin(), gram.row(k).end());
  const i128 gkk = pivot_row[k];
  for (std::size_t j = 0; j < gram.size(); ++j) gram_update_row(gram, j, pivot_row, gkk, coeffs);
}

void gram_pivot_update_parallel(GramMatrix& gram, std::size_t k, std::span<const i128> coeffs) {
  const std::vector<i128> pivot_row(gram.row(k).begin(), gram.row(k).end());
  const i128 gkk = pivot_row[k];
  const auto n = static_cast<std::ptrdiff_t>(gram.size());
  FirstError errors;
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    errors.run([&] { gram_update_row(gram, static_cast<std::size_t>(j), pivot_row, gkk, coeffs); });
  }
  errors.rethrow();
}

GramMatrix gram(const Basis& basis) {
  return basis.cols() >= kParallelMinColumns ? gram_parallel(basis) : gram_serial(basis);
}

void score_all(const GramMatrix& gram, double p, ScoreMode mode, std::span<Score> out) {
  if (gram.size() >= kParallelMinColumns) {
    score_all_parallel(gram, p, mode, out);
  } else {
    score_all_serial(gram, p, mode, out);
  }
}

void subtract_pivot(IntMatrix& matrix, std::size_t k, std::span<const i128> coeffs) {
  if (matrix.cols() >= kParallelMinColumns) {
    subtract_pivot_parallel(matrix, k, coeffs);
  } else {
    subtract_pivot_serial(matrix, k, coeffs);
  }
}

void gram_pivot_update(GramMatrix& gram, std::size_t k, std::span<const i128> coeffs) {
  if (gram.size() >= kParallelMinColumns) {
    gram_pivot_update_parallel(gram, k, coeffs);
  } else {
    gram_pivot_update_serial(gram, k, coeffs);
  }
}

}  // namespace latred::kernels
