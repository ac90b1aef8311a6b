#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "latred/wide_int.hpp"

namespace latred {

/// Dense column-major integer matrix. Column j is contiguous so that the
/// column operations every reducer performs touch a single span.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  /// Builds from row-major nested lists, the layout of the `.mat` format.
  static IntMatrix from_rows(const std::vector<std::vector<i128>>& rows);
  static IntMatrix from_columns(const std::vector<std::vector<i128>>& columns);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  i128& operator()(std::size_t r, std::size_t c) { return data_[c * rows_ + r]; }
  i128 operator()(std::size_t r, std::size_t c) const { return data_[c * rows_ + r]; }

  std::span<i128> column(std::size_t c) { return {data_.data() + c * rows_, rows_}; }
  std::span<const i128> column(std::size_t c) const { return {data_.data() + c * rows_, rows_}; }

  void swap_columns(std::size_t a, std::size_t b);
  /// Reorders columns so that column i of the result is column perm[i] of this.
  IntMatrix permuted_columns(std::span<const std::size_t> perm) const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<i128> data_;
};

/// Checked exact product.
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

/// m x n matrix whose columns are the basis vectors. Columns may be linearly
/// dependent, and zero columns are kept.
using Basis = IntMatrix;

/// Accumulated unimodular transform U with A0 * U = current basis.
using TransformRecord = IntMatrix;

/// Symmetric matrix of pairwise inner products of basis columns. Both halves
/// are stored and kept equal.
class GramMatrix {
 public:
  GramMatrix() = default;
  explicit GramMatrix(std::size_t n) : n_(n), g_(n * n, 0) {}

  std::size_t size() const { return n_; }
  i128& operator()(std::size_t j, std::size_t k) { return g_[j * n_ + k]; }
  i128 operator()(std::size_t j, std::size_t k) const { return g_[j * n_ + k]; }
  std::span<const i128> row(std::size_t j) const { return {g_.data() + j * n_, n_}; }
  std::span<i128> row(std::size_t j) { return {g_.data() + j * n_, n_}; }

  /// Sets (j,k) and (k,j).
  void set_symmetric(std::size_t j, std::size_t k, i128 v) {
    (*this)(j, k) = v;
    (*this)(k, j) = v;
  }

  void swap_indices(std::size_t a, std::size_t b);

  friend bool operator==(const GramMatrix&, const GramMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<i128> g_;
};

/// Squared Frobenius norm and smallest nonzero squared column norm.
struct NormSummary {
  i128 frobenius_sq = 0;
  i128 min_norm_sq = 0;

  friend bool operator==(const NormSummary&, const NormSummary&) = default;
};

/// Basis, its Gram matrix, and optionally the transform from the starting
/// basis. A reduction owns one of these exclusively while it runs.
struct LatticeState {
  Basis basis;
  GramMatrix gram;
  std::optional<TransformRecord> transform;

  static LatticeState from_basis(Basis basis, bool track_transform = false);
};

/// Exact Gram matrix of the basis columns. Only j <= k is computed; the lower
/// half is mirrored. Overflow is reported with the offending pair.
GramMatrix gram_compute(const Basis& basis);

/// Nearest integer to num/den in exact integer arithmetic, halves rounded
/// away from zero. Requires den > 0.
i128 nint_ratio(i128 num, i128 den);

NormSummary norm_summary(const GramMatrix& gram);

/// column j <- column j - c * column k, mirrored into the Gram matrix through
/// the bilinear identity and into the transform if tracked.
void apply_column_op(LatticeState& state, std::size_t j, std::size_t k, i128 c);

/// Exchanges columns a and b of the basis, Gram and transform.
void swap_columns(LatticeState& state, std::size_t a, std::size_t b);

/// Exact determinant by fraction-free (Bareiss) elimination, intended for
/// n <= 16. Throws OverflowError if the determinant itself exceeds 128 bits.
i128 det_small(const IntMatrix& matrix);

/// Sign of the exact determinant: -1, 0 or +1. Never overflows.
int det_sign_small(const IntMatrix& matrix);

/// True when |det| == 1. Requires a square matrix with n <= 16.
bool is_unimodular(const TransformRecord& transform);

/// Checks A0 * U == current basis.
bool transform_consistent(const Basis& initial, const LatticeState& state);

}  // namespace latred
