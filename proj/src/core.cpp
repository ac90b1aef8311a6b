#include "latred/core.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "latred/kernels.hpp"

namespace latred {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("matrix dimensions must be positive");
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<i128>>& rows) {
  if (rows.empty() || rows.front().empty()) throw std::invalid_argument("matrix dimensions must be positive");
  IntMatrix out(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != out.cols()) throw std::invalid_argument("ragged row " + std::to_string(r));
    for (std::size_t c = 0; c < out.cols(); ++c) out(r, c) = rows[r][c];
  }
  return out;
}

IntMatrix IntMatrix::from_columns(const std::vector<std::vector<i128>>& columns) {
  if (columns.empty() || columns.front().empty()) throw std::invalid_argument("matrix dimensions must be positive");
  IntMatrix out(columns.front().size(), columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != out.rows()) throw std::invalid_argument("ragged column " + std::to_string(c));
    std::copy(columns[c].begin(), columns[c].end(), out.column(c).begin());
  }
  return out;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1;
  return out;
}

void IntMatrix::swap_columns(std::size_t a, std::size_t b) {
  if (a == b) return;
  std::swap_ranges(column(a).begin(), column(a).end(), column(b).begin());
}

IntMatrix IntMatrix::permuted_columns(std::span<const std::size_t> perm) const {
  if (perm.size() != cols_) throw std::invalid_argument("permutation length mismatch");
  IntMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < cols_; ++i) {
    const auto src = column(perm[i]);
    std::copy(src.begin(), src.end(), out.column(i).begin());
  }
  return out;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: inner dimensions differ");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const i128 factor = b(k, c);
      if (factor == 0) continue;
      for (std::size_t r = 0; r < a.rows(); ++r) {
        out(r, c) = checked::add(out(r, c), checked::mul(a(r, k), factor));
      }
    }
  }
  return out;
}

void GramMatrix::swap_indices(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t l = 0; l < n_; ++l) std::swap((*this)(a, l), (*this)(b, l));
  for (std::size_t l = 0; l < n_; ++l) std::swap((*this)(l, a), (*this)(l, b));
}

LatticeState LatticeState::from_basis(Basis basis, bool track_transform) {
  LatticeState state;
  state.gram = gram_compute(basis);
  if (track_transform) state.transform = TransformRecord::identity(basis.cols());
  state.basis = std::move(basis);
  return state;
}

GramMatrix gram_compute(const Basis& basis) { return kernels::gram(basis); }

i128 nint_ratio(i128 num, i128 den) {
  if (den <= 0) throw std::invalid_argument("nint_ratio: denominator must be positive");
  if (num == 0) return 0;
  const i128 q = num / den;  // truncates toward zero
  const i128 r = num % den;  // same sign as num
  const i128 abs_r = r < 0 ? -r : r;
  // |r| / den >= 1/2  <=>  |r| >= den - |r|, with no doubling to overflow.
  if (abs_r >= den - abs_r) return num < 0 ? q - 1 : q + 1;
  return q;
}

NormSummary norm_summary(const GramMatrix& gram) {
  NormSummary s;
  for (std::size_t k = 0; k < gram.size(); ++k) {
    const i128 d = gram(k, k);
    s.frobenius_sq = checked::add(s.frobenius_sq, d);
    if (d > 0 && (s.min_norm_sq == 0 || d < s.min_norm_sq)) s.min_norm_sq = d;
  }
  return s;
}

void apply_column_op(LatticeState& state, std::size_t j, std::size_t k, i128 c) {
  if (j == k) throw std::invalid_argument("apply_column_op: j and k must differ");
  if (c == 0) return;
  auto& g = state.gram;
  const std::size_t n = g.size();
  // Compute every new entry before writing so a thrown overflow leaves the
  // state untouched.
  std::vector<i128> new_row(n);
  for (std::size_t l = 0; l < n; ++l) {
    if (l == j) {
      new_row[l] = checked::add(g(j, j), checked::mul(c, checked::sub(checked::mul(c, g(k, k)),
                                                                      checked::mul(2, g(j, k)))));
    } else {
      new_row[l] = checked::sub(g(j, l), checked::mul(c, g(k, l)));
    }
  }
  std::vector<i128> new_col(state.basis.rows());
  const auto aj = state.basis.column(j);
  const auto ak = std::as_const(state.basis).column(k);
  for (std::size_t r = 0; r < aj.size(); ++r) new_col[r] = checked::sub(aj[r], checked::mul(c, ak[r]));
  if (state.transform) {
    auto& u = *state.transform;
    std::vector<i128> new_u(u.rows());
    const auto uj = u.column(j);
    const auto uk = std::as_const(u).column(k);
    for (std::size_t r = 0; r < uj.size(); ++r) new_u[r] = checked::sub(uj[r], checked::mul(c, uk[r]));
    std::copy(new_u.begin(), new_u.end(), uj.begin());
  }
  std::copy(new_col.begin(), new_col.end(), aj.begin());
  for (std::size_t l = 0; l < n; ++l) g.set_symmetric(j, l, new_row[l]);
}

void swap_columns(LatticeState& state, std::size_t a, std::size_t b) {
  state.basis.swap_columns(a, b);
  state.gram.swap_indices(a, b);
  if (state.transform) state.transform->swap_columns(a, b);
}

namespace {

using BigInt = boost::multiprecision::cpp_int;

BigInt to_big(i128 v) {
  const bool negative = v < 0;
  const auto mag = negative ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  BigInt out = static_cast<std::uint64_t>(mag >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(mag);
  return negative ? BigInt(-out) : out;
}

// Fraction-free (Bareiss) elimination. Intermediates are minors of the input,
// which can outgrow 128 bits even when the determinant is 1.
BigInt bareiss_det(const IntMatrix& matrix) {
  const std::size_t n = matrix.rows();
  if (matrix.cols() != n) throw std::invalid_argument("determinant of a non-square matrix");
  std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a[r][c] = to_big(matrix(r, c));
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

}  // namespace

i128 det_small(const IntMatrix& matrix) {
  const BigInt d = bareiss_det(matrix);
  if (d > to_big(kI128Max) || d < to_big(kI128Min)) throw OverflowError("determinant exceeds 128 bits");
  const bool negative = d < 0;
  const BigInt mag = negative ? BigInt(-d) : d;
  const auto hi = static_cast<std::uint64_t>(mag >> 64);
  const auto lo = static_cast<std::uint64_t>(mag & std::numeric_limits<std::uint64_t>::max());
  const auto value = static_cast<i128>((static_cast<unsigned __int128>(hi) << 64) | lo);
  return negative ? -value : value;
}

int det_sign_small(const IntMatrix& matrix) { return bareiss_det(matrix).sign(); }

bool is_unimodular(const TransformRecord& transform) {
  if (transform.rows() != transform.cols()) return false;
  const BigInt d = bareiss_det(transform);
  return d == 1 || d == -1;
}

bool transform_consistent(const Basis& initial, const LatticeState& state) {
  if (!state.transform) return false;
  return multiply(initial, *state.transform) == state.basis;
}

}  // namespace latred
