#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "latred/core.hpp"

namespace latred {

/// Floating Gram-Schmidt data for the columns of a basis.
struct GSState {
  std::size_t m = 0;
  std::size_t n = 0;
  /// Orthogonalised vectors b*_k, one row of length m per column.
  std::vector<std::vector<double>> bstar;
  /// mu[k][j] for j < k; mu[k][k] = 1.
  std::vector<std::vector<double>> mu;
  /// ||b*_k||^2.
  std::vector<double> norm_sq;
};

/// A column whose orthogonal part is numerically zero.
class RankDeficientError : public std::runtime_error {
 public:
  RankDeficientError(std::size_t column, const std::string& what)
      : std::runtime_error(what), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

std::vector<double> column_as_double(const Basis& basis, std::size_t k);

/// Removes from v its components along the first `count` vectors of
/// `bstar`, one classical Gram-Schmidt pass at a time. Passes repeat until no
/// component moves by more than one ulp of its magnitude, then one extra pass
/// runs; at most `max_passes` passes in total. The projection coefficients of
/// all passes are summed into `coeffs` (length >= count). Returns the number
/// of passes run.
int project_out(std::span<double> v, const std::vector<std::vector<double>>& bstar,
                std::span<const double> norm_sq, std::size_t count, std::span<double> coeffs, int max_passes);

/// Gram-Schmidt of every column; zero or dependent columns end up with
/// norm_sq[k] == 0 (or tiny) and are left for the caller to diagnose.
GSState gram_schmidt(const Basis& basis, int max_passes);

/// Recomputes b*_k, mu[k][0..k) and norm_sq[k] from column k of the basis,
/// given valid b*_0 .. b*_{k-1}.
void recompute_gs_vector(GSState& gs, const Basis& basis, std::size_t k, int max_passes);

double dot(std::span<const double> a, std::span<const double> b);

/// Nearest integer to x, halves away from zero (the convention of
/// nint_ratio). Throws OverflowError for non-finite or huge x.
i128 nint_double(double x);

}  // namespace latred
