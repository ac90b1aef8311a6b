#include "latred/gram_schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace latred {

namespace {

double ulp(double x) {
  x = std::fabs(x);
  return std::nextafter(x, std::numeric_limits<double>::infinity()) - x;
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

i128 nint_double(double x) {
  const double r = std::round(x);
  if (!(std::fabs(r) < 0x1p120)) throw OverflowError("rounded coefficient is not finite or exceeds 2^120");
  return static_cast<i128>(r);
}

std::vector<double> column_as_double(const Basis& basis, std::size_t k) {
  const auto col = basis.column(k);
  std::vector<double> out(col.size());
  std::transform(col.begin(), col.end(), out.begin(), to_double);
  return out;
}

int project_out(std::span<double> v, const std::vector<std::vector<double>>& bstar,
                std::span<const double> norm_sq, std::size_t count, std::span<double> coeffs, int max_passes) {
  std::fill_n(coeffs.begin(), count, 0.0);
  if (count == 0) return 0;
  std::vector<double> pass_coeffs(count);
  std::vector<double> next(v.size());
  bool converged = false;
  int passes = 0;
  while (passes < max_passes) {
    // Classical pass: every coefficient is taken against the same v.
    for (std::size_t j = 0; j < count; ++j) {
      pass_coeffs[j] = norm_sq[j] > 0.0 ? dot(v, bstar[j]) / norm_sq[j] : 0.0;
    }
    std::copy(v.begin(), v.end(), next.begin());
    for (std::size_t j = 0; j < count; ++j) {
      const double c = pass_coeffs[j];
      if (c == 0.0) continue;
      coeffs[j] += c;
      const auto& b = bstar[j];
      for (std::size_t i = 0; i < next.size(); ++i) next[i] -= c * b[i];
    }
    ++passes;
    bool settled = true;
    for (std::size_t i = 0; i < v.size() && settled; ++i) {
      settled = std::fabs(next[i] - v[i]) <= ulp(std::max(std::fabs(v[i]), std::fabs(next[i])));
    }
    std::copy(next.begin(), next.end(), v.begin());
    if (converged) break;  // the extra confirming pass has run
    converged = settled;
  }
  return passes;
}

void recompute_gs_vector(GSState& gs, const Basis& basis, std::size_t k, int max_passes) {
  auto& v = gs.bstar[k];
  v = column_as_double(basis, k);
  auto& row = gs.mu[k];
  project_out(v, gs.bstar, gs.norm_sq, k, row, max_passes);
  std::fill(row.begin() + static_cast<std::ptrdiff_t>(k), row.end(), 0.0);
  row[k] = 1.0;
  gs.norm_sq[k] = dot(v, v);
}

GSState gram_schmidt(const Basis& basis, int max_passes) {
  GSState gs;
  gs.m = basis.rows();
  gs.n = basis.cols();
  gs.bstar.assign(gs.n, std::vector<double>(gs.m, 0.0));
  gs.mu.assign(gs.n, std::vector<double>(gs.n, 0.0));
  gs.norm_sq.assign(gs.n, 0.0);
  for (std::size_t k = 0; k < gs.n; ++k) recompute_gs_vector(gs, basis, k, max_passes);
  return gs;
}

}  // namespace latred
