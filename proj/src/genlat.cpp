#include "latred/genlat.hpp"

#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "latred/rng.hpp"

namespace latred {

void ExampleSpec::validate() const {
  if (q < 3 || q % 2 == 0) throw std::invalid_argument("q must be odd and at least 3, got " + std::to_string(q));
  if (ell < 1) throw std::invalid_argument("ell must be positive");
}

Basis gen_example(const ExampleSpec& spec) {
  spec.validate();
  const std::size_t ell = spec.ell;
  const std::size_t n = spec.n();
  const std::int64_t half = (spec.q - 1) / 2;
  Basis a(n, n);
  SplitMix64 rng(spec.seed);
  for (std::size_t c = 0; c < ell; ++c) {
    for (std::size_t r = 0; r < 2 * ell; ++r) a(r, c) = rng.between(-half, half);
    a(2 * ell + c, c) = 1;
  }
  for (std::size_t i = 0; i < 2 * ell; ++i) a(i, ell + i) = spec.q;
  return a;
}

std::vector<std::size_t> random_permutation_indices(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  SplitMix64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

Basis random_permutation(const Basis& basis, std::uint64_t seed) {
  const auto perm = random_permutation_indices(basis.cols(), seed);
  return basis.permuted_columns(perm);
}

}  // namespace latred
