#pragma once

#include <cstdint>
#include <vector>

#include "latred/core.hpp"

namespace latred {

/// Parameters of the q-ary example family.
struct ExampleSpec {
  /// Odd modulus >= 3 (the experiments use the Mersenne primes 2^13-1 and 2^31-1).
  std::int64_t q = 8191;
  /// R is (2 ell) x ell; the basis is n x n with n = 3 ell.
  std::size_t ell = 1;
  std::uint64_t seed = 0;

  std::size_t n() const { return 3 * ell; }
  void validate() const;
};

/// The n x n basis
///
///     [ R   q*I ]
///     [ I    0  ]
///
/// with R of size (2 ell) x ell drawn uniformly from [-(q-1)/2, (q-1)/2]
/// (column by column), q*I of size 2 ell, and I of size ell.
Basis gen_example(const ExampleSpec& spec);

/// Uniform random permutation of 0..n-1 (Fisher-Yates on SplitMix64).
std::vector<std::size_t> random_permutation_indices(std::size_t n, std::uint64_t seed);

/// Basis with its columns permuted by random_permutation_indices.
Basis random_permutation(const Basis& basis, std::uint64_t seed);

}  // namespace latred
