#include <doctest.h>

#include <cmath>

#include "latred/genlat.hpp"
#include "latred/greedy.hpp"
#include "latred/lll.hpp"
#include "oracles.hpp"

using namespace latred;

namespace {

double orthogonality_residual(const GSState& gs) {
  double worst = 0.0;
  for (std::size_t k = 0; k < gs.n; ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      const double denom = std::sqrt(gs.norm_sq[j] * gs.norm_sq[k]);
      worst = std::max(worst, std::abs(dot(gs.bstar[j], gs.bstar[k])) / denom);
    }
  }
  return worst;
}

std::vector<std::vector<oracle::BigInt>> columns_big(const Basis& b) {
  std::vector<std::vector<oracle::BigInt>> out(b.cols(), std::vector<oracle::BigInt>(b.rows()));
  for (std::size_t c = 0; c < b.cols(); ++c)
    for (std::size_t r = 0; r < b.rows(); ++r) out[c][r] = oracle::big(b(r, c));
  return out;
}

}  // namespace

TEST_CASE("orthogonalize on hand examples") {
  const LLLConfig cfg;
  const auto id = orthogonalize(IntMatrix::identity(3), cfg);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(id.norm_sq[k] == 1.0);
    CHECK(id.mu[k][k] == 1.0);
    for (std::size_t j = 0; j < k; ++j) CHECK(id.mu[k][j] == 0.0);
  }
  const auto gs = orthogonalize(IntMatrix::from_columns({{1, 0}, {10, 1}}), cfg);
  CHECK(gs.bstar[0] == std::vector<double>{1.0, 0.0});
  CHECK(gs.mu[1][0] == 10.0);
  CHECK(gs.bstar[1][0] == doctest::Approx(0.0));
  CHECK(gs.bstar[1][1] == doctest::Approx(1.0));
}

TEST_CASE("orthogonality residual stays below 1e-12") {
  SplitMix64 rng(11);
  const LLLConfig cfg;
  for (int t = 0; t < 20; ++t) {
    const auto gs = orthogonalize(oracle::random_nonsingular(rng, 8, 50), cfg);
    CHECK(orthogonality_residual(gs) <= 1e-12);
  }
  for (std::size_t n : {16, 32, 64}) {
    Basis a = oracle::random_matrix(rng, n, n, 1 << 13);
    const auto gs = orthogonalize(a, cfg);
    INFO("n = " << n);
    CHECK(orthogonality_residual(gs) <= 1e-12);
  }
}

TEST_CASE("orthogonalize leaves a zero column with zero norm") {
  const auto gs = orthogonalize(IntMatrix::from_columns({{1, 2}, {0, 0}}), LLLConfig{});
  CHECK(gs.norm_sq[1] == 0.0);
}

TEST_CASE("size_reduce") {
  const LLLConfig cfg;
  SUBCASE("mu = 10 is cleared") {
    auto state = LatticeState::from_basis(IntMatrix::from_columns({{1, 0}, {10, 1}}));
    auto gs = orthogonalize(state.basis, cfg);
    CHECK(size_reduce(gs, state, 1) == 10.0);
    CHECK(state.basis == IntMatrix::from_columns({{1, 0}, {0, 1}}));
    CHECK(gs.mu[1][0] == 0.0);
    CHECK(gram_compute(state.basis) == state.gram);
  }
  SUBCASE("already reduced columns are untouched") {
    const Basis b = IntMatrix::from_columns({{3, 0}, {1, 3}});
    auto state = LatticeState::from_basis(b);
    auto gs = orthogonalize(b, cfg);
    CHECK(size_reduce(gs, state, 1) == 0.0);
    CHECK(state.basis == b);
  }
  SUBCASE("mu = 1/2 rounds away from zero") {
    auto state = LatticeState::from_basis(IntMatrix::from_columns({{2, 0}, {1, 1}}));
    auto gs = orthogonalize(state.basis, cfg);
    CHECK(gs.mu[1][0] == 0.5);
    size_reduce(gs, state, 1);
    CHECK(state.basis == IntMatrix::from_columns({{2, 0}, {-1, 1}}));
    CHECK(gs.mu[1][0] == -0.5);
  }
}

TEST_CASE("lovasz_ok") {
  GSState gs;
  gs.m = gs.n = 2;
  gs.mu = {{1.0, 0.0}, {0.4, 1.0}};
  gs.norm_sq = {1.0, 0.1};
  CHECK_FALSE(lovasz_ok(gs, 1, 0.99));
  CHECK(lovasz_ok(gs, 1, 0.25));
  gs.mu[1][0] = 0.0;
  gs.norm_sq = {4.0, 4.0};
  CHECK(lovasz_ok(gs, 1, 1.0));
  CHECK(lovasz_ok(gs, 1, 0.5));
}

TEST_CASE("lll_reduce on hand examples") {
  const LLLConfig cfg;
  CHECK(lll_reduce(IntMatrix::identity(4), cfg).basis == IntMatrix::identity(4));
  CHECK(lll_reduce(IntMatrix::from_columns({{1, 0}, {10, 1}}), cfg).basis == IntMatrix::from_columns({{1, 0}, {0, 1}}));

  const Basis b = IntMatrix::from_columns({{1, 1, 1}, {-1, 0, 2}, {3, 5, 6}});
  LLLConfig quarter{0.75};
  const auto r = lll_reduce(b, quarter);
  for (std::size_t c = 0; c < 3; ++c) {
    i128 norm = 0;
    for (auto v : r.basis.column(c)) norm += v * v;
    CHECK(norm <= 6);
  }
  const auto verdict = oracle::exact_lll_check(r.basis, 0.75, 1e-9);
  CHECK(verdict.size_reduced);
  CHECK(verdict.lovasz);
  // Same swaps and roundings as the exact textbook reference.
  CHECK(columns_big(r.basis) == oracle::exact_lll(b, oracle::Rational(3, 4)));
}

TEST_CASE("lll_reduce agrees with exact LLL on small random bases") {
  SplitMix64 rng(5);
  int compared = 0;
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.below(4));
    const Basis b = oracle::random_nonsingular(rng, n, 20);
    const auto r = lll_reduce(b, LLLConfig{0.99});
    const auto verdict = oracle::exact_lll_check(r.basis, 0.99 - 1e-9, 1e-9);
    CHECK(verdict.size_reduced);
    CHECK(verdict.lovasz);
    compared += columns_big(r.basis) == oracle::exact_lll(b, oracle::Rational(99, 100));
  }
  // Floating mu can land on the other side of a rounding boundary only in
  // knife-edge cases; the reductions should almost always coincide.
  CHECK(compared >= 55);
}

TEST_CASE("lll_reduce postconditions, transform and lattice") {
  SplitMix64 rng(21);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.below(7));
    const Basis b = oracle::random_nonsingular(rng, n, 1000);
    for (double delta : {1.0 - 1e-15, 0.9, 0.5}) {
      LatticeState state = LatticeState::from_basis(b, true);
      LLLConfig cfg{delta};
      lll_reduce_in_place(state, cfg);
      CHECK(transform_consistent(b, state));
      CHECK(is_unimodular(*state.transform));
      CHECK(gram_compute(state.basis) == state.gram);
      const auto verdict = oracle::exact_lll_check(state.basis, delta - 1e-9, 1e-9);
      CHECK(verdict.size_reduced);
      CHECK(verdict.lovasz);
      const auto check = check_lll(state.basis, delta);
      CHECK(check.max_abs_mu <= 0.5 + 1e-9);
      CHECK(check.min_lovasz_slack >= -1e-9 * std::max(1.0, static_cast<double>(state.gram(0, 0))));
    }
  }
}

TEST_CASE("lll_reduce on q-ary examples") {
  for (std::size_t ell : {2, 4, 8}) {
    const Basis b = random_permutation(gen_example({8191, ell, 3}), 4);
    for (double delta : {1.0 - 1e-15, 1.0 - 1e-1}) {
      const auto r = lll_reduce(b, LLLConfig{delta});
      const auto verdict = oracle::exact_lll_check(r.basis, delta - 1e-9, 1e-9);
      CHECK(verdict.size_reduced);
      CHECK(verdict.lovasz);
      CHECK(r.after.frobenius_sq <= r.before.frobenius_sq);
    }
  }
}

TEST_CASE("lll_reduce reports the dependent column") {
  const Basis b = IntMatrix::from_columns({{1, 2, 3}, {2, 4, 6}, {0, 1, 0}});
  try {
    lll_reduce(b, LLLConfig{});
    FAIL("expected RankDeficientError");
  } catch (const RankDeficientError& e) {
    CHECK(e.column() == 1);
  }
  CHECK_THROWS_AS(lll_reduce(IntMatrix::from_columns({{0, 0}, {1, 0}}), LLLConfig{}), RankDeficientError);
}

TEST_CASE("LLLConfig validation") {
  CHECK_THROWS_AS(LLLConfig{0.25}.validate(), std::invalid_argument);
  CHECK_THROWS_AS(LLLConfig{1.5}.validate(), std::invalid_argument);
  CHECK_THROWS_AS((LLLConfig{0.75, 1}).validate(), std::invalid_argument);
  CHECK_NOTHROW(LLLConfig{1.0}.validate());
}

TEST_CASE("norm quality against enumeration for n = 2, 3") {
  SplitMix64 rng(99);
  int checked = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.below(2));
    const Basis b = oracle::random_nonsingular(rng, n, 30);
    const auto shortest = oracle::shortest_vector_sq(b);
    if (!shortest) continue;
    for (double delta : {0.75, 0.99}) {
      LatticeState state = LatticeState::from_basis(b);
      lll_reduce_in_place(state, LLLConfig{delta});
      const auto min_sq = norm_summary(state.gram).min_norm_sq;
      const double factor = std::pow(2.0 / std::sqrt(4.0 * delta - 1.0), static_cast<double>(n - 1));
      CHECK(std::sqrt(static_cast<double>(min_sq)) <= factor * std::sqrt(static_cast<double>(*shortest)) + 1e-9);
    }
    ++checked;
  }
  CHECK(checked >= 90);
}
