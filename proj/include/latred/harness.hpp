#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "latred/core.hpp"

namespace latred {

enum class ProtocolMode {
  once,        ///< independent trials: permute -> LLL -> greedy
  repeatedly,  ///< one chain of rounds, each fed the previous round's output
};

std::string to_string(ProtocolMode mode);

struct ExperimentConfig {
  std::int64_t q = 8191;
  std::vector<std::size_t> ell_list{2, 4, 8, 16};
  double delta = 1.0 - 1e-15;
  std::vector<double> p_schedule{2.0};
  /// Trials (once) or chain length (repeatedly).
  std::size_t trials = 10;
  ProtocolMode mode = ProtocolMode::once;
  std::uint64_t seed = 0;
  /// Trials run concurrently on this many threads (once mode only).
  int threads = 1;

  void validate() const;
};

/// Metrics of one trial (once) or one chain round (repeatedly). Squared norms
/// are exact; fractions are derived on demand.
///
/// In repeated mode `initial` is the input of the whole chain, `after_lll`
/// is the state just before this round's greedy pass, and `after_ours` the
/// state after it, so the last round carries the chain's reported figures.
struct TrialRecord {
  ProtocolMode mode = ProtocolMode::once;
  std::size_t n = 0;
  std::int64_t q = 0;
  double delta = 0.0;
  std::vector<double> p_schedule;
  std::size_t trial = 0;
  NormSummary initial;
  NormSummary after_lll;
  NormSummary after_ours;
  double secs_lll = 0.0;
  double secs_ours = 0.0;
  std::size_t iters_ours = 0;
  /// Set when a reducer failed; the metric fields are then meaningless.
  std::optional<std::string> error;
};

/// Fraction of the norm remaining, sqrt(after_sq / before_sq); 1 when before is 0.
double norm_fraction(i128 before_sq, i128 after_sq);

/// Seed of the example basis for one ell, and of the permutation of trial t.
std::uint64_t example_seed(std::uint64_t seed, std::size_t ell);
std::uint64_t trial_seed(std::uint64_t seed, std::size_t ell, std::size_t trial);

std::vector<TrialRecord> run_once(const ExperimentConfig& config);
std::vector<TrialRecord> run_repeatedly(const ExperimentConfig& config);
/// Dispatches on config.mode.
std::vector<TrialRecord> run_experiment(const ExperimentConfig& config);

inline constexpr const char* kCsvHeader =
    "mode,n,q,delta,p,trial,frob_sq_0,frob_sq_lll,frob_sq_ours,min_sq_0,min_sq_lll,min_sq_ours,"
    "secs_lll,secs_ours,iters_ours";

/// Header, one row per successful record, then mean/min/max rows per
/// (mode, n) in first-appearance order.
void emit_csv(const std::vector<TrialRecord>& records, std::ostream& out);
void emit_csv(const std::vector<TrialRecord>& records, const std::filesystem::path& path);

/// Human-readable table of mean/min/max norm fractions per (mode, n).
void print_summary(const std::vector<TrialRecord>& records, std::ostream& out);

}  // namespace latred
