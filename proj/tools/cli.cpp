#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "latred/altreduce.hpp"
#include "latred/genlat.hpp"
#include "latred/greedy.hpp"
#include "latred/harness.hpp"
#include "latred/lll.hpp"
#include "latred/matrix_io.hpp"

namespace latred::cli {

namespace {

/// Invalid flag values detected after parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GenFlags {
  std::int64_t q = 0;
  std::size_t ell = 0;
  std::uint64_t seed = 0;
  std::string out;
};

struct ReduceFlags {
  std::string algo;
  std::string in;
  std::string out;
  double p = 2.0;
  std::vector<double> p_schedule;
  double delta = 1.0 - 1e-15;
  std::string score = "sum";
  std::size_t iters = 0;
  std::uint64_t seed = 0;
  bool track = false;
  std::string report;
};

struct BenchFlags {
  std::int64_t q = 8191;
  std::vector<std::size_t> ell_list{2, 4, 8, 16};
  bool full_sweep = false;
  std::size_t trials = 10;
  std::string mode = "once";
  double delta = 1.0 - 1e-15;
  double p = 2.0;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string csv;
};

int cmd_gen(const GenFlags& flags, std::ostream& out) {
  const ExampleSpec spec{flags.q, flags.ell, flags.seed};
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  write_mat(flags.out, gen_example(spec));
  out << "n=" << spec.n() << ' ' << flags.out << '\n';
  return kOk;
}

nlohmann::json summary_json(const NormSummary& s) {
  return {{"frobenius_sq", to_string(s.frobenius_sq)}, {"min_norm_sq", to_string(s.min_norm_sq)}};
}

int cmd_reduce(const ReduceFlags& flags, const CLI::App& app, std::ostream& out) {
  const bool greedy_stage = flags.algo == "greedy" || flags.algo == "lll+greedy";
  const bool lll_stage = flags.algo == "lll" || flags.algo == "lll+greedy";
  if (app.count("--iters") && flags.algo != "rand-comb") throw UsageError("--iters applies only to --algo rand-comb");
  if (app.count("--score") && !greedy_stage) throw UsageError("--score applies only to greedy reduction");
  if (app.count("--delta") && !lll_stage) throw UsageError("--delta applies only to LLL reduction");
  if ((app.count("--p") || app.count("--p-schedule")) && !greedy_stage && flags.algo != "mgs") {
    throw UsageError("--p/--p-schedule apply only to greedy and mgs reduction");
  }
  if (app.count("--p-schedule") && flags.algo == "mgs") throw UsageError("mgs takes a single --p");
  if (flags.algo == "rand-comb" && !app.count("--iters")) throw UsageError("--algo rand-comb requires --iters");

  ReduceConfig greedy;
  greedy.p_schedule = flags.p_schedule.empty() ? std::vector<double>{flags.p} : flags.p_schedule;
  greedy.score_mode = flags.score == "max" ? ScoreMode::max : ScoreMode::sum;
  const LLLConfig lll{flags.delta};
  try {
    greedy.validate();
    lll.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const Basis input = read_mat(flags.in);
  nlohmann::json report = {{"algo", flags.algo}, {"m", input.rows()}, {"n", input.cols()}};
  ReductionResult result;
  if (greedy_stage || lll_stage) {
    Stopwatch clock;
    LatticeState state = LatticeState::from_basis(input, flags.track);
    result.before = norm_summary(state.gram);
    if (lll_stage) {
      const auto swaps = lll_reduce_in_place(state, lll);
      report["lll_swaps"] = swaps;
      result.iterations += swaps;
    }
    if (greedy_stage) {
      const auto iterations = reduce_in_place(state, greedy);
      report["greedy_iterations"] = iterations;
      result.iterations += iterations;
    }
    result.after = norm_summary(state.gram);
    result.seconds = clock.seconds();
    result.basis = std::move(state.basis);
    result.transform = std::move(state.transform);
  } else {
    AltConfig alt;
    alt.variant = flags.algo == "mgs" ? AltVariant::mgs_pivot : AltVariant::random_combination;
    alt.p = flags.p;
    alt.iterations = flags.iters;
    alt.seed = flags.seed;
    alt.track_transform = flags.track;
    try {
      alt.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    result = alt_reduce(input, alt);
  }
  write_mat(flags.out, result.basis);

  report["before"] = summary_json(result.before);
  report["after"] = summary_json(result.after);
  report["iterations"] = result.iterations;
  report["seconds"] = result.seconds;
  if (result.transform) {
    LatticeState check{result.basis, {}, result.transform};
    report["transform_consistent"] = transform_consistent(input, check);
    if (result.transform->cols() <= 16) {
      report["unimodular"] = is_unimodular(*result.transform);
    } else {
      report["unimodular"] = nullptr;  // exact determinant limited to n <= 16
    }
  }
  if (!flags.report.empty()) {
    std::ofstream rep(flags.report);
    if (!rep) throw InputError("cannot open '" + flags.report + "' for writing");
    rep << report.dump(2) << '\n';
  }
  out << "frobenius_sq " << to_string(result.before.frobenius_sq) << " -> " << to_string(result.after.frobenius_sq)
      << ", min_norm_sq " << to_string(result.before.min_norm_sq) << " -> " << to_string(result.after.min_norm_sq)
      << ", iterations " << result.iterations << '\n';
  return kOk;
}

int cmd_bench(const BenchFlags& flags, std::ostream& out, std::ostream& err) {
  ExperimentConfig config;
  config.q = flags.q;
  config.ell_list = flags.ell_list;
  if (flags.full_sweep) config.ell_list = {2, 4, 8, 16, 32, 64, 128};
  config.trials = flags.trials;
  config.mode = flags.mode == "repeat" ? ProtocolMode::repeatedly : ProtocolMode::once;
  config.delta = flags.delta;
  config.p_schedule = {flags.p};
  config.seed = flags.seed;
  config.threads = flags.threads;
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto records = run_experiment(config);
  emit_csv(records, std::filesystem::path(flags.csv));
  print_summary(records, out);
  int code = kOk;
  for (const auto& rec : records) {
    if (rec.error) {
      err << "n=" << rec.n << " trial " << rec.trial << " failed: " << *rec.error << '\n';
      code = kNumericalFault;
    }
  }
  return code;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lattice basis reduction: greedy Gram-matrix polishing, LLL, and experiment harness"};
  app.require_subcommand(1);

  GenFlags gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a q-ary example basis in .mat format");
  gen_cmd->add_option("--q", gen.q, "Odd modulus")->required();
  gen_cmd->add_option("--ell", gen.ell, "Block size; the basis is 3*ell square")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed, "Generator seed")->required();
  gen_cmd->add_option("--out", gen.out, "Output .mat path")->required();

  ReduceFlags red;
  auto* red_cmd = app.add_subcommand("reduce", "Reduce a basis read from a .mat file");
  red_cmd->add_option("--algo", red.algo, "Reducer")
      ->required()
      ->check(CLI::IsMember({"greedy", "lll", "lll+greedy", "rand-comb", "mgs"}));
  red_cmd->add_option("--in", red.in, "Input .mat path")->required();
  red_cmd->add_option("--out", red.out, "Output .mat path")->required();
  auto* p_opt = red_cmd->add_option("--p", red.p, "Exponent of the norm sum (default 2)");
  auto* sched_opt = red_cmd->add_option("--p-schedule", red.p_schedule, "Comma-separated exponents run in order")
                        ->delimiter(',');
  p_opt->excludes(sched_opt);
  red_cmd->add_option("--delta", red.delta, "Lovasz parameter (default 1-1e-15)");
  red_cmd->add_option("--score", red.score, "Pivot score")->check(CLI::IsMember({"sum", "max"}));
  red_cmd->add_option("--iters", red.iters, "Steps for rand-comb");
  red_cmd->add_option("--seed", red.seed, "Seed for rand-comb");
  red_cmd->add_flag("--track-transform", red.track, "Accumulate and verify the unimodular transform");
  red_cmd->add_option("--report", red.report, "Write a JSON report here");

  BenchFlags bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run the permute/LLL/greedy experiment and write CSV");
  bench_cmd->add_option("--q", bench.q, "Odd modulus (default 8191)");
  auto* ell_opt = bench_cmd->add_option("--ell-list", bench.ell_list, "Comma-separated ell values (default 2,4,8,16)")
                      ->delimiter(',');
  bench_cmd->add_flag("--full-sweep", bench.full_sweep, "Use ell = 2,4,...,128")->excludes(ell_opt);
  bench_cmd->add_option("--trials", bench.trials, "Trials, or chain length in repeat mode (default 10)");
  bench_cmd->add_option("--mode", bench.mode, "Protocol")->check(CLI::IsMember({"once", "repeat"}));
  bench_cmd->add_option("--delta", bench.delta, "Lovasz parameter (default 1-1e-15)");
  bench_cmd->add_option("--p", bench.p, "Greedy exponent (default 2)");
  bench_cmd->add_option("--seed", bench.seed, "Experiment seed (default 0)");
  bench_cmd->add_option("--threads", bench.threads, "Concurrent trials in once mode (default 1)");
  bench_cmd->add_option("--csv", bench.csv, "Output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, out);
    if (*red_cmd) return cmd_reduce(red, *red_cmd, out);
    return cmd_bench(bench, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const OverflowError& e) {
    err << "numerical fault: " << e.what() << '\n';
    return kNumericalFault;
  } catch (const std::exception& e) {
    err << "numerical fault: " << e.what() << '\n';
    return kNumericalFault;
  }
}

}  // namespace latred::cli
