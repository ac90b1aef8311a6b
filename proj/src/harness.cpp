#include "latred/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "latred/genlat.hpp"
#include "latred/greedy.hpp"
#include "latred/lll.hpp"
#include "latred/rng.hpp"

namespace latred {

std::string to_string(ProtocolMode mode) { return mode == ProtocolMode::once ? "once" : "repeat"; }

void ExperimentConfig::validate() const {
  ExampleSpec{q, 1, 0}.validate();
  if (ell_list.empty()) throw std::invalid_argument("ell list must not be empty");
  for (const auto ell : ell_list) {
    if (ell < 1) throw std::invalid_argument("every ell must be positive");
  }
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (threads < 1) throw std::invalid_argument("threads must be at least 1");
  LLLConfig{delta}.validate();
  ReduceConfig greedy;
  greedy.p_schedule = p_schedule;
  greedy.validate();
}

double norm_fraction(i128 before_sq, i128 after_sq) {
  if (before_sq == 0) return 1.0;
  return std::sqrt(to_double(after_sq) / to_double(before_sq));
}

std::uint64_t example_seed(std::uint64_t seed, std::size_t ell) { return derive_seed(seed, ell, 0); }

std::uint64_t trial_seed(std::uint64_t seed, std::size_t ell, std::size_t trial) {
  return derive_seed(seed, ell, trial + 1);
}

namespace {

TrialRecord blank_record(const ExperimentConfig& config, ProtocolMode mode, std::size_t n, std::size_t trial) {
  TrialRecord rec;
  rec.mode = mode;
  rec.n = n;
  rec.q = config.q;
  rec.delta = config.delta;
  rec.p_schedule = config.p_schedule;
  rec.trial = trial;
  return rec;
}

// Permutes, runs LLL then the greedy reducer on `state`, filling the
// after-LLL/after-ours metrics.
void run_round(LatticeState& state, const ExperimentConfig& config, std::uint64_t perm_seed, TrialRecord& rec) {
  state = LatticeState::from_basis(random_permutation(state.basis, perm_seed));

  Stopwatch lll_clock;
  lll_reduce_in_place(state, LLLConfig{config.delta});
  rec.secs_lll = lll_clock.seconds();
  rec.after_lll = norm_summary(state.gram);

  Stopwatch ours_clock;
  state.gram = gram_compute(state.basis);  // a standalone run starts from the basis alone
  ReduceConfig greedy;
  greedy.p_schedule = config.p_schedule;
  rec.iters_ours = reduce_in_place(state, greedy);
  rec.secs_ours = ours_clock.seconds();
  rec.after_ours = norm_summary(state.gram);
}

}  // namespace

std::vector<TrialRecord> run_once(const ExperimentConfig& config) {
  config.validate();
  std::vector<TrialRecord> records;
  for (const auto ell : config.ell_list) {
    const Basis example = gen_example({config.q, ell, example_seed(config.seed, ell)});
    const NormSummary initial = norm_summary(gram_compute(example));
    std::vector<TrialRecord> batch(config.trials);
    const auto trials = static_cast<std::ptrdiff_t>(config.trials);
#pragma omp parallel for schedule(dynamic, 1) num_threads(config.threads) if (config.threads > 1)
    for (std::ptrdiff_t t = 0; t < trials; ++t) {
      const auto trial = static_cast<std::size_t>(t);
      TrialRecord rec = blank_record(config, ProtocolMode::once, example.cols(), trial);
      rec.initial = initial;
      try {
        LatticeState state;
        state.basis = example;
        run_round(state, config, trial_seed(config.seed, ell, trial), rec);
      } catch (const std::exception& e) {
        rec.error = e.what();
      }
      batch[trial] = std::move(rec);
    }
    std::move(batch.begin(), batch.end(), std::back_inserter(records));
  }
  return records;
}

std::vector<TrialRecord> run_repeatedly(const ExperimentConfig& config) {
  config.validate();
  std::vector<TrialRecord> records;
  for (const auto ell : config.ell_list) {
    LatticeState state;
    state.basis = gen_example({config.q, ell, example_seed(config.seed, ell)});
    const NormSummary initial = norm_summary(gram_compute(state.basis));
    for (std::size_t round = 0; round < config.trials; ++round) {
      TrialRecord rec = blank_record(config, ProtocolMode::repeatedly, state.basis.cols(), round);
      rec.initial = initial;
      try {
        run_round(state, config, trial_seed(config.seed, ell, round), rec);
      } catch (const std::exception& e) {
        rec.error = e.what();
        records.push_back(std::move(rec));
        break;  // the chain cannot continue from a failed round
      }
      records.push_back(std::move(rec));
    }
  }
  return records;
}

std::vector<TrialRecord> run_experiment(const ExperimentConfig& config) {
  return config.mode == ProtocolMode::once ? run_once(config) : run_repeatedly(config);
}

namespace {

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string format_schedule(const std::vector<double>& schedule) {
  std::string out;
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (i) out += ':';
    out += format_g17(schedule[i]);
  }
  return out;
}

// Exact mean of integers, rounded to 6 decimals.
std::string format_mean(i128 sum, std::size_t count) {
  const i128 scaled = nint_ratio(checked::mul(sum, 1'000'000), static_cast<i128>(count));
  const bool negative = scaled < 0;
  const i128 mag = negative ? -scaled : scaled;
  std::string frac = to_string(mag % 1'000'000);
  frac.insert(0, 6 - frac.size(), '0');
  return (negative ? "-" : "") + to_string(mag / 1'000'000) + "." + frac;
}

struct IntStat {
  i128 sum = 0;
  i128 min = kI128Max;
  i128 max = kI128Min;
  void add(i128 v) {
    sum = checked::add(sum, v);
    min = std::min(min, v);
    max = std::max(max, v);
  }
};

struct RealStat {
  double sum = 0.0;
  double min = HUGE_VAL;
  double max = -HUGE_VAL;
  void add(double v) {
    sum += v;
    min = std::min(min, v);
    max = std::max(max, v);
  }
};

struct Group {
  const TrialRecord* first = nullptr;
  std::size_t count = 0;
  IntStat ints[6];
  RealStat secs[2];
  IntStat iters;
};

std::vector<Group> group_records(const std::vector<TrialRecord>& records) {
  std::vector<Group> groups;
  std::map<std::pair<int, std::size_t>, std::size_t> index;
  for (const auto& rec : records) {
    if (rec.error) continue;
    const auto key = std::make_pair(static_cast<int>(rec.mode), rec.n);
    auto [it, inserted] = index.try_emplace(key, groups.size());
    if (inserted) {
      groups.emplace_back();
      groups.back().first = &rec;
    }
    Group& g = groups[it->second];
    ++g.count;
    const i128 values[6] = {rec.initial.frobenius_sq, rec.after_lll.frobenius_sq, rec.after_ours.frobenius_sq,
                            rec.initial.min_norm_sq,  rec.after_lll.min_norm_sq,  rec.after_ours.min_norm_sq};
    for (int i = 0; i < 6; ++i) g.ints[i].add(values[i]);
    g.secs[0].add(rec.secs_lll);
    g.secs[1].add(rec.secs_ours);
    g.iters.add(static_cast<i128>(rec.iters_ours));
  }
  return groups;
}

std::string row_prefix(const TrialRecord& rec, const std::string& trial) {
  return to_string(rec.mode) + "," + std::to_string(rec.n) + "," + std::to_string(rec.q) + "," +
         format_g17(rec.delta) + "," + format_schedule(rec.p_schedule) + "," + trial;
}

}  // namespace

void emit_csv(const std::vector<TrialRecord>& records, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& rec : records) {
    if (rec.error) continue;
    out << row_prefix(rec, std::to_string(rec.trial)) << ',' << to_string(rec.initial.frobenius_sq) << ','
        << to_string(rec.after_lll.frobenius_sq) << ',' << to_string(rec.after_ours.frobenius_sq) << ','
        << to_string(rec.initial.min_norm_sq) << ',' << to_string(rec.after_lll.min_norm_sq) << ','
        << to_string(rec.after_ours.min_norm_sq) << ',' << format_fixed6(rec.secs_lll) << ','
        << format_fixed6(rec.secs_ours) << ',' << rec.iters_ours << '\n';
  }
  for (const Group& g : group_records(records)) {
    out << row_prefix(*g.first, "mean");
    for (const auto& s : g.ints) out << ',' << format_mean(s.sum, g.count);
    for (const auto& s : g.secs) out << ',' << format_fixed6(s.sum / static_cast<double>(g.count));
    out << ',' << format_mean(g.iters.sum, g.count) << '\n';
    out << row_prefix(*g.first, "min");
    for (const auto& s : g.ints) out << ',' << to_string(s.min);
    for (const auto& s : g.secs) out << ',' << format_fixed6(s.min);
    out << ',' << to_string(g.iters.min) << '\n';
    out << row_prefix(*g.first, "max");
    for (const auto& s : g.ints) out << ',' << to_string(s.max);
    for (const auto& s : g.secs) out << ',' << format_fixed6(s.max);
    out << ',' << to_string(g.iters.max) << '\n';
  }
}

void emit_csv(const std::vector<TrialRecord>& records, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
  emit_csv(records, out);
  out.flush();
  if (!out) throw InputError("write to '" + path.string() + "' failed");
}

void print_summary(const std::vector<TrialRecord>& records, std::ostream& out) {
  struct Row {
    std::string mode;
    std::size_t n = 0;
    RealStat frac[4];  // frob LLL, frob ours, min LLL, min ours
    RealStat secs[2];
    RealStat iters;
    std::size_t count = 0;
  };
  std::vector<Row> rows;
  std::map<std::pair<std::string, std::size_t>, std::size_t> index;
  for (const auto& rec : records) {
    if (rec.error) continue;
    const auto key = std::make_pair(to_string(rec.mode), rec.n);
    auto [it, inserted] = index.try_emplace(key, rows.size());
    if (inserted) {
      rows.emplace_back();
      rows.back().mode = key.first;
      rows.back().n = rec.n;
    }
    Row& row = rows[it->second];
    row.frac[0].add(norm_fraction(rec.initial.frobenius_sq, rec.after_lll.frobenius_sq));
    row.frac[1].add(norm_fraction(rec.after_lll.frobenius_sq, rec.after_ours.frobenius_sq));
    row.frac[2].add(norm_fraction(rec.initial.min_norm_sq, rec.after_lll.min_norm_sq));
    row.frac[3].add(norm_fraction(rec.after_lll.min_norm_sq, rec.after_ours.min_norm_sq));
    row.secs[0].add(rec.secs_lll);
    row.secs[1].add(rec.secs_ours);
    row.iters.add(static_cast<double>(rec.iters_ours));
    ++row.count;
  }
  char line[256];
  std::snprintf(line, sizeof line, "%-7s %5s %6s %-28s   %-28s   %-28s   %-28s  %10s %10s %8s\n", "mode", "n", "runs",
                "frob LLL mean [min,max]", "frob ours mean [min,max]", "min LLL mean [min,max]",
                "min ours mean [min,max]", "s LLL", "s ours", "iters");
  out << line;
  for (const Row& row : rows) {
    const double count = static_cast<double>(row.count);
    std::snprintf(line, sizeof line, "%-7s %5zu %6zu", row.mode.c_str(), row.n, row.count);
    out << line;
    for (const auto& f : row.frac) {
      std::snprintf(line, sizeof line, " %.6f [%.6f,%.6f]  ", f.sum / count, f.min, f.max);
      out << line;
    }
    std::snprintf(line, sizeof line, "%10.6f %10.6f %8.1f\n", row.secs[0].sum / count, row.secs[1].sum / count,
                  row.iters.sum / count);
    out << line;
  }
}

}  // namespace latred
