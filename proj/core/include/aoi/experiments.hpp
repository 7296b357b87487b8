#pragma once

// Experiment runners behind the aoisched CLI. Every runner is deterministic
// given its parameters; independent cells run concurrently and rows are
// merged in parameter order before being returned.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "aoi/analysis.hpp"
#include "aoi/opt_solver.hpp"
#include "aoi/rational.hpp"
#include "aoi/types.hpp"

namespace aoi {

inline constexpr const char* kToolName = "aoisched";
const char* tool_version();

struct SweepRow {
  std::size_t delta = 0;
  std::size_t periods = 0;
  std::size_t horizon = 0;
  Cost cost_ma_csit = 0;
  Cost cost_opt = 0;
  Ratio ratio;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // one per delta that finished, ascending delta
  std::optional<std::string> error;  // first budget failure, if any
};

/// MA-CSIT/OPT ratio on the two-user construction for each delta.
SweepResult run_ratio_sweep_2user(const std::vector<std::size_t>& deltas, std::size_t periods,
                                  const OptOptions& opt = {}, unsigned threads = 0);
/// Same for the three-user construction.
SweepResult run_ratio_sweep_3user(const std::vector<std::size_t>& deltas, std::size_t periods,
                                  const OptOptions& opt = {}, unsigned threads = 0);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

struct StochasticRow {
  double p = 0;
  std::uint64_t seed = 0;
  Ratio aoi_avg_ma_csit;
  Ratio aoi_avg_max_age;
  Ratio ratio;  // aoi_avg_max_age / aoi_avg_ma_csit
};

struct StochasticSummary {
  double p = 0;
  std::size_t seeds = 0;
  double mean_aoi_avg_ma_csit = 0;
  double mean_aoi_avg_max_age = 0;
  double mean_ratio = 0;  // mean of the per-seed ratios
};

struct StochasticResult {
  std::vector<StochasticRow> rows;  // ordered by (p index, seed)
  std::vector<StochasticSummary> summary;
};

/// Compares Max-Age against MA-CSIT on i.i.d. channels; AoI_avg is
/// total_cost / T. Seeds are used as given for gen_iid.
StochasticResult run_stochastic_compare(const std::vector<double>& ps, std::size_t num_users,
                                        std::size_t horizon,
                                        const std::vector<std::uint64_t>& seeds,
                                        unsigned threads = 0);

void write_stochastic_csv(std::ostream& out, const StochasticResult& result);
void write_stochastic_summary_csv(std::ostream& out, const StochasticResult& result);

struct InvariantSuiteConfig {
  std::size_t n2_traces = 1000;
  std::size_t n2_horizon = 50;
  std::size_t n3_traces = 100;
  std::size_t n3_horizon = 36;
  double p = 0.5;
  std::uint64_t seed = 1;
  bool include_constructions = true;
  /// Adds a fixture whose OPT trace is deliberately corrupted; the suite must
  /// then fail on it.
  bool corrupt_fixture = false;
  OptOptions opt;
  unsigned threads = 0;
};

struct SuiteFailure {
  std::string case_name;
  ChannelTrace trace{1, 1};
  std::vector<Violation> violations;
};

struct InvariantSuiteReport {
  std::size_t cases_run = 0;
  std::size_t intervals_checked = 0;
  Ratio max_ratio_2user{1, 1};
  Ratio max_ratio_3user{1, 1};
  std::vector<SuiteFailure> failures;
  std::vector<std::string> notes;

  bool passed() const { return failures.empty(); }
};

/// Runs every analysis check over random i.i.d. traces and the adversarial
/// constructions, plus the ratio bounds (2 for two users, 8/3 for three).
InvariantSuiteReport run_invariant_suite(const InvariantSuiteConfig& config);

/// Checks for one channel trace with all-ones initial ages; `corrupt` edits
/// the OPT trace mid-interval before checking.
std::vector<Violation> check_all_invariants(const ChannelTrace& trace, Ratio* ratio_out = nullptr,
                                            std::size_t* intervals_out = nullptr,
                                            std::vector<std::string>* notes_out = nullptr,
                                            const OptOptions& opt = {}, bool corrupt = false);

/// Runs fn(i) for i in [0, count) on up to `threads` workers (0 = hardware).
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn);

}  // namespace aoi

#include "aoi/detail/parallel_for.hpp"
