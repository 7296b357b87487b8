#pragma once

#include <cstdint>

#include "aoi/opt_solver.hpp"
#include "aoi/rational.hpp"
#include "aoi/types.hpp"

namespace aoi {

enum class SearchMethod { Exhaustive, LocalSearch };

struct SearchResult {
  Ratio best_ratio;
  ChannelTrace argmax_trace{1, 1};
  Cost cost_ma_csit = 0;
  Cost cost_opt = 0;
  std::uint64_t sequences_examined = 0;
  SearchMethod method = SearchMethod::Exhaustive;
  bool sampled = false;  // exhaustive budget exceeded, random subset examined
};

struct ExhaustiveOptions {
  /// Largest 2^(n*t) enumerated in full.
  std::uint64_t sequence_budget = std::uint64_t{1} << 24;
  /// When non-zero and the full space exceeds the budget, examine this many
  /// uniformly drawn sequences instead of refusing.
  std::uint64_t sample = 0;
  std::uint64_t sample_seed = 1;
  /// 0 = hardware concurrency.
  unsigned threads = 0;
};

/// MA-CSIT/OPT ratio maximised over every n x t channel trace. Traces are
/// enumerated as integers with slot 1 most significant and user i at bit i of
/// its slot; the smallest maximiser is returned. The result is re-verified
/// with ratio_report before returning.
SearchResult exhaustive_search(std::size_t num_users, std::size_t horizon,
                               const AgeVector& initial_ages,
                               const ExhaustiveOptions& options = {});

struct LocalSearchOptions {
  std::uint64_t seed = 1;
  /// Single-state flips tried from each restart.
  std::size_t iterations = 1000;
  /// Random restarts added to the warm starts built from the constructions.
  std::size_t random_restarts = 4;
  OptOptions opt;
};

/// Hill-climbing over single (slot, user) flips. The restart pool holds every
/// adversarial construction that fits (n, t) plus seeded random traces;
/// flips that do not lower the ratio are kept.
SearchResult local_search(std::size_t num_users, std::size_t horizon,
                          const AgeVector& initial_ages, const LocalSearchOptions& options = {});

}  // namespace aoi
