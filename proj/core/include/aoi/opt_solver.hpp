#pragma once

#include <cstdint>

#include "aoi/types.hpp"

namespace aoi {

struct OptResult {
  Cost cost = 0;
  Schedule schedule;
  SimTrace trace;  // replay of `schedule`
};

struct OptOptions {
  /// Upper bound on the number of candidate states generated over the whole
  /// horizon. Exceeding it raises BudgetExceeded; the solver never approximates.
  std::uint64_t node_budget = 200'000'000;
};

/// Offline clairvoyant optimum by forward dynamic programming over
/// last-service vectors. Only slots with at least one Good channel create
/// transitions; a state is discarded when another state at the same slot is
/// at least as fresh for every user and no more expensive. Among optimal
/// schedules the lexicographically smallest is returned, ordering decisions
/// Serve(0) < ... < Serve(N-1) < Idle. Serve decisions only target Good slots.
OptResult opt_exact(const ChannelTrace& trace, const AgeVector& initial_ages,
                    const OptOptions& options = {});

inline constexpr std::uint64_t kDefaultBruteForceBudget = 4'782'969;  // 3^14

/// Enumerates every one of the (N+1)^T decision sequences. Returns the
/// lexicographically smallest minimum-cost sequence that never serves a Bad
/// channel (serving a Bad channel costs the same as idling).
/// Throws BudgetExceeded when (N+1)^T exceeds `sequence_budget`.
OptResult brute_force_opt(const ChannelTrace& trace, const AgeVector& initial_ages,
                          std::uint64_t sequence_budget = kDefaultBruteForceBudget);

}  // namespace aoi
