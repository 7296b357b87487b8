#pragma once

#include "aoi/policies.hpp"
#include "aoi/rational.hpp"
#include "aoi/types.hpp"

namespace aoi {

// Cost convention: a slot costs the sum of the ages observed at the start of
// the slot. A successful service at slot t sets that user's age to 1 at t+1.

/// Runs `policy` over `trace`, consulting it once per slot.
/// Throws ConfigError when `initial_ages` does not have one entry per user.
SimTrace simulate(const ChannelTrace& trace, const Policy& policy, const AgeVector& initial_ages);
SimTrace simulate(const ChannelTrace& trace, PolicyKind kind, const AgeVector& initial_ages);

/// Evaluates a fixed decision sequence. Serving a Bad channel fails silently.
SimTrace replay(const ChannelTrace& trace, const Schedule& schedule,
                const AgeVector& initial_ages);

/// total_cost / T.
Ratio average_aoi(const SimTrace& sim);

/// Total cost only; same semantics as simulate() without the record keeping.
Cost simulate_cost(const ChannelTrace& trace, PolicyKind kind, const AgeVector& initial_ages);

}  // namespace aoi
