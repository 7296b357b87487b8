#include "aoi/simulate.hpp"

#include <string>
#include <vector>

#include "aoi/errors.hpp"

namespace aoi {

namespace {

void check_dimensions(const ChannelTrace& trace, const AgeVector& initial_ages) {
  if (initial_ages.size() != trace.num_users())
    throw ConfigError("initial ages have " + std::to_string(initial_ages.size()) +
                      " entries but the trace has " + std::to_string(trace.num_users()) +
                      " users");
}

// Shared stepping loop; `choose(slot_index, ages)` returns the decision.
template <typename Choose>
SimTrace run(const ChannelTrace& trace, const AgeVector& initial_ages, Choose&& choose) {
  check_dimensions(trace, initial_ages);
  const std::size_t n = trace.num_users();
  std::vector<Age> ages(initial_ages.begin(), initial_ages.end());

  SimTrace out;
  out.records.reserve(trace.horizon());
  for (std::size_t k = 0; k < trace.horizon(); ++k) {
    SlotRecord rec;
    rec.slot = k + 1;
    rec.pre_ages = AgeVector(ages);
    rec.slot_cost = rec.pre_ages.sum();
    rec.decision = choose(k, std::span<const Age>(ages));
    if (rec.decision.is_serve() && rec.decision.user() >= n)
      throw ConfigError("decision serves user " + std::to_string(rec.decision.user()) +
                        " but the trace has " + std::to_string(n) + " users");
    rec.success = rec.decision.is_serve() && trace.good(k, rec.decision.user());
    for (auto& a : ages) ++a;
    if (rec.success) ages[rec.decision.user()] = 1;
    out.total_cost += rec.slot_cost;
    out.records.push_back(std::move(rec));
  }
  out.final_ages = AgeVector(std::move(ages));
  return out;
}

}  // namespace

SimTrace simulate(const ChannelTrace& trace, const Policy& policy, const AgeVector& initial_ages) {
  return run(trace, initial_ages, [&](std::size_t k, std::span<const Age> ages) {
    return policy.uses_csit ? policy.decide(ages, trace.column(k))
                            : policy.decide(ages, std::span<const ChannelState>{});
  });
}

SimTrace simulate(const ChannelTrace& trace, PolicyKind kind, const AgeVector& initial_ages) {
  return simulate(trace, make_policy(kind), initial_ages);
}

SimTrace replay(const ChannelTrace& trace, const Schedule& schedule,
                const AgeVector& initial_ages) {
  if (schedule.size() != trace.horizon())
    throw ConfigError("schedule has " + std::to_string(schedule.size()) +
                      " decisions but the trace has " + std::to_string(trace.horizon()) +
                      " slots");
  return run(trace, initial_ages,
             [&](std::size_t k, std::span<const Age>) { return schedule.decisions[k]; });
}

Ratio average_aoi(const SimTrace& sim) {
  if (sim.horizon() == 0) throw ParameterError("average AoI needs at least one slot");
  return Ratio(sim.total_cost, static_cast<std::int64_t>(sim.horizon()));
}

Cost simulate_cost(const ChannelTrace& trace, PolicyKind kind, const AgeVector& initial_ages) {
  check_dimensions(trace, initial_ages);
  std::vector<Age> ages(initial_ages.begin(), initial_ages.end());
  Cost total = 0;
  for (std::size_t k = 0; k < trace.horizon(); ++k) {
    Cost slot = 0;
    for (Age a : ages) slot += a;
    total += slot;
    const Decision d = kind == PolicyKind::MaCsit ? ma_csit_decide(ages, trace.column(k))
                                                  : max_age_decide(ages);
    for (auto& a : ages) ++a;
    if (d.is_serve() && trace.good(k, d.user())) ages[d.user()] = 1;
  }
  return total;
}

}  // namespace aoi
