#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>

#include "aoi/types.hpp"

namespace aoi {

enum class PolicyKind { MaCsit, MaxAge };

/// A per-slot decision rule. Rules that do not use CSIT are handed an empty
/// channel column by the simulator.
struct Policy {
  std::string name;
  bool uses_csit = false;
  std::function<Decision(std::span<const Age> ages, std::span<const ChannelState> column)>
      decide;
};

/// Serves the oldest user among those whose channel is Good in the current
/// slot; Idle when no channel is Good. Ties go to the lowest index.
Decision ma_csit_decide(std::span<const Age> ages, std::span<const ChannelState> column);

/// Serves the oldest user regardless of channel state. Ties go to the lowest index.
Decision max_age_decide(std::span<const Age> ages);

Policy make_policy(PolicyKind kind);

/// "ma-csit" or "max-age".
PolicyKind parse_policy_kind(std::string_view name);
std::string_view policy_name(PolicyKind kind);

}  // namespace aoi
