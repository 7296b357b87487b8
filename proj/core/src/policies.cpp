#include "aoi/policies.hpp"

#include <string>

#include "aoi/errors.hpp"

namespace aoi {

Decision ma_csit_decide(std::span<const Age> ages, std::span<const ChannelState> column) {
  Decision best = Decision::idle();
  Age best_age = 0;
  for (UserIndex i = 0; i < ages.size(); ++i) {
    if (column[i] != ChannelState::Good) continue;
    if (best.is_idle() || ages[i] > best_age) {
      best = Decision::serve(i);
      best_age = ages[i];
    }
  }
  return best;
}

Decision max_age_decide(std::span<const Age> ages) {
  UserIndex best = 0;
  for (UserIndex i = 1; i < ages.size(); ++i)
    if (ages[i] > ages[best]) best = i;
  return Decision::serve(best);
}

Policy make_policy(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::MaCsit:
      return {"ma-csit", true, [](std::span<const Age> a, std::span<const ChannelState> c) {
                return ma_csit_decide(a, c);
              }};
    case PolicyKind::MaxAge:
      return {"max-age", false,
              [](std::span<const Age> a, std::span<const ChannelState>) {
                return max_age_decide(a);
              }};
  }
  throw ParameterError("unknown policy kind");
}

PolicyKind parse_policy_kind(std::string_view name) {
  if (name == "ma-csit") return PolicyKind::MaCsit;
  if (name == "max-age") return PolicyKind::MaxAge;
  throw ParameterError("unknown policy '" + std::string(name) + "' (expected ma-csit or max-age)");
}

std::string_view policy_name(PolicyKind kind) {
  return kind == PolicyKind::MaCsit ? "ma-csit" : "max-age";
}

}  // namespace aoi
