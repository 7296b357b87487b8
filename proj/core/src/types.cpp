#include "aoi/types.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "aoi/errors.hpp"

namespace aoi {

ChannelTrace::ChannelTrace(std::size_t num_users, std::size_t horizon)
    : ChannelTrace(num_users, horizon,
                   std::vector<ChannelState>(num_users * horizon, ChannelState::Bad)) {}

ChannelTrace::ChannelTrace(std::size_t num_users, std::size_t horizon,
                           std::vector<ChannelState> states)
    : num_users_(num_users), horizon_(horizon), states_(std::move(states)) {
  if (num_users_ == 0) throw ConfigError("channel trace needs at least one user");
  if (horizon_ == 0) throw ConfigError("channel trace needs at least one slot");
  if (states_.size() != num_users_ * horizon_)
    throw ConfigError("channel trace has " + std::to_string(states_.size()) +
                      " states, expected " + std::to_string(num_users_ * horizon_));
}

namespace {

template <typename Rows>
ChannelTrace trace_from_rows(const Rows& rows) {
  if (rows.size() == 0) throw ConfigError("channel trace needs at least one slot");
  const std::size_t n = std::begin(rows)->size();
  std::vector<ChannelState> states;
  states.reserve(n * rows.size());
  for (const auto& row : rows) {
    if (row.size() != n) throw ConfigError("channel rows differ in length");
    for (char c : row) {
      if (c == 'G') {
        states.push_back(ChannelState::Good);
      } else if (c == 'B') {
        states.push_back(ChannelState::Bad);
      } else {
        throw ConfigError(std::string("invalid channel symbol '") + c + "'");
      }
    }
  }
  return ChannelTrace(n, rows.size(), std::move(states));
}

}  // namespace

ChannelTrace ChannelTrace::from_rows(std::initializer_list<std::string_view> rows) {
  return trace_from_rows(rows);
}

ChannelTrace ChannelTrace::from_rows(const std::vector<std::string>& rows) {
  return trace_from_rows(rows);
}

void ChannelTrace::flip(std::size_t slot_index, UserIndex user) {
  auto& s = states_[slot_index * num_users_ + user];
  s = s == ChannelState::Good ? ChannelState::Bad : ChannelState::Good;
}

bool ChannelTrace::any_good(std::size_t slot_index) const {
  const auto col = column(slot_index);
  return std::any_of(col.begin(), col.end(),
                     [](ChannelState s) { return s == ChannelState::Good; });
}

AgeVector::AgeVector(std::vector<Age> ages) : ages_(std::move(ages)) {
  for (Age a : ages_)
    if (a < 1) throw ParameterError("ages must be >= 1, got " + std::to_string(a));
}

Cost AgeVector::sum() const { return std::accumulate(ages_.begin(), ages_.end(), Cost{0}); }

}  // namespace aoi
