#pragma once

// Domain types shared by every module. Slot numbers exposed to users are
// 1-based (slot t = 1..T); container indices are 0-based. User indices are
// 0-based everywhere.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

namespace aoi {

using Age = std::int64_t;
using Cost = std::int64_t;
using UserIndex = std::size_t;

enum class ChannelState : std::uint8_t { Bad = 0, Good = 1 };

inline char to_char(ChannelState s) { return s == ChannelState::Good ? 'G' : 'B'; }

/// T x N matrix of Good/Bad states chosen by the adversary (or the coin).
class ChannelTrace {
 public:
  /// All-Bad trace.
  ChannelTrace(std::size_t num_users, std::size_t horizon);
  /// `states` is row-major: slot index major, user index minor.
  ChannelTrace(std::size_t num_users, std::size_t horizon, std::vector<ChannelState> states);

  /// Builds a trace from rows such as {"GB", "BG"}; convenient in tests.
  static ChannelTrace from_rows(std::initializer_list<std::string_view> rows);
  static ChannelTrace from_rows(const std::vector<std::string>& rows);

  std::size_t num_users() const { return num_users_; }
  std::size_t horizon() const { return horizon_; }

  ChannelState at(std::size_t slot_index, UserIndex user) const {
    return states_[slot_index * num_users_ + user];
  }
  bool good(std::size_t slot_index, UserIndex user) const {
    return at(slot_index, user) == ChannelState::Good;
  }
  void set(std::size_t slot_index, UserIndex user, ChannelState s) {
    states_[slot_index * num_users_ + user] = s;
  }
  void flip(std::size_t slot_index, UserIndex user);

  std::span<const ChannelState> column(std::size_t slot_index) const {
    return {states_.data() + slot_index * num_users_, num_users_};
  }
  bool any_good(std::size_t slot_index) const;

  const std::vector<ChannelState>& states() const { return states_; }

  friend bool operator==(const ChannelTrace&, const ChannelTrace&) = default;

 private:
  std::size_t num_users_;
  std::size_t horizon_;
  std::vector<ChannelState> states_;
};

/// Per-user ages; every component is at least 1.
class AgeVector {
 public:
  AgeVector() = default;
  explicit AgeVector(std::vector<Age> ages);
  AgeVector(std::initializer_list<Age> ages) : AgeVector(std::vector<Age>(ages)) {}

  static AgeVector ones(std::size_t n) { return AgeVector(std::vector<Age>(n, 1)); }

  std::size_t size() const { return ages_.size(); }
  Age operator[](std::size_t i) const { return ages_[i]; }
  std::span<const Age> values() const { return ages_; }
  auto begin() const { return ages_.begin(); }
  auto end() const { return ages_.end(); }
  Cost sum() const;

  friend bool operator==(const AgeVector&, const AgeVector&) = default;

 private:
  std::vector<Age> ages_;
};

class Decision {
 public:
  constexpr Decision() = default;
  static constexpr Decision idle() { return Decision(); }
  static constexpr Decision serve(UserIndex user) { return Decision(user); }

  constexpr bool is_idle() const { return user_ == kIdle; }
  constexpr bool is_serve() const { return user_ != kIdle; }
  constexpr UserIndex user() const { return user_; }

  /// Position in the tie-break order Serve(0) < Serve(1) < ... < Idle.
  constexpr std::size_t order_key() const { return user_; }

  friend constexpr bool operator==(const Decision&, const Decision&) = default;

 private:
  static constexpr UserIndex kIdle = std::numeric_limits<UserIndex>::max();
  constexpr explicit Decision(UserIndex user) : user_(user) {}
  UserIndex user_ = kIdle;
};

struct SlotRecord {
  std::size_t slot = 0;  // 1-based
  AgeVector pre_ages;
  Decision decision;
  bool success = false;
  Cost slot_cost = 0;
};

struct SimTrace {
  std::vector<SlotRecord> records;
  Cost total_cost = 0;
  AgeVector final_ages;  // ages at slot T+1, after the last slot's service

  std::size_t horizon() const { return records.size(); }
  /// Ages observed at 1-based slot t, for t in [1, T+1].
  const AgeVector& ages_at(std::size_t slot) const {
    return slot <= records.size() ? records[slot - 1].pre_ages : final_ages;
  }
};

struct Schedule {
  std::vector<Decision> decisions;

  std::size_t size() const { return decisions.size(); }
  friend bool operator==(const Schedule&, const Schedule&) = default;
};

}  // namespace aoi
