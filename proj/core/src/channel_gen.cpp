#include "aoi/channel_gen.hpp"

#include <cmath>
#include <initializer_list>
#include <string>

#include "aoi/errors.hpp"
#include "aoi/trace_io.hpp"

namespace aoi {

namespace {

void check_periods(std::size_t periods) {
  if (periods == 0) throw ParameterError("periods must be >= 1");
}

// Marks `users` (0-based) Good at 1-based `slot` of every period.
void mark(ChannelTrace& trace, std::size_t delta, std::size_t periods, std::size_t slot,
          std::initializer_list<UserIndex> users) {
  for (std::size_t p = 0; p < periods; ++p)
    for (UserIndex u : users) trace.set(p * delta + slot - 1, u, ChannelState::Good);
}

}  // namespace

ChannelTrace gen_adversarial_2user(std::size_t delta, std::size_t periods) {
  if (delta < 4 || delta % 2 != 0)
    throw ParameterError("two-user construction needs an even delta >= 4, got " +
                         std::to_string(delta));
  check_periods(periods);
  ChannelTrace trace(2, delta * periods);
  const std::size_t half = delta / 2;
  mark(trace, delta, periods, 1, {0});
  mark(trace, delta, periods, half, {0, 1});
  mark(trace, delta, periods, half + 1, {1});
  mark(trace, delta, periods, delta, {0, 1});
  return trace;
}

ChannelTrace gen_adversarial_3user(std::size_t delta, std::size_t periods) {
  if (delta % 6 != 0)
    throw ParameterError("three-user construction needs delta to be a multiple of 6, got " +
                         std::to_string(delta));
  if (delta < 24)
    throw ParameterError("three-user construction needs delta >= 24 (slot indices collide), got " +
                         std::to_string(delta));
  check_periods(periods);
  ChannelTrace trace(3, delta * periods);
  const std::size_t d6 = delta / 6;
  const std::size_t d3 = delta / 3;
  const std::size_t d2 = delta / 2;
  const std::size_t d23 = 2 * delta / 3;
  const std::size_t d56 = 5 * delta / 6;
  mark(trace, delta, periods, 1, {0, 1});
  mark(trace, delta, periods, 2, {0});
  mark(trace, delta, periods, 3, {2});
  mark(trace, delta, periods, d6, {0, 2});
  mark(trace, delta, periods, d6 + 1, {0});
  mark(trace, delta, periods, d3 + 1, {1, 2});
  mark(trace, delta, periods, d3 + 2, {1});
  mark(trace, delta, periods, d3 + 3, {0});
  mark(trace, delta, periods, d2, {0, 1});
  mark(trace, delta, periods, d2 + 1, {1});
  mark(trace, delta, periods, d23 + 1, {0, 2});
  mark(trace, delta, periods, d23 + 2, {2});
  mark(trace, delta, periods, d23 + 3, {1});
  mark(trace, delta, periods, d56, {1, 2});
  mark(trace, delta, periods, d56 + 1, {2});
  return trace;
}

ChannelTrace gen_iid(double p, std::size_t num_users, std::size_t horizon, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0))
    throw ParameterError("probability must lie in [0, 1], got " + std::to_string(p));
  ChannelTrace trace(num_users, horizon);
  SplitMix64 rng(seed);
  for (std::size_t k = 0; k < horizon; ++k)
    for (UserIndex i = 0; i < num_users; ++i)
      if (rng.next_unit() < p) trace.set(k, i, ChannelState::Good);
  return trace;
}

ChannelTrace generate(const GenSpec& spec) {
  struct Visitor {
    ChannelTrace operator()(const Adversarial2& s) const {
      return gen_adversarial_2user(s.delta, s.periods);
    }
    ChannelTrace operator()(const Adversarial3& s) const {
      return gen_adversarial_3user(s.delta, s.periods);
    }
    ChannelTrace operator()(const Iid& s) const {
      return gen_iid(s.p, s.num_users, s.horizon, s.seed);
    }
    ChannelTrace operator()(const FromFile& s) const { return load_trace(s.path); }
  };
  return std::visit(Visitor{}, spec);
}

}  // namespace aoi
