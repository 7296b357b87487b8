#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "aoi/errors.hpp"
#include "aoi/simulate.hpp"
#include "aoi/trace_io.hpp"
#include "aoi/channel_gen.hpp"
#include "test_support.hpp"

using namespace aoi;

namespace {

std::vector<Decision> decisions(const SimTrace& sim) {
  std::vector<Decision> out;
  for (const auto& r : sim.records) out.push_back(r.decision);
  return out;
}

}  // namespace

TEST(ChannelTrace, RejectsBadDimensions) {
  EXPECT_THROW(ChannelTrace(0, 3), ConfigError);
  EXPECT_THROW(ChannelTrace(2, 0), ConfigError);
  EXPECT_THROW(ChannelTrace(2, 2, std::vector<ChannelState>(3)), ConfigError);
}

TEST(AgeVector, RejectsAgeBelowOne) {
  EXPECT_THROW(AgeVector({1, 0}), ParameterError);
  EXPECT_EQ(AgeVector::ones(3).sum(), 3);
}

TEST(Simulate, MaCsitExample) {
  const auto trace = ChannelTrace::from_rows({"GB", "BG", "GG", "BB"});
  const SimTrace sim = simulate(trace, PolicyKind::MaCsit, {1, 1});
  EXPECT_EQ(sim.total_cost, 11);
  const std::vector<Decision> expected{Decision::serve(0), Decision::serve(1), Decision::serve(0),
                                       Decision::idle()};
  EXPECT_EQ(decisions(sim), expected);
}

TEST(Simulate, AllBadRamp) {
  const auto trace = test::all_states(2, 3, ChannelState::Bad);
  for (auto kind : {PolicyKind::MaCsit, PolicyKind::MaxAge}) {
    const SimTrace sim = simulate(trace, kind, {1, 1});
    EXPECT_EQ(sim.total_cost, 12);
    for (const auto& r : sim.records) EXPECT_FALSE(r.success);
  }
}

TEST(Simulate, MaCsitBeatsMaxAgeOnExample) {
  const auto trace = ChannelTrace::from_rows({"BG", "GG", "BB", "GB"});
  EXPECT_EQ(simulate(trace, PolicyKind::MaCsit, {1, 1}).total_cost, 13);
  EXPECT_EQ(simulate(trace, PolicyKind::MaxAge, {1, 1}).total_cost, 16);
}

TEST(Simulate, DimensionMismatch) {
  const auto trace = ChannelTrace::from_rows({"GB"});
  EXPECT_THROW(simulate(trace, PolicyKind::MaCsit, {1, 1, 1}), ConfigError);
}

TEST(Simulate, FirstRecordHoldsInitialAges) {
  const auto trace = ChannelTrace::from_rows({"GG", "BB"});
  const SimTrace sim = simulate(trace, PolicyKind::MaCsit, {3, 5});
  EXPECT_EQ(sim.records.front().pre_ages, AgeVector({3, 5}));
  EXPECT_EQ(sim.records[1].pre_ages, AgeVector({4, 1}));
  EXPECT_EQ(sim.final_ages, AgeVector({5, 2}));
}

TEST(Replay, AllIdle) {
  const auto trace = ChannelTrace::from_rows({"GG", "GG"});
  Schedule s{{Decision::idle(), Decision::idle()}};
  EXPECT_EQ(replay(trace, s, {1, 1}).total_cost, 6);
}

TEST(Replay, MatchesSimulateExample) {
  const auto trace = ChannelTrace::from_rows({"GB", "BG", "GG", "BB"});
  Schedule s{{Decision::serve(0), Decision::serve(1), Decision::serve(0), Decision::idle()}};
  EXPECT_EQ(replay(trace, s, {1, 1}).total_cost, 11);
}

TEST(Replay, BadChannelServiceFails) {
  const auto trace = ChannelTrace::from_rows({"GB"});
  const SimTrace sim = replay(trace, Schedule{{Decision::serve(1)}}, {1, 1});
  EXPECT_EQ(sim.total_cost, 2);
  EXPECT_FALSE(sim.records[0].success);
  EXPECT_EQ(sim.final_ages, AgeVector({2, 2}));
}

TEST(Replay, LengthMismatch) {
  const auto trace = ChannelTrace::from_rows({"GB", "GB"});
  EXPECT_THROW(replay(trace, Schedule{{Decision::idle()}}, {1, 1}), ConfigError);
}

TEST(Replay, ServedIndexOutOfRange) {
  const auto trace = ChannelTrace::from_rows({"GB"});
  EXPECT_THROW(replay(trace, Schedule{{Decision::serve(2)}}, {1, 1}), ConfigError);
}

TEST(AverageAoi, Arithmetic) {
  const auto bad3 = test::all_states(2, 3, ChannelState::Bad);
  EXPECT_EQ(average_aoi(simulate(bad3, PolicyKind::MaCsit, {1, 1})), Ratio(4, 1));
  const auto ex = ChannelTrace::from_rows({"GB", "BG", "GG", "BB"});
  EXPECT_DOUBLE_EQ(average_aoi(simulate(ex, PolicyKind::MaCsit, {1, 1})).value(), 2.75);
  const auto bad1 = test::all_states(1, 4, ChannelState::Bad);
  EXPECT_EQ(average_aoi(simulate(bad1, PolicyKind::MaCsit, {1})), Ratio(5, 2));
}

// Random traces checked against the SimTrace invariants and a reference.
TEST(SimulateProperty, InvariantsOnRandomTraces) {
  std::mt19937_64 rng(2024);
  for (int iter = 0; iter < 300; ++iter) {
    const std::size_t n = 1 + rng() % 4, t = 1 + rng() % 30;
    const auto trace = test::random_trace(rng, n, t, 0.4);
    std::vector<Age> init(n);
    for (auto& a : init) a = 1 + static_cast<Age>(rng() % 5);
    for (auto kind : {PolicyKind::MaCsit, PolicyKind::MaxAge}) {
      const SimTrace sim = simulate(trace, kind, AgeVector(init));
      ASSERT_EQ(sim.horizon(), t);
      EXPECT_GE(sim.total_cost, static_cast<Cost>(n * t));
      Cost sum = 0;
      for (std::size_t k = 0; k < t; ++k) {
        const auto& r = sim.records[k];
        EXPECT_EQ(r.slot, k + 1);
        EXPECT_EQ(r.slot_cost, r.pre_ages.sum());
        sum += r.slot_cost;
        EXPECT_EQ(r.success, r.decision.is_serve() && trace.good(k, r.decision.user()));
        const AgeVector& next = sim.ages_at(k + 2);
        std::size_t resets = 0;
        for (std::size_t u = 0; u < n; ++u) {
          const bool served = r.success && r.decision.user() == u;
          EXPECT_EQ(next[u], served ? 1 : r.pre_ages[u] + 1);
          resets += served;
        }
        EXPECT_LE(resets, 1u);
      }
      EXPECT_EQ(sum, sim.total_cost);
      EXPECT_EQ(simulate_cost(trace, kind, AgeVector(init)), sim.total_cost);
      EXPECT_EQ(simulate(trace, kind, AgeVector(init)).total_cost, sim.total_cost);
    }
    EXPECT_EQ(simulate(trace, PolicyKind::MaCsit, AgeVector(init)).total_cost,
              test::reference_ma_csit(trace, init));
  }
}

TEST(TraceIo, RoundTrip) {
  const auto trace = gen_adversarial_2user(4, 1);
  std::stringstream ss;
  write_trace(ss, trace);
  EXPECT_EQ(ss.str(), "2 4\nGB\nGG\nBG\nGG\n");
  EXPECT_EQ(parse_trace(ss), trace);
}

TEST(TraceIo, RoundTripRandom) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const auto trace = test::random_trace(rng, 1 + rng() % 5, 1 + rng() % 40);
    std::stringstream ss;
    write_trace(ss, trace);
    EXPECT_EQ(parse_trace(ss), trace);
  }
}

TEST(TraceIo, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "aoi_trace_io_test.txt";
  const auto trace = gen_adversarial_3user(24, 2);
  save_trace(trace, path);
  EXPECT_EQ(load_trace(path), trace);
  std::filesystem::remove(path);
  EXPECT_THROW(load_trace(path), Error);
}

namespace {

std::size_t parse_error_line(const std::string& text) {
  std::istringstream in(text);
  try {
    parse_trace(in);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(TraceIo, ParseErrorsNameTheLine) {
  EXPECT_EQ(parse_error_line("2 2\nGB\nGX\n"), 3u);
  EXPECT_EQ(parse_error_line("2 3\nGB\nGB\nGB\nGB\n"), 5u);
  EXPECT_EQ(parse_error_line("2 3\nGB\nGB\n"), 4u);
  EXPECT_EQ(parse_error_line("2 2\nGB\nGBB\n"), 3u);
  EXPECT_EQ(parse_error_line("two 2\nGB\n"), 1u);
  EXPECT_EQ(parse_error_line("0 2\n"), 1u);
  EXPECT_EQ(parse_error_line(""), 1u);
}

TEST(TraceIo, ToleratesCrlfAndTrailingBlankLines) {
  std::istringstream in("2 2\r\nGB\r\nBG\r\n\n\n");
  EXPECT_EQ(parse_trace(in), ChannelTrace::from_rows({"GB", "BG"}));
}

TEST(ScheduleIo, RoundTrip) {
  Schedule s{{Decision::serve(0), Decision::idle(), Decision::serve(2)}};
  std::stringstream ss;
  write_schedule(ss, s);
  EXPECT_EQ(ss.str(), "0\n-\n2\n");
  EXPECT_EQ(parse_schedule(ss), s);
}
