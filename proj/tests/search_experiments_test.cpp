#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "aoi/adversary_search.hpp"
#include "aoi/analysis.hpp"
#include "aoi/channel_gen.hpp"
#include "aoi/errors.hpp"
#include "aoi/experiments.hpp"
#include "aoi/simulate.hpp"
#include "test_support.hpp"

using namespace aoi;

namespace {

// Every trace decoded from its code (slot 1 most significant, user i at bit i)
// and scored with the test-local oracles; returns the first maximiser.
std::pair<Ratio, std::uint64_t> naive_max(std::size_t n, std::size_t t) {
  Ratio best(0, 1);
  std::uint64_t arg = 0;
  const std::vector<std::int64_t> ones(n, 1);
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << (n * t)); ++code) {
    ChannelTrace trace(n, t);
    for (std::size_t k = 0; k < t; ++k)
      for (std::size_t u = 0; u < n; ++u)
        if ((code >> ((t - 1 - k) * n + u)) & 1) trace.set(k, u, ChannelState::Good);
    const Ratio r(test::reference_ma_csit(trace, ones), test::reference_opt(trace, ones));
    if (r > best) {
      best = r;
      arg = code;
    }
  }
  return {best, arg};
}

ChannelTrace decode(std::uint64_t code, std::size_t n, std::size_t t) {
  ChannelTrace trace(n, t);
  for (std::size_t k = 0; k < t; ++k)
    for (std::size_t u = 0; u < n; ++u)
      if ((code >> ((t - 1 - k) * n + u)) & 1) trace.set(k, u, ChannelState::Good);
  return trace;
}

}  // namespace

TEST(Exhaustive, SingleSlotRatioOne) {
  const auto r = exhaustive_search(2, 1, AgeVector::ones(2));
  EXPECT_EQ(r.best_ratio, Ratio(1, 1));
  EXPECT_EQ(r.sequences_examined, 4u);
  EXPECT_EQ(r.method, SearchMethod::Exhaustive);
}

TEST(Exhaustive, MatchesNaiveEnumeration) {
  for (auto [n, t] : std::vector<std::pair<std::size_t, std::size_t>>{
           {1, 6}, {2, 3}, {2, 5}, {2, 6}, {3, 2}, {3, 3}}) {
    const auto [ratio, code] = naive_max(n, t);
    ExhaustiveOptions o;
    o.threads = 2;
    const auto r = exhaustive_search(n, t, AgeVector::ones(n), o);
    EXPECT_EQ(r.best_ratio, ratio) << n << "x" << t;
    EXPECT_EQ(r.argmax_trace, decode(code, n, t)) << n << "x" << t;
    EXPECT_EQ(r.sequences_examined, std::uint64_t{1} << (n * t));
    EXPECT_FALSE(r.sampled);
  }
}

TEST(Exhaustive, ResultReverifies) {
  const auto r = exhaustive_search(2, 8, AgeVector::ones(2));
  const auto rep = ratio_report(r.argmax_trace, PolicyKind::MaCsit, AgeVector::ones(2));
  EXPECT_EQ(rep.ratio, r.best_ratio);
  EXPECT_EQ(rep.cost_policy, r.cost_ma_csit);
  EXPECT_EQ(rep.cost_opt, r.cost_opt);
  EXPECT_LE(r.best_ratio, Ratio(2, 1));
}

TEST(Exhaustive, ThreadCountDoesNotChangeResult) {
  ExhaustiveOptions one, four;
  one.threads = 1;
  four.threads = 4;
  const auto a = exhaustive_search(3, 4, AgeVector::ones(3), one);
  const auto b = exhaustive_search(3, 4, AgeVector::ones(3), four);
  EXPECT_EQ(a.best_ratio, b.best_ratio);
  EXPECT_EQ(a.argmax_trace, b.argmax_trace);
}

TEST(Exhaustive, NonUnitInitialAges) {
  const auto r = exhaustive_search(2, 4, AgeVector({3, 1}));
  const auto rep = ratio_report(r.argmax_trace, PolicyKind::MaCsit, AgeVector({3, 1}));
  EXPECT_EQ(rep.ratio, r.best_ratio);
}

TEST(Exhaustive, BudgetRefusalAndSampling) {
  ExhaustiveOptions o;
  o.sequence_budget = 1000;
  try {
    exhaustive_search(2, 10, AgeVector::ones(2), o);
    FAIL() << "expected refusal";
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.required(), 1u << 20);
  }
  o.sample = 5000;
  const auto sampled = exhaustive_search(2, 10, AgeVector::ones(2), o);
  EXPECT_TRUE(sampled.sampled);
  EXPECT_EQ(sampled.sequences_examined, 5000u);
  const auto full = exhaustive_search(2, 10, AgeVector::ones(2));
  // A bigger budget never lowers the evidence.
  EXPECT_LE(sampled.best_ratio, full.best_ratio);
  EXPECT_EQ(ratio_report(sampled.argmax_trace, PolicyKind::MaCsit, AgeVector::ones(2)).ratio,
            sampled.best_ratio);
  const auto again = exhaustive_search(2, 10, AgeVector::ones(2), o);
  EXPECT_EQ(again.argmax_trace, sampled.argmax_trace);
}

TEST(Exhaustive, InvalidArguments) {
  EXPECT_THROW(exhaustive_search(2, 3, AgeVector::ones(3)), ConfigError);
  EXPECT_THROW(exhaustive_search(0, 3, AgeVector{}), Error);
}

TEST(LocalSearch, NeverBeatsExhaustive) {
  const auto full = exhaustive_search(2, 10, AgeVector::ones(2));
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    LocalSearchOptions o;
    o.seed = seed;
    o.iterations = 200;
    const auto r = local_search(2, 10, AgeVector::ones(2), o);
    EXPECT_LE(r.best_ratio, full.best_ratio);
    EXPECT_EQ(r.method, SearchMethod::LocalSearch);
  }
}

TEST(LocalSearch, NoRegressionFromConstruction) {
  LocalSearchOptions o;
  o.seed = 7;
  o.iterations = 300;
  const auto r = local_search(2, 40, AgeVector::ones(2), o);
  for (std::size_t delta : {4u, 8u, 10u, 20u, 40u}) {
    const auto warm = ratio_report(gen_adversarial_2user(delta, 40 / delta), PolicyKind::MaCsit,
                                   AgeVector::ones(2));
    EXPECT_GE(r.best_ratio, warm.ratio) << delta;
  }
  EXPECT_EQ(ratio_report(r.argmax_trace, PolicyKind::MaCsit, AgeVector::ones(2)).ratio,
            r.best_ratio);
}

TEST(LocalSearch, ZeroIterationsReturnsBestWarmStart) {
  LocalSearchOptions o;
  o.seed = 3;
  o.iterations = 0;
  o.random_restarts = 0;
  const auto r = local_search(2, 16, AgeVector::ones(2), o);
  Ratio best(0, 1);
  for (std::size_t delta : {4u, 8u, 16u})
    best = std::max(best, ratio_report(gen_adversarial_2user(delta, 16 / delta),
                                       PolicyKind::MaCsit, AgeVector::ones(2))
                              .ratio);
  EXPECT_EQ(r.best_ratio, best);
}

TEST(LocalSearch, Deterministic) {
  LocalSearchOptions o;
  o.seed = 11;
  o.iterations = 100;
  const auto a = local_search(3, 12, AgeVector::ones(3), o);
  const auto b = local_search(3, 12, AgeVector::ones(3), o);
  EXPECT_EQ(a.best_ratio, b.best_ratio);
  EXPECT_EQ(a.argmax_trace, b.argmax_trace);
}

TEST(Sweep, TwoUserRows) {
  const auto r = run_ratio_sweep_2user({16, 8, 4}, 20);
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_FALSE(r.error);
  EXPECT_EQ(r.rows[0].delta, 4u);
  EXPECT_EQ(r.rows[1].delta, 8u);
  EXPECT_EQ(r.rows[1].cost_ma_csit, 1148);
  EXPECT_EQ(r.rows[1].cost_opt, 836);
  for (const auto& row : r.rows) {
    EXPECT_GE(row.ratio, Ratio(1, 1));
    EXPECT_LE(row.ratio, Ratio(2, 1));
    EXPECT_EQ(row.horizon, row.delta * 20);
  }
}

TEST(Sweep, ThreeUserTrend) {
  const auto r = run_ratio_sweep_3user({24, 48}, 4);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_GE(r.rows[0].ratio, Ratio(1, 1));
  EXPECT_LE(r.rows[0].ratio, Ratio(8, 3));
  EXPECT_GE(r.rows[1].ratio.value(), r.rows[0].ratio.value() - 0.05);
}

TEST(Sweep, ValidatesBeforeWork) {
  EXPECT_THROW(run_ratio_sweep_2user({8, 7}, 2), ParameterError);
  EXPECT_THROW(run_ratio_sweep_3user({24, 18}, 2), ParameterError);
}

// The DP state count does not grow with delta, so a budget that fails one
// cell fails them all; the sweep reports instead of throwing.
TEST(Sweep, BudgetFailureIsReported) {
  OptOptions o;
  o.node_budget = 100;
  const auto r = run_ratio_sweep_2user({4, 256}, 20, o);
  ASSERT_TRUE(r.error.has_value());
  EXPECT_NE(r.error->find("delta 4"), std::string::npos);
  EXPECT_TRUE(r.rows.empty());
  o.node_budget = 396;
  EXPECT_EQ(run_ratio_sweep_2user({4, 256}, 20, o).rows.size(), 2u);
}

TEST(Sweep, CsvIsStable) {
  const auto r = run_ratio_sweep_2user({8}, 20);
  std::ostringstream a;
  write_sweep_csv(a, r.rows);
  EXPECT_EQ(a.str(),
            "delta,periods,horizon,cost_ma_csit,cost_opt,ratio_num,ratio_den,ratio\n"
            "8,20,160,1148,836,287,209,1.3732057416\n");
}

TEST(Stochastic, DegenerateProbabilities) {
  const auto r = run_stochastic_compare({0.0, 1.0}, 3, 500, {1, 2, 3});
  ASSERT_EQ(r.rows.size(), 6u);
  for (const auto& row : r.rows) EXPECT_EQ(row.ratio, Ratio(1, 1));
  for (const auto& s : r.summary) EXPECT_EQ(s.mean_ratio, 1.0);
}

TEST(Stochastic, RowsOrderedAndDeterministic) {
  const auto a = run_stochastic_compare({0.3, 0.1}, 2, 300, {5, 9}, 3);
  const auto b = run_stochastic_compare({0.3, 0.1}, 2, 300, {5, 9}, 1);
  ASSERT_EQ(a.rows.size(), 4u);
  EXPECT_EQ(a.rows[0].p, 0.3);
  EXPECT_EQ(a.rows[1].seed, 9u);
  std::ostringstream sa, sb;
  write_stochastic_csv(sa, a);
  write_stochastic_csv(sb, b);
  EXPECT_EQ(sa.str(), sb.str());
  for (const auto& row : a.rows) {
    const auto trace = gen_iid(row.p, 2, 300, row.seed);
    EXPECT_EQ(row.aoi_avg_ma_csit,
              average_aoi(simulate(trace, PolicyKind::MaCsit, AgeVector::ones(2))));
    EXPECT_GE(row.ratio, Ratio(1, 1));
  }
}

TEST(Stochastic, RejectsBadProbability) {
  EXPECT_THROW(run_stochastic_compare({0.5, 1.2}, 2, 10, {1}), ParameterError);
  EXPECT_THROW(run_stochastic_compare({0.5}, 2, 10, {}), ParameterError);
}

TEST(InvariantSuite, SmallRunPasses) {
  InvariantSuiteConfig c;
  c.n2_traces = 50;
  c.n3_traces = 10;
  const auto r = run_invariant_suite(c);
  EXPECT_TRUE(r.passed());
  EXPECT_GT(r.intervals_checked, 0u);
  EXPECT_LE(r.max_ratio_2user, Ratio(2, 1));
  EXPECT_LE(r.max_ratio_3user, Ratio(8, 3));
}

TEST(InvariantSuite, CorruptedFixtureFailsWithNamedCheck) {
  InvariantSuiteConfig c;
  c.n2_traces = 0;
  c.n3_traces = 0;
  c.include_constructions = false;
  c.corrupt_fixture = true;
  const auto r = run_invariant_suite(c);
  ASSERT_FALSE(r.passed());
  ASSERT_EQ(r.failures.size(), 1u);
  EXPECT_EQ(r.failures[0].case_name, "corrupted-opt-fixture");
  EXPECT_EQ(r.failures[0].violations.at(0).check, "lemma1");
}
