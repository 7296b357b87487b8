// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "aoi/adversary_search.hpp"
#include "aoi/analysis.hpp"
#include "aoi/channel_gen.hpp"
#include "aoi/experiments.hpp"
#include "aoi/opt_solver.hpp"

using namespace aoi;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int digits = 4) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

Outcome oracle_equivalence() {
  SplitMix64 seeds(20240601);
  std::size_t mismatches = 0, checked = 0;
  for (std::size_t k = 0; k < 1000; ++k) {
    const std::size_t n = k % 2 == 0 ? 2 : 3;
    const auto trace = gen_iid(0.5, n, 8, seeds.next());
    const auto init = AgeVector::ones(n);
    if (opt_exact(trace, init).cost != brute_force_opt(trace, init).cost) ++mismatches;
    ++checked;
  }
  return {mismatches == 0,
          std::to_string(checked) + " traces, " + std::to_string(mismatches) + " mismatches"};
}

Outcome exhaustive_bound(std::size_t n, std::size_t t, Ratio bound) {
  ExhaustiveOptions o;
  o.sequence_budget = std::uint64_t{1} << 24;
  const auto r = exhaustive_search(n, t, AgeVector::ones(n), o);
  const auto check = ratio_report(r.argmax_trace, PolicyKind::MaCsit, AgeVector::ones(n));
  const bool full = !r.sampled && r.sequences_examined == (std::uint64_t{1} << (n * t));
  return {full && r.best_ratio <= bound && check.ratio == r.best_ratio,
          "best " + r.best_ratio.str() + " (" + fmt(r.best_ratio.value()) + ") over " +
              std::to_string(r.sequences_examined) + " sequences, bound " + bound.str()};
}

Outcome sweep2_shape() {
  const auto r = run_ratio_sweep_2user({8, 16, 32, 64, 128}, 20);
  if (r.error || r.rows.size() != 5) return {false, "sweep incomplete"};
  bool monotone = true;
  std::string col;
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const double v = r.rows[i].ratio.value();
    col += (i ? ", " : "") + fmt(v);
    if (i && v < r.rows[i - 1].ratio.value() - 0.02) monotone = false;
  }
  const double last = r.rows.back().ratio.value();
  const double first = r.rows.front().ratio.value();
  const double target = 58.0 / 42.0;
  const bool ok = monotone && last >= 1.8 && last <= 2.0 &&
                  std::abs(first - target) <= 0.02 * target;
  return {ok, "ratios [" + col + "]"};
}

Outcome sweep3_shape() {
  std::vector<std::size_t> deltas;
  for (std::size_t d = 24; d <= 6144; d *= 2) deltas.push_back(d);
  const auto r = run_ratio_sweep_3user(deltas, 20);
  if (r.rows.empty()) return {false, "no rows"};
  bool bounded = true;
  for (const auto& row : r.rows) bounded = bounded && row.ratio <= Ratio(8, 3);
  const auto& top = r.rows.back();
  const double v = top.ratio.value();
  const bool ok = bounded && top.ratio >= Ratio(2, 1) && top.ratio <= Ratio(8, 3) &&
                  std::abs(v - 2.25) <= 0.15;
  return {ok, "largest delta " + std::to_string(top.delta) + " ratio " + fmt(v) +
                  (r.error ? " (stopped: " + *r.error + ")" : "")};
}

Outcome invariant_suite() {
  InvariantSuiteConfig c;  // 1000 x (N=2, T=50), 100 x (N=3, T=36), constructions
  const auto r = run_invariant_suite(c);
  std::size_t violations = 0;
  for (const auto& f : r.failures) violations += f.violations.size();
  return {r.passed(), std::to_string(r.cases_run) + " cases, " +
                          std::to_string(r.intervals_checked) + " intervals, " +
                          std::to_string(violations) + " violations, " +
                          std::to_string(r.notes.size()) + " first-interval notes"};
}

Outcome stochastic_ordering() {
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 1; s <= 50; ++s) seeds.push_back(s);
  const auto r = run_stochastic_compare({0.1, 0.3, 0.5}, 3, 10'000, seeds);
  bool ordered = true;
  std::string detail;
  for (const auto& s : r.summary) {
    ordered = ordered && s.mean_aoi_avg_ma_csit < s.mean_aoi_avg_max_age;
    detail += "p=" + fmt(s.p, 1) + " ratio " + fmt(s.mean_ratio) + "; ";
  }
  const bool trend = r.summary[0].mean_ratio > r.summary[2].mean_ratio;
  const auto degenerate = run_stochastic_compare({0.0, 1.0}, 3, 10'000, {1, 2, 3});
  bool unit = true;
  for (const auto& row : degenerate.rows) unit = unit && row.ratio == Ratio(1, 1);
  detail += std::string("p in {0,1} ratio ") + (unit ? "exactly 1" : "NOT 1");
  return {ordered && trend && unit, detail};
}

Outcome determinism() {
  auto csv = [](unsigned threads) {
    std::ostringstream os;
    write_sweep_csv(os, run_ratio_sweep_2user({8, 16, 32}, 20, {}, threads).rows);
    write_sweep_csv(os, run_ratio_sweep_3user({24, 48, 96}, 4, {}, threads).rows);
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
    const auto st = run_stochastic_compare({0.1, 0.5, 0.9}, 3, 2000, seeds, threads);
    write_stochastic_csv(os, st);
    write_stochastic_summary_csv(os, st);
    return os.str();
  };
  const std::string a = csv(0), b = csv(0), c = csv(1);
  return {a == b && a == c, std::to_string(a.size()) + " bytes, repeated and single-thread runs " +
                                (a == b && a == c ? "identical" : "differ")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"oracle equivalence (1000 traces, T=8)", oracle_equivalence},
      {"two-user bound (exhaustive N=2, T=10)", [] { return exhaustive_bound(2, 10, {2, 1}); }},
      {"three-user bound (exhaustive N=3, T=8)", [] { return exhaustive_bound(3, 8, {8, 3}); }},
      {"two-user sweep approaches 2", sweep2_shape},
      {"three-user sweep approaches 2.25", sweep3_shape},
      {"invariant suite", invariant_suite},
      {"stochastic comparison", stochastic_ordering},
      {"byte-identical CSV", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << ": "
              << o.detail << " (" << fmt(secs, 1) << "s)" << std::endl;
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
