#include "aoi/experiments.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "aoi/channel_gen.hpp"
#include "aoi/errors.hpp"
#include "aoi/simulate.hpp"

#ifndef AOI_VERSION
#define AOI_VERSION "0.0.0"
#endif

namespace aoi {

const char* tool_version() { return AOI_VERSION; }

namespace {

std::string fixed(double v, int digits = 10) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

std::string shortest(double v) {
  std::ostringstream os;
  os << std::setprecision(15) << v;
  return os.str();
}

template <typename Gen>
SweepResult run_sweep(std::vector<std::size_t> deltas, std::size_t periods, const OptOptions& opt,
                      unsigned threads, Gen&& gen) {
  std::sort(deltas.begin(), deltas.end());
  deltas.erase(std::unique(deltas.begin(), deltas.end()), deltas.end());
  // Validate every cell before doing any work.
  std::vector<ChannelTrace> traces;
  traces.reserve(deltas.size());
  for (std::size_t d : deltas) traces.push_back(gen(d, periods));

  std::vector<std::optional<SweepRow>> cells(deltas.size());
  std::vector<std::optional<std::string>> errors(deltas.size());
  const AgeVector init = AgeVector::ones(traces.empty() ? 1 : traces.front().num_users());
  parallel_for(deltas.size(), threads, [&](std::size_t i) {
    try {
      SweepRow row;
      row.delta = deltas[i];
      row.periods = periods;
      row.horizon = traces[i].horizon();
      row.cost_ma_csit = simulate_cost(traces[i], PolicyKind::MaCsit, init);
      row.cost_opt = opt_exact(traces[i], init, opt).cost;
      row.ratio = Ratio(row.cost_ma_csit, row.cost_opt);
      cells[i] = row;
    } catch (const BudgetExceeded& e) {
      errors[i] = "delta " + std::to_string(deltas[i]) + ": " + e.what();
    }
  });

  SweepResult result;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (cells[i]) result.rows.push_back(*cells[i]);
    if (errors[i] && !result.error) result.error = errors[i];
  }
  return result;
}

}  // namespace

SweepResult run_ratio_sweep_2user(const std::vector<std::size_t>& deltas, std::size_t periods,
                                  const OptOptions& opt, unsigned threads) {
  return run_sweep(deltas, periods, opt, threads, gen_adversarial_2user);
}

SweepResult run_ratio_sweep_3user(const std::vector<std::size_t>& deltas, std::size_t periods,
                                  const OptOptions& opt, unsigned threads) {
  return run_sweep(deltas, periods, opt, threads, gen_adversarial_3user);
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "delta,periods,horizon,cost_ma_csit,cost_opt,ratio_num,ratio_den,ratio\n";
  for (const auto& r : rows)
    out << r.delta << ',' << r.periods << ',' << r.horizon << ',' << r.cost_ma_csit << ','
        << r.cost_opt << ',' << r.ratio.num() << ',' << r.ratio.den() << ','
        << fixed(r.ratio.value()) << '\n';
}

StochasticResult run_stochastic_compare(const std::vector<double>& ps, std::size_t num_users,
                                        std::size_t horizon,
                                        const std::vector<std::uint64_t>& seeds,
                                        unsigned threads) {
  for (double p : ps)
    if (!(p >= 0.0 && p <= 1.0))
      throw ParameterError("probability must lie in [0, 1], got " + shortest(p));
  if (num_users == 0 || horizon == 0) throw ParameterError("need at least one user and slot");
  if (seeds.empty()) throw ParameterError("need at least one seed");

  const AgeVector init = AgeVector::ones(num_users);
  StochasticResult result;
  result.rows.resize(ps.size() * seeds.size());
  parallel_for(result.rows.size(), threads, [&](std::size_t cell) {
    const double p = ps[cell / seeds.size()];
    const std::uint64_t seed = seeds[cell % seeds.size()];
    const ChannelTrace trace = gen_iid(p, num_users, horizon, seed);
    const auto t = static_cast<std::int64_t>(horizon);
    StochasticRow row;
    row.p = p;
    row.seed = seed;
    const Cost ma = simulate_cost(trace, PolicyKind::MaCsit, init);
    const Cost mx = simulate_cost(trace, PolicyKind::MaxAge, init);
    row.aoi_avg_ma_csit = Ratio(ma, t);
    row.aoi_avg_max_age = Ratio(mx, t);
    row.ratio = Ratio(mx, ma);
    result.rows[cell] = row;
  });

  for (std::size_t pi = 0; pi < ps.size(); ++pi) {
    StochasticSummary s;
    s.p = ps[pi];
    s.seeds = seeds.size();
    for (std::size_t si = 0; si < seeds.size(); ++si) {
      const auto& row = result.rows[pi * seeds.size() + si];
      s.mean_aoi_avg_ma_csit += row.aoi_avg_ma_csit.value();
      s.mean_aoi_avg_max_age += row.aoi_avg_max_age.value();
      s.mean_ratio += row.ratio.value();
    }
    const auto count = static_cast<double>(seeds.size());
    s.mean_aoi_avg_ma_csit /= count;
    s.mean_aoi_avg_max_age /= count;
    s.mean_ratio /= count;
    result.summary.push_back(s);
  }
  return result;
}

void write_stochastic_csv(std::ostream& out, const StochasticResult& result) {
  out << "p,seed,aoi_avg_ma_csit,aoi_avg_max_age,ratio\n";
  for (const auto& r : result.rows)
    out << shortest(r.p) << ',' << r.seed << ',' << fixed(r.aoi_avg_ma_csit.value()) << ','
        << fixed(r.aoi_avg_max_age.value()) << ',' << fixed(r.ratio.value()) << '\n';
}

void write_stochastic_summary_csv(std::ostream& out, const StochasticResult& result) {
  out << "p,seeds,mean_aoi_avg_ma_csit,mean_aoi_avg_max_age,mean_ratio\n";
  for (const auto& s : result.summary)
    out << shortest(s.p) << ',' << s.seeds << ',' << fixed(s.mean_aoi_avg_ma_csit) << ','
        << fixed(s.mean_aoi_avg_max_age) << ',' << fixed(s.mean_ratio) << '\n';
}

std::vector<Violation> check_all_invariants(const ChannelTrace& trace, Ratio* ratio_out,
                                            std::size_t* intervals_out,
                                            std::vector<std::string>* notes_out,
                                            const OptOptions& opt, bool corrupt) {
  const std::size_t n = trace.num_users();
  const AgeVector init = AgeVector::ones(n);
  const SimTrace ma = simulate(trace, PolicyKind::MaCsit, init);
  const OptResult best = opt_exact(trace, init, opt);
  SimTrace opt_trace = best.trace;
  const auto intervals = decompose_intervals(trace, ma);

  if (corrupt) {
    for (const auto& iv : intervals) {
      if (!iv.complete || iv.length < 3) continue;
      auto& rec = opt_trace.records[iv.start_slot];  // second slot of the interval
      std::vector<Age> ages(rec.pre_ages.begin(), rec.pre_ages.end());
      ages[iv.max_age_user] += 1;
      rec.pre_ages = AgeVector(std::move(ages));
      break;
    }
  }

  std::vector<Violation> out;
  auto append = [&](std::vector<Violation> v) { out.insert(out.end(), v.begin(), v.end()); };
  append(check_lemma1(ma, opt_trace, intervals));
  append(check_residue_bound(ma, opt_trace, intervals));
  if (n == 2) append(check_lemma2(ma, opt_trace, intervals));
  if (n == 2 || n == 3) {
    auto ineq = check_interval_inequalities(ma, opt_trace, intervals);
    append(std::move(ineq.violations));
    if (notes_out) notes_out->insert(notes_out->end(), ineq.notes.begin(), ineq.notes.end());
  }

  const Ratio ratio(ma.total_cost, best.cost);
  if (n == 2 && ratio > Ratio(2, 1))
    out.push_back({"ratio-bound-2", 0, 0, "ratio " + ratio.str() + " > 2"});
  if (n == 3 && ratio > Ratio(8, 3))
    out.push_back({"ratio-bound-3", 0, 0, "ratio " + ratio.str() + " > 8/3"});

  if (ratio_out) *ratio_out = ratio;
  if (intervals_out)
    *intervals_out = static_cast<std::size_t>(
        std::count_if(intervals.begin(), intervals.end(), [](const Interval& iv) {
          return iv.complete;
        }));
  return out;
}

InvariantSuiteReport run_invariant_suite(const InvariantSuiteConfig& config) {
  if (!(config.p >= 0.0 && config.p <= 1.0))
    throw ParameterError("probability must lie in [0, 1], got " + shortest(config.p));
  if (config.n2_horizon == 0 || config.n3_horizon == 0)
    throw ParameterError("suite horizons must be >= 1");

  struct Case {
    std::string name;
    ChannelTrace trace;
    bool corrupt = false;
  };
  std::vector<Case> cases;
  SplitMix64 seeds(config.seed);
  for (std::size_t k = 0; k < config.n2_traces; ++k) {
    const std::uint64_t s = seeds.next();
    cases.push_back({"iid-n2-" + std::to_string(k) + "-seed" + std::to_string(s),
                     gen_iid(config.p, 2, config.n2_horizon, s)});
  }
  for (std::size_t k = 0; k < config.n3_traces; ++k) {
    const std::uint64_t s = seeds.next();
    cases.push_back({"iid-n3-" + std::to_string(k) + "-seed" + std::to_string(s),
                     gen_iid(config.p, 3, config.n3_horizon, s)});
  }
  if (config.include_constructions) {
    for (std::size_t delta : {4, 6, 8, 12, 16, 32, 64})
      cases.push_back({"adv2-delta" + std::to_string(delta) + "x5",
                       gen_adversarial_2user(delta, 5)});
    for (std::size_t delta : {24, 30, 36, 48, 72, 96})
      cases.push_back({"adv3-delta" + std::to_string(delta) + "x4",
                       gen_adversarial_3user(delta, 4)});
  }
  if (config.corrupt_fixture)
    cases.push_back({"corrupted-opt-fixture", gen_adversarial_2user(8, 3), true});

  struct Outcome {
    std::vector<Violation> violations;
    std::vector<std::string> notes;
    Ratio ratio{1, 1};
    std::size_t intervals = 0;
  };
  std::vector<Outcome> outcomes(cases.size());
  parallel_for(cases.size(), config.threads, [&](std::size_t i) {
    auto& o = outcomes[i];
    o.violations = check_all_invariants(cases[i].trace, &o.ratio, &o.intervals, &o.notes,
                                        config.opt, cases[i].corrupt);
  });

  InvariantSuiteReport report;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& o = outcomes[i];
    ++report.cases_run;
    report.intervals_checked += o.intervals;
    const std::size_t n = cases[i].trace.num_users();
    if (n == 2) report.max_ratio_2user = std::max(report.max_ratio_2user, o.ratio);
    if (n == 3) report.max_ratio_3user = std::max(report.max_ratio_3user, o.ratio);
    for (const auto& note : o.notes) report.notes.push_back(cases[i].name + ": " + note);
    if (!o.violations.empty())
      report.failures.push_back({cases[i].name, cases[i].trace, o.violations});
  }
  return report;
}

}  // namespace aoi
