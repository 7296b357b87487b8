#include "aoi/analysis.hpp"

#include <string>

#include "aoi/errors.hpp"
#include "aoi/simulate.hpp"
#include "json.hpp"

namespace aoi {

namespace {

// argmax over users other than `excluded`, lowest index on ties.
UserIndex argmax_age(const AgeVector& ages, std::optional<UserIndex> excluded = std::nullopt) {
  std::optional<UserIndex> best;
  for (UserIndex i = 0; i < ages.size(); ++i) {
    if (excluded && *excluded == i) continue;
    if (!best || ages[i] > ages[*best]) best = i;
  }
  return *best;
}

bool served(const SimTrace& trace, std::size_t slot, UserIndex user) {
  const auto& rec = trace.records[slot - 1];
  return rec.success && rec.decision.user() == user;
}

Cost interval_cost(const SimTrace& trace, std::size_t first, std::size_t last) {
  Cost c = 0;
  for (std::size_t t = first; t <= last; ++t) c += trace.records[t - 1].slot_cost;
  return c;
}

Cost triangle(std::int64_t k) { return k * (k + 1) / 2; }

void check_same_run(const SimTrace& ma_trace, const SimTrace& opt_trace) {
  if (ma_trace.horizon() != opt_trace.horizon() ||
      ma_trace.final_ages.size() != opt_trace.final_ages.size())
    throw ConfigError("MA-CSIT and OPT traces differ in horizon or user count");
  if (ma_trace.horizon() > 0 && ma_trace.records[0].pre_ages != opt_trace.records[0].pre_ages)
    throw ConfigError("MA-CSIT and OPT traces start from different ages");
}

void verify_ma_csit(const ChannelTrace& channels, const SimTrace& ma_trace) {
  if (ma_trace.horizon() != channels.horizon())
    throw IntegrityError("trace horizon differs from the channel trace");
  if (ma_trace.final_ages.size() != channels.num_users())
    throw IntegrityError("trace user count differs from the channel trace");
  for (std::size_t k = 0; k < channels.horizon(); ++k) {
    const auto& rec = ma_trace.records[k];
    const Decision expected = ma_csit_decide(rec.pre_ages.values(), channels.column(k));
    const bool success = expected.is_serve();
    if (rec.decision != expected || rec.success != success)
      throw IntegrityError("slot " + std::to_string(k + 1) +
                           ": decision is not the MA-CSIT decision");
    const AgeVector& next = ma_trace.ages_at(k + 2);
    for (UserIndex i = 0; i < channels.num_users(); ++i) {
      const Age want = success && expected.user() == i ? 1 : rec.pre_ages[i] + 1;
      if (next[i] != want)
        throw IntegrityError("slot " + std::to_string(k + 1) + ": age recursion broken");
    }
  }
}

}  // namespace

std::string_view case_name(ResidueCase c) {
  switch (c) {
    case ResidueCase::Case1:
      return "case1";
    case ResidueCase::Case2:
      return "case2";
    case ResidueCase::Case3:
      return "case3";
  }
  return "?";
}

ResidueCase classify_case(Age l_m, std::int64_t interval_prev, std::int64_t interval_prev2) {
  if (l_m <= interval_prev) return ResidueCase::Case1;
  if (l_m >= interval_prev2 + interval_prev) return ResidueCase::Case3;
  return ResidueCase::Case2;
}

std::vector<Interval> decompose_intervals(const ChannelTrace& channels, const SimTrace& ma_trace) {
  verify_ma_csit(channels, ma_trace);
  const std::size_t horizon = ma_trace.horizon();
  const std::size_t n = channels.num_users();

  std::vector<Interval> out;
  std::size_t start = 1;
  while (start <= horizon) {
    Interval iv;
    iv.index = out.size() + 1;
    iv.start_slot = start;
    iv.max_age_user = argmax_age(ma_trace.ages_at(start));
    iv.residue = iv.index == 1 ? 0 : ma_trace.ages_at(start)[iv.max_age_user] - 1;

    std::size_t end = start;
    while (end <= horizon && !served(ma_trace, end, iv.max_age_user)) ++end;
    iv.complete = end <= horizon;
    if (!iv.complete) end = horizon;
    iv.length = end - start + 1;
    {
      const AgeVector& after = ma_trace.ages_at(end + 1);
      iv.next_residue = after[argmax_age(after)] - 1;
    }

    if (n >= 3) {
      // Sub-intervals end when the 2nd max-age user is served; the interval's
      // last slot serves the max-age user instead.
      const std::size_t cut_limit = iv.complete ? end - 1 : end;
      std::size_t s0 = start;
      while (s0 <= end) {
        SubInterval sub;
        sub.start_slot = s0;
        sub.second_user = argmax_age(ma_trace.ages_at(s0), iv.max_age_user);
        sub.sub_residue = ma_trace.ages_at(s0)[sub.second_user] - 1;
        std::size_t e = s0;
        while (e <= cut_limit && !served(ma_trace, e, sub.second_user)) ++e;
        sub.closed_by_service = e <= cut_limit;
        if (!sub.closed_by_service) e = end;
        sub.length = e - s0 + 1;
        iv.sub_intervals.push_back(sub);
        s0 = e + 1;
      }
    }

    if (iv.index >= 2) {
      const auto prev = static_cast<std::int64_t>(out.back().length);
      const auto prev2 = iv.index >= 3 ? static_cast<std::int64_t>(out[out.size() - 2].length) : 0;
      iv.residue_case = classify_case(iv.residue, prev, prev2);
      if (*iv.residue_case == ResidueCase::Case1) {
        const auto& subs = out.back().sub_intervals;
        if (!subs.empty()) {
          iv.split_a = subs.back().sub_residue;
          iv.split_b = static_cast<Age>(subs.back().length);
        }
      } else {
        iv.needs_inspection = true;
      }
    }
    out.push_back(std::move(iv));
    start = end + 1;
  }
  return out;
}

std::vector<Violation> check_lemma1(const SimTrace& ma_trace, const SimTrace& opt_trace,
                                    const std::vector<Interval>& intervals) {
  check_same_run(ma_trace, opt_trace);
  std::vector<Violation> out;
  for (const auto& iv : intervals) {
    if (!iv.complete) continue;
    const UserIndex u = iv.max_age_user;
    const Age base = ma_trace.ages_at(iv.start_slot)[u] - opt_trace.ages_at(iv.start_slot)[u];
    for (std::size_t t = iv.start_slot + 1; t <= iv.end_slot(); ++t) {
      const Age diff = ma_trace.ages_at(t)[u] - opt_trace.ages_at(t)[u];
      if (diff != base)
        out.push_back({"lemma1", iv.index, t,
                       "max-age user " + std::to_string(u) + " difference " +
                           std::to_string(diff) + " != " + std::to_string(base)});
    }
  }
  return out;
}

std::vector<Violation> check_lemma2(const SimTrace& ma_trace, const SimTrace& opt_trace,
                                    const std::vector<Interval>& intervals) {
  check_same_run(ma_trace, opt_trace);
  if (ma_trace.final_ages.size() != 2)
    throw ScopeError("the non-max-age dominance check is stated for two users; got " +
                     std::to_string(ma_trace.final_ages.size()));
  std::vector<Violation> out;
  for (const auto& iv : intervals) {
    if (!iv.complete) continue;
    const UserIndex v = 1 - iv.max_age_user;
    for (std::size_t t = iv.start_slot; t <= iv.end_slot(); ++t) {
      const Age h = ma_trace.ages_at(t)[v];
      const Age o = opt_trace.ages_at(t)[v];
      if (h > o)
        out.push_back({"lemma2", iv.index, t,
                       "user " + std::to_string(v) + " MA-CSIT age " + std::to_string(h) +
                           " > OPT age " + std::to_string(o)});
    }
  }
  return out;
}

std::vector<Violation> check_residue_bound(const SimTrace& ma_trace, const SimTrace& opt_trace,
                                           const std::vector<Interval>& intervals) {
  check_same_run(ma_trace, opt_trace);
  std::vector<Violation> out;
  for (const auto& iv : intervals) {
    if (!iv.complete) continue;
    const UserIndex u = iv.max_age_user;
    const Age diff = ma_trace.ages_at(iv.start_slot)[u] - opt_trace.ages_at(iv.start_slot)[u];
    if (diff > iv.residue)
      out.push_back({"residue-bound", iv.index, iv.start_slot,
                     "difference " + std::to_string(diff) + " > residue " +
                         std::to_string(iv.residue)});
  }
  return out;
}

InequalityReport check_interval_inequalities(const SimTrace& ma_trace, const SimTrace& opt_trace,
                                             const std::vector<Interval>& intervals) {
  check_same_run(ma_trace, opt_trace);
  const std::size_t n = ma_trace.final_ages.size();
  if (n != 2 && n != 3)
    throw ScopeError("per-interval bounds exist for 2 or 3 users only; got " + std::to_string(n));

  InequalityReport report;
  for (const auto& iv : intervals) {
    if (!iv.complete) continue;
    const auto len = static_cast<std::int64_t>(iv.length);
    IntervalSlack slack;
    slack.interval = iv.index;
    slack.cost_policy = interval_cost(ma_trace, iv.start_slot, iv.end_slot());
    slack.cost_opt = interval_cost(opt_trace, iv.start_slot, iv.end_slot());

    Cost upper = slack.cost_opt + iv.residue * len;
    Cost lower = triangle(len);
    if (n == 2) {
      const Age next = iv.next_residue;
      lower += len - next + triangle(next);
    } else {
      const auto& subs = iv.sub_intervals;
      for (std::size_t j = 0; j < subs.size(); ++j) {
        const auto sub_len = static_cast<std::int64_t>(subs[j].length);
        upper += subs[j].sub_residue * sub_len;
        lower += triangle(sub_len);
        if (j + 1 < subs.size()) {
          const std::int64_t m = std::min<std::int64_t>(subs[j + 1].sub_residue, sub_len);
          lower += sub_len - m + triangle(m);
        } else {
          lower += sub_len;
        }
        // Third user never older under MA-CSIT than under OPT.
        UserIndex third = 0;
        while (third == iv.max_age_user || third == subs[j].second_user) ++third;
        for (std::size_t t = subs[j].start_slot; t <= subs[j].end_slot(); ++t) {
          const Age h = ma_trace.ages_at(t)[third];
          const Age o = opt_trace.ages_at(t)[third];
          if (h > o)
            report.violations.push_back(
                {"lemma2-sub", iv.index, t,
                 "third user " + std::to_string(third) + " MA-CSIT age " + std::to_string(h) +
                     " > OPT age " + std::to_string(o)});
        }
      }
      if (iv.split_a && iv.split_b && *iv.split_a + *iv.split_b != iv.residue)
        report.violations.push_back({"split", iv.index, 0,
                                     "a + b = " + std::to_string(*iv.split_a + *iv.split_b) +
                                         " != l = " + std::to_string(iv.residue)});
    }
    slack.upper_slack = upper - slack.cost_policy;
    slack.opt_lower_slack = slack.cost_opt - lower;

    const char* upper_name = n == 2 ? "upper-bound-2" : "upper-bound-3";
    if (slack.upper_slack < 0) {
      const std::string detail = "slack " + std::to_string(slack.upper_slack);
      if (iv.index == 1) {
        report.notes.push_back(std::string(upper_name) + " negative in first interval: " + detail);
      } else {
        report.violations.push_back({upper_name, iv.index, 0, detail});
      }
    }
    if (slack.opt_lower_slack < 0)
      report.violations.push_back(
          {"opt-lower-bound", iv.index, 0, "slack " + std::to_string(slack.opt_lower_slack)});
    report.per_interval.push_back(slack);
  }
  return report;
}

RatioReport ratio_report(const ChannelTrace& sigma, PolicyKind policy,
                         const AgeVector& initial_ages, const OptOptions& options) {
  RatioReport report;
  report.policy = policy;
  report.num_users = sigma.num_users();
  report.horizon = sigma.horizon();
  const SimTrace run = simulate(sigma, policy, initial_ages);
  const OptResult opt = opt_exact(sigma, initial_ages, options);
  report.cost_policy = run.total_cost;
  report.cost_opt = opt.cost;
  report.ratio = Ratio(run.total_cost, opt.cost);

  if (policy != PolicyKind::MaCsit || sigma.num_users() > 3) return report;
  report.checks_run = true;
  report.intervals = decompose_intervals(sigma, run);
  auto append = [&](std::vector<Violation> v) {
    report.violations.insert(report.violations.end(), v.begin(), v.end());
  };
  append(check_lemma1(run, opt.trace, report.intervals));
  append(check_residue_bound(run, opt.trace, report.intervals));
  if (sigma.num_users() == 2) append(check_lemma2(run, opt.trace, report.intervals));
  if (sigma.num_users() >= 2) {
    auto ineq = check_interval_inequalities(run, opt.trace, report.intervals);
    report.per_interval = std::move(ineq.per_interval);
    append(std::move(ineq.violations));
    report.notes = std::move(ineq.notes);
  }
  return report;
}

namespace {

nlohmann::ordered_json interval_json(const Interval& iv) {
  nlohmann::ordered_json j;
  j["index"] = iv.index;
  j["start"] = iv.start_slot;
  j["I"] = iv.length;
  j["max_age_user"] = iv.max_age_user;
  j["l"] = iv.residue;
  j["l_next"] = iv.next_residue;
  j["complete"] = iv.complete;
  j["case"] = iv.residue_case ? nlohmann::ordered_json(std::string(case_name(*iv.residue_case)))
                              : nlohmann::ordered_json(nullptr);
  j["a"] = iv.split_a ? nlohmann::ordered_json(*iv.split_a) : nlohmann::ordered_json(nullptr);
  j["b"] = iv.split_b ? nlohmann::ordered_json(*iv.split_b) : nlohmann::ordered_json(nullptr);
  j["needs_inspection"] = iv.needs_inspection;
  auto subs = nlohmann::ordered_json::array();
  for (const auto& s : iv.sub_intervals) {
    nlohmann::ordered_json sj;
    sj["start"] = s.start_slot;
    sj["I"] = s.length;
    sj["second_user"] = s.second_user;
    sj["l"] = s.sub_residue;
    subs.push_back(sj);
  }
  j["sub"] = subs;
  return j;
}

}  // namespace

std::string intervals_to_json(const std::vector<Interval>& intervals) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& iv : intervals) arr.push_back(interval_json(iv));
  return arr.dump(2);
}

std::string to_json(const RatioReport& report) {
  nlohmann::ordered_json j;
  j["policy"] = std::string(policy_name(report.policy));
  j["num_users"] = report.num_users;
  j["horizon"] = report.horizon;
  j["cost_policy"] = report.cost_policy;
  j["cost_opt"] = report.cost_opt;
  j["ratio"] = report.ratio.str();
  j["ratio_decimal"] = report.ratio.value();
  j["checks_run"] = report.checks_run;
  auto intervals = nlohmann::ordered_json::array();
  for (const auto& iv : report.intervals) intervals.push_back(interval_json(iv));
  j["intervals"] = intervals;
  auto slacks = nlohmann::ordered_json::array();
  for (const auto& s : report.per_interval) {
    nlohmann::ordered_json sj;
    sj["interval"] = s.interval;
    sj["cost_policy"] = s.cost_policy;
    sj["cost_opt"] = s.cost_opt;
    sj["upper_slack"] = s.upper_slack;
    sj["opt_lower_slack"] = s.opt_lower_slack;
    slacks.push_back(sj);
  }
  j["slacks"] = slacks;
  auto viol = nlohmann::ordered_json::array();
  for (const auto& v : report.violations) {
    nlohmann::ordered_json vj;
    vj["check"] = v.check;
    vj["interval"] = v.interval;
    vj["slot"] = v.slot;
    vj["detail"] = v.detail;
    viol.push_back(vj);
  }
  j["violations"] = viol;
  j["notes"] = report.notes;
  return j.dump(2);
}

}  // namespace aoi
