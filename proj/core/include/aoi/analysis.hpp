#pragma once

// Interval decomposition of an MA-CSIT run and the per-interval checks that
// bound its cost against OPT.
//
// Conventions (all slots 1-based):
//  * An interval starts at slot S with max-age user u = argmax of the MA-CSIT
//    ages at S (lowest index on ties) and ends at, and includes, the first
//    slot E >= S where MA-CSIT successfully serves u.
//  * The residue length is the number of slots strictly between u's last
//    MA-CSIT service and S, i.e. h_u(S) - 1. The first interval uses 0.
//  * For N >= 3 each interval is cut into sub-intervals the same way, driven
//    by the second max-age user at the sub-interval start.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "aoi/opt_solver.hpp"
#include "aoi/policies.hpp"
#include "aoi/rational.hpp"
#include "aoi/types.hpp"

namespace aoi {

enum class ResidueCase { Case1, Case2, Case3 };

std::string_view case_name(ResidueCase c);

struct SubInterval {
  std::size_t start_slot = 0;
  std::size_t length = 0;       // I^i_j
  UserIndex second_user = 0;    // 2nd max-age user during the sub-interval
  Age sub_residue = 0;          // l^i_j
  bool closed_by_service = false;  // ended by serving `second_user`

  std::size_t end_slot() const { return start_slot + length - 1; }
};

struct Interval {
  std::size_t index = 0;  // 1-based
  std::size_t start_slot = 0;
  std::size_t length = 0;  // I_i
  UserIndex max_age_user = 0;
  Age residue = 0;       // l_i
  Age next_residue = 0;  // l_{i+1}, residue of the interval that follows
  bool complete = false;
  std::vector<SubInterval> sub_intervals;

  // Residue regime, defined from the second interval on.
  std::optional<ResidueCase> residue_case;
  // Case 1 split of l_i (N = 3): a_i is the last sub-residue and b_i the last
  // sub-interval length of the previous interval.
  std::optional<Age> split_a;
  std::optional<Age> split_b;
  // Case 2/3 intervals are flagged rather than checked.
  bool needs_inspection = false;

  std::size_t end_slot() const { return start_slot + length - 1; }
  /// Slot of the max-age user's last MA-CSIT service before this interval
  /// (0 or negative for the virtual service implied by the initial ages).
  std::int64_t last_service_slot() const {
    return static_cast<std::int64_t>(start_slot) - residue - 1;
  }
};

struct Violation {
  std::string check;
  std::size_t interval = 0;
  std::size_t slot = 0;  // 0 when the check is per-interval
  std::string detail;
};

struct IntervalSlack {
  std::size_t interval = 0;
  Cost cost_policy = 0;
  Cost cost_opt = 0;
  /// C_OPT + l_i*I_i (+ sum_j l^i_j*I^i_j for N = 3) - C_MA.
  Cost upper_slack = 0;
  /// C_OPT minus the interval lower bound on OPT's cost.
  Cost opt_lower_slack = 0;
};

struct InequalityReport {
  std::vector<IntervalSlack> per_interval;
  std::vector<Violation> violations;
  std::vector<std::string> notes;  // logged but not failing
};

struct RatioReport {
  PolicyKind policy = PolicyKind::MaCsit;
  std::size_t num_users = 0;
  std::size_t horizon = 0;
  Cost cost_policy = 0;
  Cost cost_opt = 0;
  Ratio ratio;
  bool checks_run = false;
  std::vector<Interval> intervals;
  std::vector<IntervalSlack> per_interval;
  std::vector<Violation> violations;
  std::vector<std::string> notes;
};

/// Throws IntegrityError if `ma_trace` is not the MA-CSIT run on `channels`.
std::vector<Interval> decompose_intervals(const ChannelTrace& channels, const SimTrace& ma_trace);

/// Max-age user's MA-CSIT/OPT age difference must stay constant inside each
/// complete interval.
std::vector<Violation> check_lemma1(const SimTrace& ma_trace, const SimTrace& opt_trace,
                                    const std::vector<Interval>& intervals);

/// N = 2 only: the other user is never older under MA-CSIT than under OPT
/// inside a complete interval. Throws ScopeError for other N.
std::vector<Violation> check_lemma2(const SimTrace& ma_trace, const SimTrace& opt_trace,
                                    const std::vector<Interval>& intervals);

/// h_u - o_u at the start of each complete interval is at most its residue.
std::vector<Violation> check_residue_bound(const SimTrace& ma_trace, const SimTrace& opt_trace,
                                           const std::vector<Interval>& intervals);

/// Per-interval upper-bound and OPT lower-bound slacks for N in {2, 3};
/// ScopeError otherwise. For N = 3 the third user's sub-interval dominance and
/// the Case 1 split identity a_i + b_i = l_i are checked as well. A negative
/// upper slack in the first interval is logged as a note.
InequalityReport check_interval_inequalities(const SimTrace& ma_trace, const SimTrace& opt_trace,
                                             const std::vector<Interval>& intervals);

/// Case1 iff l_m <= I_prev; Case3 iff l_m >= I_prev2 + I_prev; Case2 otherwise.
ResidueCase classify_case(Age l_m, std::int64_t interval_prev, std::int64_t interval_prev2);

/// Runs `policy` and opt_exact on `sigma`; the decomposition checks run only
/// for MA-CSIT with N <= 3.
RatioReport ratio_report(const ChannelTrace& sigma, PolicyKind policy,
                         const AgeVector& initial_ages, const OptOptions& options = {});

/// Stable JSON rendering (interval index, I, l, sub list, slacks, violations).
std::string to_json(const RatioReport& report);
std::string intervals_to_json(const std::vector<Interval>& intervals);

}  // namespace aoi
