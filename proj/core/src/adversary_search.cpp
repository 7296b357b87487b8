#include "aoi/adversary_search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "aoi/analysis.hpp"
#include "aoi/channel_gen.hpp"
#include "aoi/errors.hpp"
#include "aoi/simulate.hpp"

namespace aoi {

namespace {

constexpr std::size_t kMaxUsers = 8;

using Ages = std::array<std::int32_t, kMaxUsers>;

struct State {
  Ages ages;
  Cost cost;
};

// Cost-only forward DP step: applies one channel column (bit i = user i Good)
// to `cur` and writes the Pareto-minimal states to `next`.
void step_frontier(const std::vector<State>& cur, std::uint32_t column, std::size_t n,
                   std::vector<State>& next) {
  next.clear();
  for (const State& s : cur) {
    Cost base = s.cost;
    Ages idle = s.ages;
    for (std::size_t i = 0; i < n; ++i) {
      base += s.ages[i];
      ++idle[i];
    }
    next.push_back({idle, base});
    for (std::size_t i = 0; i < n; ++i) {
      if (!(column >> i & 1u)) continue;
      State served{idle, base};
      served.ages[i] = 1;
      next.push_back(served);
    }
  }
  auto key_sum = [n](const State& s) {
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < n; ++i) sum += s.ages[i];
    return sum;
  };
  std::sort(next.begin(), next.end(), [&](const State& a, const State& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    return key_sum(a) < key_sum(b);
  });
  std::size_t kept = 0;
  for (std::size_t c = 0; c < next.size(); ++c) {
    bool dominated = false;
    for (std::size_t q = 0; q < kept && !dominated; ++q) {
      bool younger = true;
      for (std::size_t i = 0; i < n && younger; ++i) younger = next[q].ages[i] <= next[c].ages[i];
      dominated = younger;
    }
    if (!dominated) next[kept++] = next[c];
  }
  next.resize(kept);
}

Cost final_opt_cost(const std::vector<State>& frontier, std::size_t n) {
  Cost best = std::numeric_limits<Cost>::max();
  for (const State& s : frontier) {
    Cost c = s.cost;
    for (std::size_t i = 0; i < n; ++i) c += s.ages[i];
    best = std::min(best, c);
  }
  return best;
}

void step_ma(Ages& ages, Cost& cost, std::uint32_t column, std::size_t n) {
  std::size_t pick = n;
  for (std::size_t i = 0; i < n; ++i) {
    cost += ages[i];
    if ((column >> i & 1u) && (pick == n || ages[i] > ages[pick])) pick = i;
  }
  for (std::size_t i = 0; i < n; ++i) ++ages[i];
  if (pick < n) ages[pick] = 1;
}

struct Best {
  Ratio ratio{0, 1};
  Cost ma = 0;
  Cost opt = 1;
  std::uint64_t code = 0;
  bool found = false;

  void offer(Cost ma_cost, Cost opt_cost, std::uint64_t at) {
    const Ratio r(ma_cost, opt_cost);
    if (!found || r > ratio || (r == ratio && at < code)) {
      ratio = r;
      ma = ma_cost;
      opt = opt_cost;
      code = at;
      found = true;
    }
  }
};

// Depth-first enumeration sharing MA-CSIT and OPT prefixes. The last slot's
// column cannot change either cost (slot cost counts pre-service ages), so
// each depth T-1 node stands for 2^n sequences with identical ratio.
class Enumerator {
 public:
  Enumerator(std::size_t n, std::size_t horizon, const AgeVector& init)
      : n_(n), horizon_(horizon), frontiers_(horizon), ma_ages_(horizon), ma_cost_(horizon, 0) {
    Ages start{};
    for (std::size_t i = 0; i < n; ++i) start[i] = static_cast<std::int32_t>(init[i]);
    frontiers_[0] = {State{start, 0}};
    ma_ages_[0] = start;
  }

  void run_subtree(std::uint32_t first_column) {
    if (horizon_ == 1) {
      evaluate(0, 0);
      return;
    }
    descend(0, first_column, 0);
  }

  const Best& best() const { return best_; }
  std::uint64_t examined() const { return examined_; }

 private:
  void descend(std::size_t depth, std::uint32_t column, std::uint64_t prefix) {
    const std::size_t d = depth + 1;
    step_frontier(frontiers_[depth], column, n_, frontiers_[d]);
    ma_ages_[d] = ma_ages_[depth];
    ma_cost_[d] = ma_cost_[depth];
    step_ma(ma_ages_[d], ma_cost_[d], column, n_);
    const std::uint64_t code = prefix << n_ | column;
    if (d == horizon_ - 1) {
      evaluate(d, code);
      return;
    }
    for (std::uint32_t c = 0; c < (1u << n_); ++c) descend(d, c, code);
  }

  void evaluate(std::size_t d, std::uint64_t prefix) {
    Cost ma = ma_cost_[d];
    for (std::size_t i = 0; i < n_; ++i) ma += ma_ages_[d][i];
    best_.offer(ma, final_opt_cost(frontiers_[d], n_), prefix << n_);
    examined_ += std::uint64_t{1} << n_;
  }

  std::size_t n_;
  std::size_t horizon_;
  std::vector<std::vector<State>> frontiers_;
  std::vector<Ages> ma_ages_;
  std::vector<Cost> ma_cost_;
  Best best_;
  std::uint64_t examined_ = 0;
};

ChannelTrace decode(std::uint64_t code, std::size_t n, std::size_t horizon) {
  ChannelTrace trace(n, horizon);
  for (std::size_t k = 0; k < horizon; ++k) {
    const std::size_t shift = (horizon - 1 - k) * n;
    for (std::size_t i = 0; i < n; ++i)
      if (code >> (shift + i) & 1u) trace.set(k, i, ChannelState::Good);
  }
  return trace;
}

void verify(const SearchResult& r, const AgeVector& init) {
  const RatioReport check = ratio_report(r.argmax_trace, PolicyKind::MaCsit, init);
  if (check.ratio != r.best_ratio)
    throw IntegrityError("search reported ratio " + r.best_ratio.str() +
                         " but the argmax trace re-verifies to " + check.ratio.str());
}

void check_search_inputs(std::size_t n, std::size_t horizon, const AgeVector& init) {
  if (n == 0 || horizon == 0) throw ParameterError("search needs n >= 1 and t >= 1");
  if (init.size() != n)
    throw ConfigError("initial ages have " + std::to_string(init.size()) + " entries, expected " +
                      std::to_string(n));
}

SearchResult sampled_search(std::size_t n, std::size_t horizon, const AgeVector& init,
                            const ExhaustiveOptions& options) {
  SplitMix64 rng(options.sample_seed);
  Best best;
  ChannelTrace best_trace(n, horizon);
  std::vector<State> cur;
  std::vector<State> next;
  Ages start{};
  for (std::size_t i = 0; i < n; ++i) start[i] = static_cast<std::int32_t>(init[i]);
  std::vector<std::uint32_t> columns(horizon);
  for (std::uint64_t s = 0; s < options.sample; ++s) {
    for (auto& c : columns) c = static_cast<std::uint32_t>(rng.next_below(std::uint64_t{1} << n));
    cur = {State{start, 0}};
    Ages ma = start;
    Cost ma_cost = 0;
    for (std::size_t k = 0; k + 1 < horizon; ++k) {
      step_frontier(cur, columns[k], n, next);
      std::swap(cur, next);
      step_ma(ma, ma_cost, columns[k], n);
    }
    for (std::size_t i = 0; i < n; ++i) ma_cost += ma[i];
    const Cost opt = final_opt_cost(cur, n);
    const Ratio ratio(ma_cost, opt);
    if (!best.found || ratio > best.ratio) {
      best.ratio = ratio;
      best.ma = ma_cost;
      best.opt = opt;
      best.found = true;
      best_trace = ChannelTrace(n, horizon);
      for (std::size_t k = 0; k < horizon; ++k)
        for (std::size_t i = 0; i < n; ++i)
          if (columns[k] >> i & 1u) best_trace.set(k, i, ChannelState::Good);
    }
  }
  SearchResult r;
  r.best_ratio = best.ratio;
  r.cost_ma_csit = best.ma;
  r.cost_opt = best.opt;
  r.argmax_trace = best_trace;
  r.sequences_examined = options.sample;
  r.method = SearchMethod::Exhaustive;
  r.sampled = true;
  return r;
}

}  // namespace

SearchResult exhaustive_search(std::size_t num_users, std::size_t horizon,
                               const AgeVector& initial_ages, const ExhaustiveOptions& options) {
  check_search_inputs(num_users, horizon, initial_ages);
  if (num_users > kMaxUsers)
    throw ParameterError("exhaustive search supports at most " + std::to_string(kMaxUsers) +
                         " users");
  const std::size_t bits = num_users * horizon;
  const std::uint64_t space = bits >= 64 ? std::numeric_limits<std::uint64_t>::max()
                                         : std::uint64_t{1} << bits;
  if (space > options.sequence_budget) {
    if (options.sample == 0)
      throw BudgetExceeded("exhaustive search over 2^(n*t) sequences refused", space,
                           options.sequence_budget);
    SearchResult r = sampled_search(num_users, horizon, initial_ages, options);
    verify(r, initial_ages);
    return r;
  }

  // One task per first-slot column; tasks are reduced in column order.
  const std::uint32_t tasks = horizon == 1 ? 1u : (1u << num_users);
  std::vector<Best> results(tasks);
  std::vector<std::uint64_t> counts(tasks, 0);
  std::atomic<std::uint32_t> next_task{0};
  auto worker = [&] {
    for (std::uint32_t task; (task = next_task.fetch_add(1)) < tasks;) {
      Enumerator e(num_users, horizon, initial_ages);
      e.run_subtree(task);
      results[task] = e.best();
      counts[task] = e.examined();
    }
  };
  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp(threads, 1u, tasks);
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < threads; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  Best best;
  std::uint64_t examined = 0;
  for (std::uint32_t task = 0; task < tasks; ++task) {
    examined += counts[task];
    best.offer(results[task].ma, results[task].opt, results[task].code);
  }

  SearchResult r;
  r.best_ratio = best.ratio;
  r.cost_ma_csit = best.ma;
  r.cost_opt = best.opt;
  r.argmax_trace = decode(best.code, num_users, horizon);
  r.sequences_examined = examined;
  r.method = SearchMethod::Exhaustive;
  verify(r, initial_ages);
  return r;
}

namespace {

std::vector<ChannelTrace> warm_starts(std::size_t n, std::size_t horizon) {
  std::vector<ChannelTrace> out;
  if (n == 2) {
    for (std::size_t delta = 4; delta <= horizon; delta += 2)
      if (horizon % delta == 0) out.push_back(gen_adversarial_2user(delta, horizon / delta));
  } else if (n == 3) {
    for (std::size_t delta = 24; delta <= horizon; delta += 6)
      if (horizon % delta == 0) out.push_back(gen_adversarial_3user(delta, horizon / delta));
  }
  return out;
}

Ratio evaluate(const ChannelTrace& trace, const AgeVector& init, const OptOptions& opt) {
  return Ratio(simulate_cost(trace, PolicyKind::MaCsit, init), opt_exact(trace, init, opt).cost);
}

}  // namespace

SearchResult local_search(std::size_t num_users, std::size_t horizon,
                          const AgeVector& initial_ages, const LocalSearchOptions& options) {
  check_search_inputs(num_users, horizon, initial_ages);
  SplitMix64 rng(options.seed);

  std::vector<ChannelTrace> pool = warm_starts(num_users, horizon);
  for (std::size_t r = 0; r < options.random_restarts; ++r)
    pool.push_back(gen_iid(0.5, num_users, horizon, rng.next()));

  SearchResult result;
  result.method = SearchMethod::LocalSearch;
  bool have_best = false;
  std::uint64_t examined = 0;
  auto consider = [&](const ChannelTrace& trace, const Ratio& ratio) {
    if (!have_best || ratio > result.best_ratio) {
      result.best_ratio = ratio;
      result.argmax_trace = trace;
      have_best = true;
    }
  };

  for (ChannelTrace current : pool) {
    Ratio current_ratio = evaluate(current, initial_ages, options.opt);
    ++examined;
    consider(current, current_ratio);
    for (std::size_t it = 0; it < options.iterations; ++it) {
      const std::size_t slot = rng.next_below(horizon);
      const UserIndex user = rng.next_below(num_users);
      current.flip(slot, user);
      const Ratio candidate = evaluate(current, initial_ages, options.opt);
      ++examined;
      if (candidate >= current_ratio) {
        current_ratio = candidate;
        consider(current, current_ratio);
      } else {
        current.flip(slot, user);
      }
    }
  }

  result.sequences_examined = examined;
  result.cost_ma_csit = simulate_cost(result.argmax_trace, PolicyKind::MaCsit, initial_ages);
  result.cost_opt = opt_exact(result.argmax_trace, initial_ages, options.opt).cost;
  verify(result, initial_ages);
  return result;
}

}  // namespace aoi
