#include "aoi/opt_solver.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "aoi/errors.hpp"
#include "aoi/simulate.hpp"

namespace aoi {

namespace {

void check_dimensions(const ChannelTrace& trace, const AgeVector& initial_ages) {
  if (initial_ages.size() != trace.num_users())
    throw ConfigError("initial ages have " + std::to_string(initial_ages.size()) +
                      " entries but the trace has " + std::to_string(trace.num_users()) +
                      " users");
}

// Back-pointer kept for every surviving state of an event slot.
struct Link {
  std::uint32_t parent;
  Decision decision;
};

struct EventLayer {
  std::size_t slot_index;
  std::vector<Link> links;
};

// Frontier of states after some prefix of slots. `last` is flattened
// (state-major); ranks order the states by their decision prefix.
struct Frontier {
  std::size_t n = 0;
  std::vector<std::int64_t> last;
  std::vector<Cost> cost;
  std::vector<std::uint32_t> rank;

  std::size_t size() const { return cost.size(); }
  const std::int64_t* last_of(std::size_t s) const { return last.data() + s * n; }
};

struct Candidate {
  Cost cost;
  std::int64_t freshness;  // sum of last-service slots
  std::uint32_t parent_rank;
  std::uint32_t parent;
  Decision decision;
  std::uint32_t offset;  // into the candidate `last` buffer
};

}  // namespace

OptResult opt_exact(const ChannelTrace& trace, const AgeVector& initial_ages,
                    const OptOptions& options) {
  check_dimensions(trace, initial_ages);
  const std::size_t n = trace.num_users();
  const std::size_t horizon = trace.horizon();

  Frontier frontier;
  frontier.n = n;
  for (Age a : initial_ages) frontier.last.push_back(1 - a);
  frontier.cost.push_back(0);
  frontier.rank.push_back(0);

  std::vector<EventLayer> layers;
  std::uint64_t generated = 1;

  std::vector<Candidate> cand;
  std::vector<std::int64_t> cand_last;
  std::vector<std::uint32_t> kept;

  // Final choice when the last slot is not an event slot.
  std::uint32_t final_state = 0;
  bool final_from_layer = false;
  Decision final_decision = Decision::idle();

  std::size_t k = 0;
  while (k < horizon) {
    // Batch of all-Bad slots [k, j): every state idles.
    std::size_t j = k;
    while (j < horizon && !trace.any_good(j)) ++j;
    if (j > k) {
      const auto first = static_cast<std::int64_t>(k + 1);
      const auto final_slot = static_cast<std::int64_t>(j);
      const auto len = final_slot - first + 1;
      const std::int64_t slot_sum = (first + final_slot) * len / 2;
      for (std::size_t s = 0; s < frontier.size(); ++s) {
        const auto* l = frontier.last_of(s);
        for (std::size_t i = 0; i < n; ++i) frontier.cost[s] += slot_sum - len * l[i];
      }
      k = j;
      continue;
    }

    // Event slot k (1-based slot t = k + 1).
    const auto t = static_cast<std::int64_t>(k + 1);
    const bool last_slot = k + 1 == horizon;
    cand.clear();
    cand_last.clear();
    for (std::size_t s = 0; s < frontier.size(); ++s) {
      const auto* l = frontier.last_of(s);
      Cost base = frontier.cost[s];
      std::int64_t fresh = 0;
      for (std::size_t i = 0; i < n; ++i) {
        base += t - l[i];
        fresh += l[i];
      }
      auto push = [&](Decision d) {
        const auto offset = static_cast<std::uint32_t>(cand_last.size());
        cand_last.insert(cand_last.end(), l, l + n);
        std::int64_t f = fresh;
        if (d.is_serve()) {
          f += t - cand_last[offset + d.user()];
          cand_last[offset + d.user()] = t;
        }
        cand.push_back({base, f, frontier.rank[s], static_cast<std::uint32_t>(s), d, offset});
      };
      for (UserIndex i = 0; i < n; ++i)
        if (trace.good(k, i)) push(Decision::serve(i));
      push(Decision::idle());
    }
    generated += cand.size();
    if (generated > options.node_budget)
      throw BudgetExceeded("exact OPT state space exceeds the node budget", generated,
                           options.node_budget);

    auto prefix_less = [](const Candidate& a, const Candidate& b) {
      if (a.parent_rank != b.parent_rank) return a.parent_rank < b.parent_rank;
      return a.decision.order_key() < b.decision.order_key();
    };

    if (last_slot) {
      // Post-service state is irrelevant after the horizon; only cost and
      // prefix order matter.
      const auto best = std::min_element(cand.begin(), cand.end(),
                                         [&](const Candidate& a, const Candidate& b) {
                                           if (a.cost != b.cost) return a.cost < b.cost;
                                           return prefix_less(a, b);
                                         });
      final_state = best->parent;
      final_decision = best->decision;
      final_from_layer = true;
      frontier.cost.assign(1, best->cost);
      break;
    }

    std::vector<std::uint32_t> order(cand.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      const auto& x = cand[a];
      const auto& y = cand[b];
      if (x.cost != y.cost) return x.cost < y.cost;
      if (x.freshness != y.freshness) return x.freshness > y.freshness;
      return prefix_less(x, y);
    });
    kept.clear();
    for (std::uint32_t c : order) {
      const auto* lc = cand_last.data() + cand[c].offset;
      bool dominated = false;
      for (std::uint32_t q : kept) {
        const auto* lq = cand_last.data() + cand[q].offset;
        bool fresher = true;
        for (std::size_t i = 0; i < n && fresher; ++i) fresher = lq[i] >= lc[i];
        if (fresher) {
          dominated = true;
          break;
        }
      }
      if (!dominated) kept.push_back(c);
    }
    // Rank survivors by decision prefix.
    std::sort(kept.begin(), kept.end(),
              [&](std::uint32_t a, std::uint32_t b) { return prefix_less(cand[a], cand[b]); });

    Frontier next;
    next.n = n;
    EventLayer layer{k, {}};
    layer.links.reserve(kept.size());
    for (std::size_t r = 0; r < kept.size(); ++r) {
      const auto& c = cand[kept[r]];
      next.last.insert(next.last.end(), cand_last.begin() + c.offset,
                       cand_last.begin() + c.offset + static_cast<std::ptrdiff_t>(n));
      next.cost.push_back(c.cost);
      next.rank.push_back(static_cast<std::uint32_t>(r));
      layer.links.push_back({c.parent, c.decision});
    }
    layers.push_back(std::move(layer));
    frontier = std::move(next);
    ++k;
  }

  OptResult result;
  if (final_from_layer) {
    result.cost = frontier.cost.front();
  } else {
    // Horizon ended on Bad slots: pick the cheapest, then prefix-smallest.
    std::size_t best = 0;
    for (std::size_t s = 1; s < frontier.size(); ++s) {
      if (frontier.cost[s] < frontier.cost[best] ||
          (frontier.cost[s] == frontier.cost[best] && frontier.rank[s] < frontier.rank[best]))
        best = s;
    }
    final_state = static_cast<std::uint32_t>(best);
    result.cost = frontier.cost[best];
  }

  result.schedule.decisions.assign(horizon, Decision::idle());
  if (final_from_layer) result.schedule.decisions[horizon - 1] = final_decision;
  std::uint32_t state = final_state;
  for (auto it = layers.rbegin(); it != layers.rend(); ++it) {
    const Link& link = it->links[state];
    result.schedule.decisions[it->slot_index] = link.decision;
    state = link.parent;
  }

  result.trace = replay(trace, result.schedule, initial_ages);
  if (result.trace.total_cost != result.cost)
    throw IntegrityError("OPT schedule replays to cost " +
                         std::to_string(result.trace.total_cost) + ", solver reported " +
                         std::to_string(result.cost));
  return result;
}

namespace {

struct BruteForce {
  const ChannelTrace& trace;
  std::size_t n;
  std::vector<Age> ages;
  std::vector<Decision> prefix;
  Cost best = std::numeric_limits<Cost>::max();
  std::vector<Decision> best_schedule;

  void search(std::size_t k, Cost cost, bool feasible) {
    if (k == trace.horizon()) {
      if (feasible && cost < best) {
        best = cost;
        best_schedule = prefix;
      }
      return;
    }
    Cost slot_cost = 0;
    for (Age a : ages) slot_cost += a;
    const std::vector<Age> saved = ages;
    for (std::size_t option = 0; option <= n; ++option) {
      const Decision d = option < n ? Decision::serve(option) : Decision::idle();
      const bool success = d.is_serve() && trace.good(k, d.user());
      for (auto& a : ages) ++a;
      if (success) ages[d.user()] = 1;
      prefix.push_back(d);
      search(k + 1, cost + slot_cost, feasible && (d.is_idle() || success));
      prefix.pop_back();
      ages = saved;
    }
  }
};

}  // namespace

OptResult brute_force_opt(const ChannelTrace& trace, const AgeVector& initial_ages,
                          std::uint64_t sequence_budget) {
  check_dimensions(trace, initial_ages);
  const std::uint64_t branching = trace.num_users() + 1;
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t sequences = 1;
  for (std::size_t k = 0; k < trace.horizon(); ++k)
    sequences = sequences > kMax / branching ? kMax : sequences * branching;
  if (sequences > sequence_budget)
    throw BudgetExceeded("brute-force OPT refuses (N+1)^T enumeration", sequences,
                         sequence_budget);

  BruteForce bf{trace, trace.num_users(),
                std::vector<Age>(initial_ages.begin(), initial_ages.end()), {},
                std::numeric_limits<Cost>::max(), {}};
  bf.prefix.reserve(trace.horizon());
  bf.search(0, 0, true);

  OptResult result;
  result.cost = bf.best;
  result.schedule.decisions = std::move(bf.best_schedule);
  result.trace = replay(trace, result.schedule, initial_ages);
  return result;
}

}  // namespace aoi
