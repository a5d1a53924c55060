#include "mlas/exact.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <unordered_map>
#include <vector>

#include "mlas/errors.hpp"

namespace mlas {

namespace {

using Mask = std::uint32_t;

struct SearchContext {
  const Instance* inst = nullptr;
  std::vector<int> non_sink;        // compact index -> vertex id
  std::vector<int> index_of;        // vertex id -> compact index (-1 for sink)
  std::vector<Mask> adj_mask;       // per vertex id, neighbors as compact mask
  std::vector<char> sink_adjacent;  // per compact index
  Mask full = 0;
  std::size_t budget = 0;
  std::unordered_map<Mask, int> memo;
};

// A sender set fits in one slot iff every sender has a receiver candidate:
// an unsent non-sender neighbor heard by exactly one sender. Candidate sets of
// different senders are disjoint, so existence per sender suffices.
bool slot_feasible(const SearchContext& c, Mask sent, Mask senders) {
  for (Mask rest = senders; rest;) {
    const int i = std::countr_zero(rest);
    rest &= rest - 1;
    const int v = c.non_sink[i];
    bool has_receiver = false;
    for (int x : c.inst->neighbors(v)) {
      if (x == c.inst->sink()) {
        if (std::popcount(c.adj_mask[x] & senders) == 1) {
          has_receiver = true;
          break;
        }
        continue;
      }
      const int xi = c.index_of[x];
      const Mask bit = Mask{1} << xi;
      if ((sent & bit) || (senders & bit)) continue;
      if (std::popcount(c.adj_mask[x] & senders) == 1) {
        has_receiver = true;
        break;
      }
    }
    if (!has_receiver) return false;
  }
  return true;
}

int solve(SearchContext& c, Mask sent) {
  if (sent == c.full) return 0;
  if (auto it = c.memo.find(sent); it != c.memo.end()) return it->second;
  if (c.memo.size() >= c.budget)
    throw ResourceError("exact search exceeded its state budget");

  const Mask unsent = c.full & ~sent;
  int best = std::numeric_limits<int>::max();
  // Every nonempty subset of the unsent vertices is a candidate sender set.
  for (Mask s = unsent; s; s = (s - 1) & unsent) {
    if (!slot_feasible(c, sent, s)) continue;
    const int rest = solve(c, sent | s);
    if (rest != std::numeric_limits<int>::max()) best = std::min(best, 1 + rest);
    if (best == 1) break;  // one slot is the floor for any nonempty remainder
  }
  c.memo.emplace(sent, best);
  return best;
}

}  // namespace

ExactResult exact_min_latency(std::shared_ptr<const Instance> inst, int limit_n,
                              std::size_t state_budget) {
  const int n = inst->size();
  if (n > limit_n)
    throw SizeError("exact_min_latency: instance of size " + std::to_string(n) +
                    " exceeds the limit " + std::to_string(limit_n));
  if (n > 31) throw SizeError("exact_min_latency: mask width exceeded");

  SearchContext c;
  c.inst = inst.get();
  c.index_of.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    if (v == inst->sink()) continue;
    c.index_of[v] = static_cast<int>(c.non_sink.size());
    c.non_sink.push_back(v);
  }
  c.adj_mask.assign(n, 0);
  for (int v = 0; v < n; ++v)
    for (int u : inst->neighbors(v))
      if (u != inst->sink()) c.adj_mask[v] |= Mask{1} << c.index_of[u];
  c.full = c.non_sink.empty() ? 0 : (Mask{1} << c.non_sink.size()) - 1;
  c.budget = state_budget;

  const int length = solve(c, 0);

  // Reconstruct a witness by replaying optimal transitions; within a slot each
  // sender takes its lowest-id valid receiver.
  std::vector<int> parent(n, -1), slot_of(n, 0);
  Mask sent = 0;
  int slot = 0;
  while (sent != c.full) {
    ++slot;
    const Mask unsent = c.full & ~sent;
    Mask chosen = 0;
    for (Mask s = unsent; s; s = (s - 1) & unsent) {
      if (!slot_feasible(c, sent, s)) continue;
      const int rest = solve(c, sent | s);
      if (rest != std::numeric_limits<int>::max() && 1 + rest == solve(c, sent)) {
        chosen = std::max(chosen, s);  // deterministic: the numerically largest optimal set
      }
    }
    for (Mask rest = chosen; rest;) {
      const int i = std::countr_zero(rest);
      rest &= rest - 1;
      const int v = c.non_sink[i];
      for (int x : inst->neighbors(v)) {
        const bool x_closed = x != inst->sink() &&
                              (((sent | chosen) >> c.index_of[x]) & 1u) != 0;
        if (x_closed) continue;
        if (std::popcount(c.adj_mask[x] & chosen) != 1) continue;
        parent[v] = x;
        slot_of[v] = slot;
        break;
      }
    }
    sent |= chosen;
  }

  AggTree tree(inst, parent);
  FullSchedule sched;
  sched.send_slot = std::move(slot_of);
  sched.recipient = tree.parents();
  sched.length = length;
  return ExactResult{length, std::move(tree), std::move(sched)};
}

int exact_min_primary_latency(const AggTree& t, int limit_n) {
  const int n = t.size();
  if (n > limit_n)
    throw SizeError("exact_min_primary_latency: tree of size " + std::to_string(n) +
                    " exceeds the limit " + std::to_string(limit_n));

  // Backtracking over vertices in children-first order; slots are chosen
  // ascending so sibling sets and parent bounds prune early.
  std::vector<int> order;
  order.push_back(t.root());
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int c : t.children(order[i])) order.push_back(c);
  std::reverse(order.begin(), order.end());

  std::vector<int> slot(n, 0);
  int best = n;  // serializing one send per slot is always feasible

  auto rec = [&](auto&& self, std::size_t pos, int used_max) -> void {
    if (used_max >= best) return;
    if (pos == order.size()) {
      best = used_max;
      return;
    }
    const int v = order[pos];
    if (v == t.root()) {
      self(self, pos + 1, used_max);
      return;
    }
    int lb = 1;
    for (int c : t.children(v)) lb = std::max(lb, slot[c] + 1);
    for (int cand = lb; cand < best; ++cand) {
      bool clash = false;
      for (int sib : t.children(t.parent(v))) {
        if (sib != v && slot[sib] == cand) {
          clash = true;
          break;
        }
      }
      if (clash) continue;
      slot[v] = cand;
      self(self, pos + 1, std::max(used_max, cand));
      slot[v] = 0;
    }
  };
  rec(rec, 0, 0);
  return best;
}

}  // namespace mlas
