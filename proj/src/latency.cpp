#include "mlas/latency.hpp"

#include <algorithm>
#include <queue>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mlas/errors.hpp"

namespace mlas {

namespace {

// Completion value from the (unsorted) child completion values:
// sort descending, take max_i(value_i + i), i 1-based.
int fold_children(std::vector<int>& vals) {
  std::sort(vals.begin(), vals.end(), std::greater<int>());
  int f = 0;
  for (std::size_t i = 0; i < vals.size(); ++i)
    f = std::max(f, vals[i] + static_cast<int>(i) + 1);
  return f;
}

// Children edits a hypothetical move applies to a handful of vertices.
struct ChildMods {
  struct Entry {
    std::vector<int> removed;
    std::vector<std::pair<int, int>> added;  // (child, completion value)
  };
  std::unordered_map<int, Entry> at;

  void remove(int parent, int child) { at[parent].removed.push_back(child); }
  void add(int parent, int child, int f) { at[parent].added.emplace_back(child, f); }
};

int lookup_f(const PrimarySchedule& ps, const std::unordered_map<int, int>& newf, int v) {
  auto it = newf.find(v);
  return it == newf.end() ? ps.f[v] : it->second;
}

int recompute_f(const AggTree& t, const PrimarySchedule& ps, int x, const ChildMods& mods,
                const std::unordered_map<int, int>& newf, EffectStats* stats) {
  if (stats) ++stats->recomputed_vertices;
  const ChildMods::Entry* entry = nullptr;
  if (auto it = mods.at.find(x); it != mods.at.end()) entry = &it->second;
  std::vector<int> vals;
  vals.reserve(t.children(x).size() + 1);
  for (int c : t.children(x)) {
    if (entry && std::find(entry->removed.begin(), entry->removed.end(), c) != entry->removed.end())
      continue;
    vals.push_back(lookup_f(ps, newf, c));
  }
  if (entry)
    for (auto [c, fv] : entry->added) vals.push_back(fv);
  return fold_children(vals);
}

// Recomputes the seeded vertices and pushes changes toward the root, deepest
// first so every vertex is folded at most once with all child updates known.
// Returns the new completion value of the root.
int propagate_to_root(const AggTree& t, const PrimarySchedule& ps, const ChildMods& mods,
                      std::vector<int> seeds, std::unordered_map<int, int>& newf,
                      EffectStats* stats) {
  std::priority_queue<std::pair<int, int>> heap;  // (depth, vertex)
  std::unordered_set<int> pending, done;
  for (int s : seeds) {
    if (pending.insert(s).second) heap.emplace(ps.depth[s], s);
  }
  while (!heap.empty()) {
    const int x = heap.top().second;
    heap.pop();
    if (!done.insert(x).second) continue;
    const int fx = recompute_f(t, ps, x, mods, newf, stats);
    const bool changed = fx != ps.f[x];
    newf[x] = fx;
    if (x == t.root() || !changed) continue;
    const int p = t.parent(x);
    if (pending.insert(p).second) heap.emplace(ps.depth[p], p);
  }
  return lookup_f(ps, newf, t.root());
}

int lca(const AggTree& t, const PrimarySchedule& ps, int a, int b) {
  while (ps.depth[a] > ps.depth[b]) a = t.parent(a);
  while (ps.depth[b] > ps.depth[a]) b = t.parent(b);
  while (a != b) {
    a = t.parent(a);
    b = t.parent(b);
  }
  return a;
}

// Walks the detach side from `loser` (whose children lose `gone`) up to the
// child of `merge`. Returns false when the decrease dies out before reaching
// that branch top, which means the move cannot improve the schedule.
bool detach_probe(const AggTree& t, const PrimarySchedule& ps, int loser, int gone, int merge,
                  ChildMods& mods, std::unordered_map<int, int>& newf, EffectStats* stats) {
  mods.remove(loser, gone);
  int cur = loser;
  while (true) {
    const int f = recompute_f(t, ps, cur, mods, newf, stats);
    if (f == ps.f[cur]) return false;
    newf[cur] = f;
    if (t.parent(cur) == merge) return true;
    cur = t.parent(cur);
  }
}

}  // namespace

PrimarySchedule primary_schedule(const AggTree& t) {
  const int n = t.size();
  PrimarySchedule ps;
  ps.f.assign(n, 0);
  ps.send_slot.assign(n, 0);
  ps.depth.assign(n, 0);

  // Depth-ordered vertex list via a preorder walk from the root.
  std::vector<int> order;
  order.reserve(n);
  order.push_back(t.root());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int v = order[i];
    for (int c : t.children(v)) {
      ps.depth[c] = ps.depth[v] + 1;
      order.push_back(c);
    }
  }

  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int v = *it;
    std::vector<int> vals;
    vals.reserve(t.children(v).size());
    for (int c : t.children(v)) vals.push_back(ps.f[c]);
    ps.f[v] = fold_children(vals);
  }

  // Canonical slots: per sibling group, children in (f desc, id asc) order
  // each take the earliest untaken slot >= f(child) + 1.
  for (int v : order) {
    const auto& kids = t.children(v);
    if (kids.empty()) continue;
    std::vector<int> sorted(kids.begin(), kids.end());
    std::sort(sorted.begin(), sorted.end(), [&](int a, int b) {
      if (ps.f[a] != ps.f[b]) return ps.f[a] > ps.f[b];
      return a < b;
    });
    std::vector<char> taken(static_cast<std::size_t>(ps.f[v]) + 2, 0);
    for (int c : sorted) {
      int slot = ps.f[c] + 1;
      while (taken[slot]) ++slot;
      taken[slot] = 1;
      ps.send_slot[c] = slot;
    }
  }

  ps.makespan = ps.f[t.root()];
  return ps;
}

int reattaching_effect(const AggTree& t, const PrimarySchedule& ps, int v, int u,
                       EffectStats* stats) {
  if (!t.can_reattach(v, u)) throw FeasibilityError("reattaching_effect: infeasible move");
  const int p = t.parent(v);
  if (u == p) return 0;
  const int merge = lca(t, ps, p, u);

  ChildMods mods;
  std::unordered_map<int, int> newf;
  if (p != merge) {
    if (!detach_probe(t, ps, p, v, merge, mods, newf, stats)) return 0;
  } else {
    mods.remove(p, v);
  }
  mods.add(u, v, ps.f[v]);

  std::vector<int> seeds{u};
  seeds.push_back(p == merge ? p : merge);
  const int new_root_f = propagate_to_root(t, ps, mods, std::move(seeds), newf, stats);
  return ps.f[t.root()] - new_root_f;
}

int arc_inversion_effect(const AggTree& t, const PrimarySchedule& ps, int v, int u,
                         EffectStats* stats) {
  if (!t.can_invert_and_reattach(v, u))
    throw FeasibilityError("arc_inversion_effect: infeasible move");
  const int p = t.parent(v);
  const int g = t.parent(p);
  const int merge = lca(t, ps, g, u);

  ChildMods mods;
  std::unordered_map<int, int> newf;
  if (g != merge) {
    if (!detach_probe(t, ps, g, p, merge, mods, newf, stats)) return 0;
  } else {
    mods.remove(g, p);
  }

  // New values inside the moved branch: p loses v, v gains p.
  ChildMods local;
  local.remove(p, v);
  const int fp = recompute_f(t, ps, p, local, newf, stats);
  local.add(v, p, fp);
  const int fv = recompute_f(t, ps, v, local, newf, stats);
  mods.add(u, v, fv);

  std::vector<int> seeds{u};
  seeds.push_back(g == merge ? g : merge);
  const int new_root_f = propagate_to_root(t, ps, mods, std::move(seeds), newf, stats);
  return ps.f[t.root()] - new_root_f;
}

AggTree branch_reattaching_ls(AggTree t) {
  const int n = t.size();
  PrimarySchedule ps = primary_schedule(t);
  bool improved = true;
  while (improved) {
    improved = false;
    int best = 0, best_v = -1, best_u = -1;
    for (int v = 0; v < n; ++v) {
      if (v == t.root()) continue;
      for (int u : t.instance().neighbors(v)) {
        if (u == t.parent(v) || t.is_descendant(u, v)) continue;
        const int effect = reattaching_effect(t, ps, v, u);
        if (effect > best) {
          best = effect;
          best_v = v;
          best_u = u;
        }
      }
    }
    if (best_v >= 0) {
      t.reattach(best_v, best_u);
      ps = primary_schedule(t);
      improved = true;
    }
  }
  return t;
}

AggTree arc_inversion_ls(AggTree t) {
  const int n = t.size();
  PrimarySchedule ps = primary_schedule(t);
  bool improved = true;
  while (improved) {
    improved = false;
    for (int v = 0; v < n; ++v) {
      if (v == t.root() || t.parent(v) == t.root()) continue;
      int best = 0, best_u = -1;
      for (int u : t.instance().neighbors(v)) {
        if (!t.can_invert_and_reattach(v, u)) continue;
        const int effect = arc_inversion_effect(t, ps, v, u);
        if (effect > best) {
          best = effect;
          best_u = u;
        }
      }
      if (best_u >= 0) {
        t.invert_and_reattach(v, best_u);
        ps = primary_schedule(t);
        improved = true;
      }
    }
  }
  return t;
}

}  // namespace mlas
