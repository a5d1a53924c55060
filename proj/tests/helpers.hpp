#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mlas/bench.hpp"
#include "mlas/builders.hpp"
#include "mlas/gls.hpp"
#include "mlas/instance.hpp"
#include "mlas/latency.hpp"
#include "mlas/tree.hpp"

namespace testutil {

inline mlas::PointSet points(std::initializer_list<std::pair<double, double>> xs,
                             std::string id = "test") {
  mlas::PointSet ps;
  ps.source_id = std::move(id);
  for (auto [x, y] : xs) ps.points.push_back({x, y});
  return ps;
}

inline std::shared_ptr<const mlas::Instance> inst_of(
    std::initializer_list<std::pair<double, double>> xs, double d) {
  return mlas::make_instance(points(xs), d);
}

// Path instance with the sink at one end: points march right from the center.
inline std::shared_ptr<const mlas::Instance> path_instance(int n, double gap = 0.04) {
  mlas::PointSet ps;
  ps.source_id = "path";
  for (int i = 0; i < n; ++i) ps.points.push_back({0.5 + gap * i, 0.5});
  return mlas::make_instance(std::move(ps), gap * 1.5);
}

// Sink in the middle plus leaves on a circle: pairwise leaf distance exceeds d.
inline std::shared_ptr<const mlas::Instance> star_instance(int leaves) {
  mlas::PointSet ps;
  ps.source_id = "star";
  ps.points.push_back({0.5, 0.5});
  const double r = 0.23;
  for (int i = 0; i < leaves; ++i) {
    const double a = 2.0 * 3.14159265358979323846 * i / leaves;
    ps.points.push_back({0.5 + r * std::cos(a), 0.5 + r * std::sin(a)});
  }
  return mlas::make_instance(std::move(ps), 0.25);
}

// Hop levels recomputed from scratch (independent of Instance's BFS).
inline std::vector<int> naive_levels(const mlas::Instance& inst) {
  std::vector<int> lvl(inst.size(), -1);
  std::deque<int> q{inst.sink()};
  lvl[inst.sink()] = 0;
  while (!q.empty()) {
    const int u = q.front();
    q.pop_front();
    for (int v = 0; v < inst.size(); ++v) {
      if (lvl[v] >= 0 || v == u) continue;
      const auto& pu = inst.point(u);
      const auto& pv = inst.point(v);
      const double dx = pu.x - pv.x, dy = pu.y - pv.y;
      if (dx * dx + dy * dy <= inst.critical_distance() * inst.critical_distance()) {
        lvl[v] = lvl[u] + 1;
        q.push_back(v);
      }
    }
  }
  return lvl;
}

// Completion values recomputed by plain recursion, optionally pretending that
// skip_child is not a child of skip_parent. Independent of primary_schedule.
inline int naive_completion(const mlas::AggTree& t, int v, int skip_parent, int skip_child) {
  std::vector<int> vals;
  for (int c : t.children(v)) {
    if (v == skip_parent && c == skip_child) continue;
    vals.push_back(naive_completion(t, c, skip_parent, skip_child));
  }
  std::sort(vals.rbegin(), vals.rend());
  int f = 0;
  for (std::size_t i = 0; i < vals.size(); ++i)
    f = std::max(f, vals[i] + static_cast<int>(i) + 1);
  return f;
}

inline int naive_makespan(const mlas::AggTree& t) {
  return naive_completion(t, t.root(), -1, -1);
}

// Random valid tree: a random shortest-path tree scrambled by a few random
// reattachments.
inline mlas::AggTree random_tree(std::shared_ptr<const mlas::Instance> inst, mlas::Rng& rng,
                                 int shakes = 6) {
  mlas::AggTree t = mlas::random_shortest_path(inst, rng);
  return mlas::mutate_exact(t, shakes, rng);
}

// Minimum primary makespan over every spanning tree of a small instance.
inline int best_tree_primary(const std::shared_ptr<const mlas::Instance>& inst) {
  const int n = inst->size();
  std::vector<int> parent(n, -1);
  int best = n;
  std::function<void(int)> rec = [&](int v) {
    if (v == n) {
      try {
        mlas::AggTree t(inst, parent);
        best = std::min(best, mlas::primary_schedule(t).makespan);
      } catch (const mlas::FeasibilityError&) {
      }
      return;
    }
    if (v == inst->sink()) {
      parent[v] = -1;
      rec(v + 1);
      return;
    }
    for (int u : inst->neighbors(v)) {
      parent[v] = u;
      rec(v + 1);
    }
  };
  rec(0);
  return best;
}

}  // namespace testutil
