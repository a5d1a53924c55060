#include "mlas/builders.hpp"

#include <algorithm>
#include <limits>
#include <tuple>

#include "mlas/errors.hpp"

namespace mlas {

namespace {

std::vector<int> closer_neighbors(const Instance& inst, int v) {
  std::vector<int> out;
  for (int u : inst.neighbors(v))
    if (inst.level(u) == inst.level(v) - 1) out.push_back(u);
  return out;  // neighbor lists are sorted, so this stays sorted

}

}  // namespace

AggTree spt(std::shared_ptr<const Instance> inst) {
  const int n = inst->size();
  std::vector<int> parent(n, -1);
  for (int v = 0; v < n; ++v) {
    if (v == inst->sink()) continue;
    parent[v] = closer_neighbors(*inst, v).front();
  }
  return AggTree(std::move(inst), std::move(parent));
}

AggTree random_shortest_path(std::shared_ptr<const Instance> inst, Rng& rng) {
  const int n = inst->size();
  std::vector<int> parent(n, -1);
  for (int v = 0; v < n; ++v) {
    if (v == inst->sink()) continue;
    const auto up = closer_neighbors(*inst, v);
    parent[v] = up[rng.next_below(up.size())];
  }
  return AggTree(std::move(inst), std::move(parent));
}

std::size_t pick_inverse_degree(const std::vector<int>& tree_degrees, Rng& rng) {
  std::vector<double> weights(tree_degrees.size());
  for (std::size_t i = 0; i < tree_degrees.size(); ++i)
    weights[i] = 1.0 / std::max(1, tree_degrees[i]);
  return rng.weighted_index(weights);
}

AggTree random_min_degree(std::shared_ptr<const Instance> inst, Rng& rng) {
  const int n = inst->size();
  std::vector<int> parent(n, -1);
  std::vector<char> in_tree(n, 0);
  std::vector<int> tree_degree(n, 0);
  std::vector<int> members{inst->sink()};
  in_tree[inst->sink()] = 1;

  std::vector<std::pair<int, int>> frontier;  // (u in tree, v outside)
  std::vector<int> degrees;
  for (int added = 1; added < n; ++added) {
    frontier.clear();
    degrees.clear();
    for (int u : members) {
      for (int v : inst->neighbors(u)) {
        if (!in_tree[v]) {
          frontier.emplace_back(u, v);
          degrees.push_back(tree_degree[u]);
        }
      }
    }
    const auto [u, v] = frontier[pick_inverse_degree(degrees, rng)];
    parent[v] = u;
    in_tree[v] = 1;
    ++tree_degree[u];
    tree_degree[v] = 1;  // the fresh parent link
    members.push_back(v);
  }
  return AggTree(std::move(inst), std::move(parent));
}

AggTree round_heuristic(std::shared_ptr<const Instance> inst) {
  const int n = inst->size();
  std::vector<int> parent(n, -1);
  std::vector<char> informed(n, 0);
  std::vector<int> child_count(n, 0);
  informed[inst->sink()] = 1;
  int remaining = n - 1;

  while (remaining > 0) {
    // Counts and eligibility are frozen at round start; a vertex adopted in
    // this round cannot itself adopt until the next one.
    std::vector<int> informed_neighbors(n, 0);
    std::vector<int> candidates;
    for (int v = 0; v < n; ++v) {
      if (informed[v]) continue;
      for (int u : inst->neighbors(v))
        if (informed[u]) ++informed_neighbors[v];
      if (informed_neighbors[v] > 0) candidates.push_back(v);
    }
    std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
      if (informed_neighbors[a] != informed_neighbors[b])
        return informed_neighbors[a] < informed_neighbors[b];
      return a < b;
    });

    std::vector<char> adopted_this_round(n, 0);
    std::vector<int> newly;
    for (int v : candidates) {
      int best = -1;
      for (int u : inst->neighbors(v)) {
        if (!informed[u] || adopted_this_round[u]) continue;
        if (best < 0 || child_count[u] < child_count[best] ||
            (child_count[u] == child_count[best] && u < best))
          best = u;
      }
      if (best < 0) continue;
      parent[v] = best;
      adopted_this_round[best] = 1;
      ++child_count[best];
      newly.push_back(v);
    }
    for (int v : newly) informed[v] = 1;
    remaining -= static_cast<int>(newly.size());
  }
  return AggTree(std::move(inst), std::move(parent));
}

AggTree mlst(std::shared_ptr<const Instance> inst) {
  const int n = inst->size();
  std::vector<int> parent(n, -1);
  std::vector<char> in_tree(n, 0);
  std::vector<int> depth(n, 0), child_count(n, 0);
  std::vector<int> members{inst->sink()};
  in_tree[inst->sink()] = 1;

  for (int added = 1; added < n; ++added) {
    auto best = std::make_tuple(std::numeric_limits<int>::max(), -1, -1);  // (cost, child, parent)
    for (int u : members) {
      const int cost = depth[u] + child_count[u];
      for (int v : inst->neighbors(u)) {
        if (in_tree[v]) continue;
        if (std::make_tuple(cost, v, u) < best) best = std::make_tuple(cost, v, u);
      }
    }
    const int v = std::get<1>(best), u = std::get<2>(best);
    parent[v] = u;
    in_tree[v] = 1;
    depth[v] = depth[u] + 1;
    ++child_count[u];
    members.push_back(v);
  }
  return AggTree(std::move(inst), std::move(parent));
}

}  // namespace mlas
