#include "mlas/gls.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>

#include "mlas/builders.hpp"
#include "mlas/errors.hpp"

namespace mlas {

namespace {

void check_params(const GlsParams& p) {
  if (p.pop_size < 3) throw DomainError("pop_size must be at least 3");
  if (p.offsp_size < 1) throw DomainError("offsp_size must be at least 1");
  if (p.fp_it_count < 0) throw DomainError("fp_it_count must be nonnegative");
  if (p.sp_proportion < 0.0 || p.sp_proportion > 1.0)
    throw DomainError("sp_proportion must lie in [0, 1]");
  if (p.pm < 0.0 || p.pm > 1.0) throw DomainError("pm must lie in [0, 1]");
  if (p.pls < 0.0 || p.pls > 1.0) throw DomainError("pls must lie in [0, 1]");
  if (p.k_max < 0) throw DomainError("k_max must be nonnegative");
  if (p.stall_limit < 1) throw DomainError("stall_limit must be at least 1");
}

int effective_k_max(const GlsParams& p, int n) {
  if (p.k_max > 0) return p.k_max;
  return std::max(1, n / 3);
}

Individual evaluate(AggTree tree, std::int64_t age) {
  ScheduleResult r = ndr_schedule(tree);
  const int len = r.schedule.length;
  return Individual{std::move(r.tree), std::move(r.schedule), len,
                    len > 0 ? 1.0 / len : 1.0, age};
}

bool contains_tree(const std::vector<Individual>& pop, const AggTree& t) {
  return std::any_of(pop.begin(), pop.end(),
                     [&](const Individual& i) { return i.tree.parents() == t.parents(); });
}

}  // namespace

std::vector<Individual> initialize_population(std::shared_ptr<const Instance> inst,
                                              const GlsParams& p, Rng& rng) {
  check_params(p);
  std::vector<Individual> pop;
  for (AggTree seed : {spt(inst), round_heuristic(inst), mlst(inst)}) {
    if (!contains_tree(pop, seed)) pop.push_back(evaluate(std::move(seed), 0));
  }
  for (int it = 0; it < p.fp_it_count && static_cast<int>(pop.size()) < p.pop_size; ++it) {
    AggTree t = rng.uniform01() < p.sp_proportion ? random_shortest_path(inst, rng)
                                                  : random_min_degree(inst, rng);
    if (!contains_tree(pop, t)) pop.push_back(evaluate(std::move(t), 0));
  }
  return pop;
}

std::vector<std::pair<std::size_t, std::size_t>> select_pairs(
    const std::vector<Individual>& pop, int count, Rng& rng) {
  if (pop.size() < 2) throw SelectionError("selection needs a population of at least 2");
  std::vector<double> weights(pop.size());
  for (std::size_t i = 0; i < pop.size(); ++i) weights[i] = pop[i].fitness;

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const std::size_t first = rng.weighted_index(weights);
    std::vector<double> rest = weights;
    rest[first] = 0.0;
    const std::size_t second = rng.weighted_index(rest);
    pairs.emplace_back(first, second);
  }
  return pairs;
}

double crossover_weight(int parent_tree_degree, int level_v, int level_parent) {
  const int gap = std::abs(level_v - level_parent - 2);
  const double gap_term = gap == 0 ? 1e6 : 1.0 / gap;
  return 1.0 / parent_tree_degree + gap_term;
}

AggTree crossover(const AggTree& t1, const AggTree& t2, Rng& rng) {
  if (t1.instance_ptr().get() != t2.instance_ptr().get())
    throw FeasibilityError("crossover: parents span different instances");
  const Instance& inst = t1.instance();
  const int n = inst.size();
  const int sink = inst.sink();

  // Vertices are processed by increasing hop level. Agreeing arcs are taken
  // as-is and the fallback is always the first parent's arc: every picked arc
  // is then either an arc of t1 or points into the already-rooted component,
  // and neither kind can close a cycle. The weighted draw only arbitrates
  // between two provably safe choices.
  std::vector<int> order;
  for (int v = 0; v < n; ++v)
    if (v != sink) order.push_back(v);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (inst.level(a) != inst.level(b)) return inst.level(a) < inst.level(b);
    return a < b;
  });

  std::vector<int> parent(n, -1);
  std::vector<char> rooted(n, 0);
  rooted[sink] = 1;

  // Connected-to-sink test on the partial parent map, memoized on success.
  auto is_rooted = [&](int u) {
    int x = u;
    while (x != -1 && !rooted[x]) x = parent[x];
    if (x == -1) return false;
    for (x = u; !rooted[x]; x = parent[x]) rooted[x] = 1;
    return true;
  };

  auto tree_degree = [](const AggTree& t, int v) {
    return static_cast<int>(t.children(v).size()) + (v == t.root() ? 0 : 1);
  };

  for (int v : order) {
    const int p1 = t1.parent(v);
    const int p2 = t2.parent(v);
    int chosen = p1;
    if (p1 != p2) {
      const bool ok1 = is_rooted(p1);
      const bool ok2 = is_rooted(p2);
      if (ok1 && ok2) {
        const double w1 = crossover_weight(tree_degree(t1, p1), inst.level(v), inst.level(p1));
        const double w2 = crossover_weight(tree_degree(t2, p2), inst.level(v), inst.level(p2));
        chosen = rng.uniform01() < w1 / (w1 + w2) ? p1 : p2;
      } else if (ok2) {
        chosen = p2;
      }
    }
    parent[v] = chosen;
  }
  return AggTree(t1.instance_ptr(), std::move(parent));
}

AggTree mutate_exact(const AggTree& t, int iterations, Rng& rng) {
  AggTree out = t;
  const Instance& inst = out.instance();
  std::vector<std::pair<int, int>> candidates;
  for (int it = 0; it < iterations; ++it) {
    candidates.clear();
    for (const auto& [v, u] : inst.arcs())
      if (out.parent(v) != u) candidates.push_back({v, u});
    if (candidates.empty()) break;  // the tree uses every arc; nothing to draw
    const auto [v, u] = candidates[rng.next_below(candidates.size())];
    if (!out.is_descendant(u, v)) out.reattach(v, u);
    // an infeasible draw still consumes the iteration
  }
  return out;
}

AggTree mutate(const AggTree& t, int k_max, Rng& rng) {
  if (k_max < 1) throw DomainError("mutate: k_max must be at least 1");
  std::vector<double> weights(static_cast<std::size_t>(k_max));
  for (int k = 1; k <= k_max; ++k) weights[static_cast<std::size_t>(k - 1)] = 1.0 / k;
  const int k = static_cast<int>(rng.weighted_index(weights)) + 1;
  return mutate_exact(t, k, rng);
}

GlsResult run_gls(std::shared_ptr<const Instance> inst, const GlsParams& p,
                  LocalSearchKind ls, Rng& rng) {
  check_params(p);
  const auto start = std::chrono::steady_clock::now();
  auto elapsed_ms = [&] {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
  };
  const int k_max = effective_k_max(p, inst->size());

  std::vector<Individual> pop = initialize_population(inst, p, rng);

  auto best_of = [](const std::vector<Individual>& v) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
      if (v[i].full_length < v[best].full_length) best = i;
    return best;
  };
  auto mean_of = [](const std::vector<Individual>& v) {
    double sum = 0.0;
    for (const auto& i : v) sum += i.full_length;
    return sum / static_cast<double>(v.size());
  };

  GlsResult result{pop[best_of(pop)].tree, pop[best_of(pop)].schedule,
                   pop[best_of(pop)].full_length, {}};
  result.trace.push_back({0, result.length, mean_of(pop), elapsed_ms()});

  int stall = 0;
  int generation = 0;
  while (stall < p.stall_limit) {
    ++generation;
    std::vector<Individual> offspring;
    if (pop.size() >= 2) {
      const auto pairs = select_pairs(pop, p.offsp_size, rng);
      offspring.reserve(pairs.size());
      for (const auto& [i, j] : pairs) {
        AggTree child = crossover(pop[i].tree, pop[j].tree, rng);
        if (rng.uniform01() < p.pm) child = mutate(child, k_max, rng);
        if (rng.uniform01() < p.pls) {
          child = ls == LocalSearchKind::branch_reattaching ? branch_reattaching_ls(child)
                                                            : arc_inversion_ls(child);
        }
        offspring.push_back(evaluate(std::move(child), generation));
      }
    }

    // Elitist join: keep the pop_size fittest of population + offspring; ties
    // prefer the newer individual, then the lexicographically smaller tree.
    pop.insert(pop.end(), std::make_move_iterator(offspring.begin()),
               std::make_move_iterator(offspring.end()));
    std::sort(pop.begin(), pop.end(), [](const Individual& a, const Individual& b) {
      if (a.full_length != b.full_length) return a.full_length < b.full_length;
      if (a.age != b.age) return a.age > b.age;
      return a.tree.parents() < b.tree.parents();
    });
    if (static_cast<int>(pop.size()) > p.pop_size)
      pop.erase(pop.begin() + p.pop_size, pop.end());

    const std::size_t best = best_of(pop);
    if (pop[best].full_length < result.length) {
      result.tree = pop[best].tree;
      result.schedule = pop[best].schedule;
      result.length = pop[best].full_length;
      stall = 0;
    } else {
      ++stall;
    }
    result.trace.push_back({generation, result.length, mean_of(pop), elapsed_ms()});
  }
  return result;
}

GlsResult run_gls(std::shared_ptr<const Instance> inst, const GlsParams& p,
                  LocalSearchKind ls) {
  Rng rng(p.seed);
  return run_gls(std::move(inst), p, ls, rng);
}

}  // namespace mlas
