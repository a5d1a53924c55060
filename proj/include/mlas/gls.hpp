#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "mlas/latency.hpp"
#include "mlas/rng.hpp"
#include "mlas/scheduler.hpp"

namespace mlas {

struct GlsParams {
  int pop_size = 50;
  int offsp_size = 20;
  int fp_it_count = 150;
  double sp_proportion = 0.6;
  double pm = 0.5;
  double pls = 0.5;
  int k_max = 0;  // 0 selects floor(n / 3), at least 1
  int stall_limit = 3;
  std::uint64_t seed = 1;
};

struct Individual {
  AggTree tree;
  FullSchedule schedule;
  int full_length = 0;
  double fitness = 0.0;  // 1 / full_length
  std::int64_t age = 0;  // generation the individual was created in
};

enum class LocalSearchKind { arc_inversion, branch_reattaching };

struct GlsTraceRow {
  int generation = 0;
  int best_length = 0;
  double mean_length = 0.0;
  std::int64_t elapsed_ms = 0;
};

struct GlsResult {
  AggTree tree;
  FullSchedule schedule;
  int length = 0;
  std::vector<GlsTraceRow> trace;
};

// Seeds the population with the SPT, round-heuristic and MLST trees, then adds
// random trees (shortest-path with probability sp_proportion, min-degree
// otherwise) for at most fp_it_count draws, rejecting duplicates. The result
// may be smaller than pop_size.
std::vector<Individual> initialize_population(std::shared_ptr<const Instance> inst,
                                              const GlsParams& p, Rng& rng);

// count pairs of distinct indices; the first member is drawn fitness-
// proportionally from the whole population, the second from the rest.
std::vector<std::pair<std::size_t, std::size_t>> select_pairs(
    const std::vector<Individual>& pop, int count, Rng& rng);

// Per-vertex arc choice between the two parents: agreeing arcs are kept, an
// arc that cannot close a cycle is preferred, otherwise the choice is sampled
// by the crossover weights.
AggTree crossover(const AggTree& t1, const AggTree& t2, Rng& rng);

// w = 1/degree + 1/|l(v) - l(parent) - 2|; the second term is capped at 1e6
// when the gap denominator vanishes.
double crossover_weight(int parent_tree_degree, int level_v, int level_parent);

// Draws K in [1, k_max] with P(K = k) proportional to 1/k, then performs K
// random reattachments; infeasible draws are skipped but still count.
AggTree mutate(const AggTree& t, int k_max, Rng& rng);

// The K-iteration core with a fixed iteration count (used as the VNS shake).
AggTree mutate_exact(const AggTree& t, int iterations, Rng& rng);

GlsResult run_gls(std::shared_ptr<const Instance> inst, const GlsParams& p,
                  LocalSearchKind ls, Rng& rng);
GlsResult run_gls(std::shared_ptr<const Instance> inst, const GlsParams& p,
                  LocalSearchKind ls);

}  // namespace mlas
