#pragma once

#include <memory>

#include "mlas/rng.hpp"
#include "mlas/tree.hpp"

namespace mlas {

// Shortest-path (hop) tree; each vertex takes its lowest-id neighbor one level
// closer to the sink.
AggTree spt(std::shared_ptr<const Instance> inst);

// Shortest-path tree with the parent drawn uniformly among the one-level-closer
// neighbors.
AggTree random_shortest_path(std::shared_ptr<const Instance> inst, Rng& rng);

// Grows from the sink; a frontier arc (u, v) is drawn with probability
// inversely proportional to u's degree in the partial tree.
AggTree random_min_degree(std::shared_ptr<const Instance> inst, Rng& rng);

// Round-based reverse broadcast: per round every informed vertex may adopt one
// uninformed neighbor; uninformed vertices are served scarcest-first and adopt
// the informed neighbor with the fewest children so far.
AggTree round_heuristic(std::shared_ptr<const Instance> inst);

// Greedy growth attaching the frontier arc whose receiver minimizes
// depth + child count.
AggTree mlst(std::shared_ptr<const Instance> inst);

// Frontier choice used by random_min_degree; weight of entry i is
// 1 / max(1, tree_degrees[i]).
std::size_t pick_inverse_degree(const std::vector<int>& tree_degrees, Rng& rng);

}  // namespace mlas
