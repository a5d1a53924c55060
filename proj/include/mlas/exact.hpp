#pragma once

#include <cstddef>
#include <memory>

#include "mlas/scheduler.hpp"
#include "mlas/tree.hpp"

namespace mlas {

struct ExactResult {
  int length = 0;
  AggTree tree;
  FullSchedule schedule;
};

// Minimum schedule length over all spanning trees and all feasible full-model
// schedules, with a witness. Searches trees and schedules jointly: a vertex
// may send to any neighbor that has not sent yet, which fixes its parent; the
// future depends only on the set of vertices that have sent, so states are
// memoized on that set.
ExactResult exact_min_latency(std::shared_ptr<const Instance> inst, int limit_n = 12,
                              std::size_t state_budget = std::size_t{1} << 22);

// Brute-force minimum makespan on a fixed tree under primary conflicts only.
// Test oracle; independent of primary_schedule.
int exact_min_primary_latency(const AggTree& t, int limit_n = 10);

}  // namespace mlas
