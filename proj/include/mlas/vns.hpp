#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "mlas/gls.hpp"

namespace mlas {

struct VnsParams {
  int k_max = 30;
  int stall_limit = 3;
  std::uint64_t seed = 1;
};

struct VnsTraceRow {
  int outer_iteration = 0;
  int k = 0;
  int current_length = 0;
  int best_length = 0;
  std::int64_t elapsed_ms = 0;
};

struct VnsResult {
  AggTree tree;
  FullSchedule schedule;
  int length = 0;
  std::vector<VnsTraceRow> trace;
};

// Starts from the best of the three constructive trees under the full-model
// scheduler, shakes with radius K = 0..k_max, descends with the two primary-
// model local searches, accepts strictly better full-model lengths, and stops
// once the incumbent survives stall_limit consecutive outer sweeps.
VnsResult run_vns(std::shared_ptr<const Instance> inst, const VnsParams& p, Rng& rng);
VnsResult run_vns(std::shared_ptr<const Instance> inst, const VnsParams& p);

}  // namespace mlas
