#include "mlas/vns.hpp"

#include <chrono>

#include "mlas/builders.hpp"
#include "mlas/errors.hpp"

namespace mlas {

VnsResult run_vns(std::shared_ptr<const Instance> inst, const VnsParams& p, Rng& rng) {
  if (p.k_max < 1) throw DomainError("k_max must be at least 1");
  if (p.stall_limit < 1) throw DomainError("stall_limit must be at least 1");
  const auto start = std::chrono::steady_clock::now();
  auto elapsed_ms = [&] {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
  };

  // Start from the best of the three constructive trees under the full-model
  // scheduler; ties keep the earlier tree in SPT, RH, MLST order.
  ScheduleResult current = ndr_schedule(spt(inst));
  for (AggTree cand : {round_heuristic(inst), mlst(inst)}) {
    ScheduleResult r = ndr_schedule(cand);
    if (r.schedule.length < current.schedule.length) current = std::move(r);
  }
  int current_len = current.schedule.length;

  VnsResult result{current.tree, current.schedule, current_len, {}};
  int stall = 0;
  int outer = 0;
  while (stall < p.stall_limit) {
    ++outer;
    const int len_at_sweep_start = current_len;
    int k = 0;
    while (k <= p.k_max) {
      AggTree shaken = k == 0 ? current.tree : mutate_exact(current.tree, k, rng);
      ScheduleResult trial = ndr_schedule(shaken);
      int trial_len = trial.schedule.length;

      // Variable neighborhood descent over the two local searches.
      int ls_index = 1;
      while (ls_index <= 2) {
        AggTree improved_tree = ls_index == 1 ? branch_reattaching_ls(trial.tree)
                                              : arc_inversion_ls(trial.tree);
        ScheduleResult next = ndr_schedule(improved_tree);
        if (next.schedule.length < trial_len) {
          trial = std::move(next);
          trial_len = trial.schedule.length;
          ls_index = 1;
        } else {
          ++ls_index;
        }
      }

      if (trial_len < current_len) {
        current = std::move(trial);
        current_len = trial_len;
        k = 1;
      } else {
        ++k;
      }
      result.trace.push_back({outer, k, current_len, std::min(current_len, result.length),
                              elapsed_ms()});
    }

    if (current_len < result.length) {
      result.tree = current.tree;
      result.schedule = current.schedule;
      result.length = current_len;
    }
    stall = current_len < len_at_sweep_start ? 0 : stall + 1;
  }
  return result;
}

VnsResult run_vns(std::shared_ptr<const Instance> inst, const VnsParams& p) {
  Rng rng(p.seed);
  return run_vns(std::move(inst), p, rng);
}

}  // namespace mlas
