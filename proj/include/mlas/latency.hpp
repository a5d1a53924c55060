#pragma once

#include <vector>

#include "mlas/tree.hpp"

namespace mlas {

// Optimal schedule on a fixed tree when only primary conflicts count
// (children of one parent never share a slot; a vertex sends strictly after
// all of its children). f(v) is the earliest round by which v can hold its
// whole subtree: 0 for leaves, otherwise max_i(f(c_i) + i) over children
// sorted by f descending. send_slot is the canonical assignment: children in
// (f desc, id asc) order each take the earliest free slot >= f(child) + 1.
struct PrimarySchedule {
  std::vector<int> f;
  std::vector<int> send_slot;  // 0 at the root
  std::vector<int> depth;
  int makespan = 0;
};

PrimarySchedule primary_schedule(const AggTree& t);

struct EffectStats {
  int recomputed_vertices = 0;
};

// Change of primary schedule length, L(T) - L(T'), if v were reattached under
// u; positive means the move improves. Returns 0 early when detaching v does
// not lower the sending time of the branch below the merge ancestor (such a
// move can never improve).
int reattaching_effect(const AggTree& t, const PrimarySchedule& ps, int v, int u,
                       EffectStats* stats = nullptr);

// Same for the inversion move (parent(v) becomes a child of v, v hangs under
// u). The early exit probes the detachment of the whole moved branch.
int arc_inversion_effect(const AggTree& t, const PrimarySchedule& ps, int v, int u,
                         EffectStats* stats = nullptr);

// Best-improvement local searches over the primary model. Each applies the
// best strictly improving move, recomputes the schedule, and rescans until a
// fixed point; primary makespan never increases.
AggTree branch_reattaching_ls(AggTree t);
AggTree arc_inversion_ls(AggTree t);

}  // namespace mlas
