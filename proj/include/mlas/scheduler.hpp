#pragma once

#include <string>
#include <vector>

#include "mlas/tree.hpp"

namespace mlas {

// Conflict-free schedule under the full protocol interference model: each
// non-sink vertex sends exactly once, strictly after all of its children; a
// receiver hears no other in-range transmitter in that slot; nobody sends and
// receives at once.
struct FullSchedule {
  std::vector<int> send_slot;  // 0 at the sink
  std::vector<int> recipient;  // -1 at the sink
  int length = 0;
};

struct ScheduleResult {
  AggTree tree;
  FullSchedule schedule;
};

// Neighbor-degree-ranking scheduler. Slot by slot, ready vertices (all
// children already sent) are admitted in descending communication-graph degree
// order whenever they conflict with nobody already admitted. A supplementary
// pass may reparent vertices to lower their slot, so the returned tree can
// differ from the input.
ScheduleResult ndr_schedule(const AggTree& t);

struct Violation {
  std::string rule;
  int slot = 0;
  int a = -1;
  int b = -1;
  std::string detail;
  std::string to_string() const;
};

// Empty iff the schedule is feasible on the tree and the tree is consistent
// with the instance. Violations are data, not errors.
std::vector<Violation> validate_schedule(const Instance& inst, const AggTree& t,
                                         const FullSchedule& s);

// JSON array of {vertex, parent, slot} records, sorted by vertex.
std::string schedule_json(const AggTree& t, const FullSchedule& s);

}  // namespace mlas
