#include "mlas/scheduler.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"
#include "mlas/errors.hpp"

namespace mlas {

namespace {

// Two transmissions v->p and w->q collide when they share a vertex, when one
// receiver hears the other sender, or when a sender is the other's receiver.
bool conflicts(const Instance& inst, int v, int p, int w, int q) {
  if (p == w || v == q) return true;
  return inst.has_edge(p, w) || inst.has_edge(q, v);
}

bool fits_slot(const Instance& inst, int v, int p, const std::vector<int>& senders,
               const std::vector<int>& recipient) {
  for (int w : senders)
    if (conflicts(inst, v, p, w, recipient[w])) return false;
  return true;
}

void compact_slots(FullSchedule& s, int sink) {
  std::vector<int> used;
  for (std::size_t v = 0; v < s.send_slot.size(); ++v)
    if (static_cast<int>(v) != sink) used.push_back(s.send_slot[v]);
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  for (std::size_t v = 0; v < s.send_slot.size(); ++v) {
    if (static_cast<int>(v) == sink) continue;
    const auto it = std::lower_bound(used.begin(), used.end(), s.send_slot[v]);
    s.send_slot[v] = static_cast<int>(it - used.begin()) + 1;
  }
  s.length = static_cast<int>(used.size());
}

}  // namespace

ScheduleResult ndr_schedule(const AggTree& input) {
  AggTree t = input;
  const Instance& inst = t.instance();
  const int n = t.size();
  const int sink = t.root();

  FullSchedule s;
  s.send_slot.assign(n, 0);
  s.recipient.assign(n, -1);

  std::vector<char> sent(n, 0);
  int remaining = n - 1;
  int slot = 0;
  while (remaining > 0) {
    ++slot;
    // Ready: unsent, with every child sent in an earlier slot.
    std::vector<int> ready;
    for (int v = 0; v < n; ++v) {
      if (v == sink || sent[v]) continue;
      bool ok = true;
      for (int c : t.children(v))
        if (!sent[c]) {
          ok = false;
          break;
        }
      if (ok) ready.push_back(v);
    }
    std::sort(ready.begin(), ready.end(), [&](int a, int b) {
      if (inst.degree(a) != inst.degree(b)) return inst.degree(a) > inst.degree(b);
      return a < b;
    });
    std::vector<int> admitted;
    for (int v : ready) {
      if (fits_slot(inst, v, t.parent(v), admitted, s.recipient)) {
        admitted.push_back(v);
        s.recipient[v] = t.parent(v);
      }
    }
    for (int v : admitted) {
      s.send_slot[v] = slot;
      sent[v] = 1;
    }
    remaining -= static_cast<int>(admitted.size());
  }
  s.length = slot;

  // Supplementary pass: in increasing slot order, try to reparent each vertex
  // to a neighbor so it sends earlier. An accepted move keeps every other
  // assignment feasible, so slots are patched in place and compacted at the
  // end.
  std::vector<int> order;
  for (int v = 0; v < n; ++v)
    if (v != sink) order.push_back(v);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (s.send_slot[a] != s.send_slot[b]) return s.send_slot[a] < s.send_slot[b];
    return a < b;
  });

  std::vector<std::vector<int>> by_slot(static_cast<std::size_t>(s.length) + 1);
  for (int v : order) by_slot[s.send_slot[v]].push_back(v);

  for (int v : order) {
    int floor_slot = 1;
    for (int c : t.children(v)) floor_slot = std::max(floor_slot, s.send_slot[c] + 1);
    bool moved = false;
    for (int u : inst.neighbors(v)) {
      if (u == t.parent(v) || t.is_descendant(u, v)) continue;
      const int u_slot = u == sink ? s.length + 1 : s.send_slot[u];
      const int limit = std::min(s.send_slot[v], u_slot);
      for (int cand = floor_slot; cand < limit; ++cand) {
        bool ok = true;
        for (int w : by_slot[cand]) {
          if (conflicts(inst, v, u, w, s.recipient[w])) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        auto& old_bucket = by_slot[s.send_slot[v]];
        old_bucket.erase(std::find(old_bucket.begin(), old_bucket.end(), v));
        t.reattach(v, u);
        s.recipient[v] = u;
        s.send_slot[v] = cand;
        by_slot[cand].push_back(v);
        moved = true;
        break;
      }
      if (moved) break;
    }
  }
  compact_slots(s, sink);
  return ScheduleResult{std::move(t), std::move(s)};
}

std::string Violation::to_string() const {
  std::ostringstream os;
  os << rule << " at slot " << slot << " (vertices " << a;
  if (b >= 0) os << ", " << b;
  os << ")";
  if (!detail.empty()) os << ": " << detail;
  return os.str();
}

std::vector<Violation> validate_schedule(const Instance& inst, const AggTree& t,
                                         const FullSchedule& s) {
  std::vector<Violation> out;
  const int n = inst.size();
  const int sink = inst.sink();
  if (t.instance_ptr().get() != &inst) {
    out.push_back({"instance-mismatch", 0, -1, -1, "tree spans a different instance"});
    return out;
  }
  if (static_cast<int>(s.send_slot.size()) != n || static_cast<int>(s.recipient.size()) != n) {
    out.push_back({"shape", 0, -1, -1, "schedule arrays do not match the instance size"});
    return out;
  }

  for (int v = 0; v < n; ++v) {
    if (v == sink) {
      if (s.send_slot[v] != 0 || s.recipient[v] != -1)
        out.push_back({"sink-sends", s.send_slot[v], v, -1, "the sink must only receive"});
      continue;
    }
    if (s.send_slot[v] < 1)
      out.push_back({"missing-send", 0, v, -1, "vertex never sends"});
    if (s.recipient[v] != t.parent(v))
      out.push_back({"tree-consistency", s.send_slot[v], v, s.recipient[v],
                     "recipient differs from the tree parent"});
    else if (!inst.has_edge(v, s.recipient[v]))
      out.push_back({"non-edge", s.send_slot[v], v, s.recipient[v],
                     "recipient is out of range"});
  }

  for (int v = 0; v < n; ++v) {
    if (v == sink) continue;
    for (int c : t.children(v)) {
      if (s.send_slot[c] >= s.send_slot[v])
        out.push_back({"ordering", s.send_slot[c], v, c, "child does not precede its parent"});
    }
  }
  const int max_slot = *std::max_element(s.send_slot.begin(), s.send_slot.end());
  if (s.length != max_slot)
    out.push_back({"length", max_slot, -1, -1, "declared length differs from the last used slot"});

  std::vector<std::vector<int>> by_slot(static_cast<std::size_t>(std::max(max_slot, 0)) + 1);
  for (int v = 0; v < n; ++v)
    if (v != sink && s.send_slot[v] >= 1) by_slot[s.send_slot[v]].push_back(v);
  for (int slot = 1; slot <= max_slot; ++slot) {
    const auto& senders = by_slot[slot];
    for (std::size_t i = 0; i < senders.size(); ++i) {
      for (std::size_t j = i + 1; j < senders.size(); ++j) {
        const int v = senders[i], w = senders[j];
        const int p = s.recipient[v], q = s.recipient[w];
        if (p == w || q == v)
          out.push_back({"half-duplex", slot, v, w, "a sender is also a receiver"});
        else if (p == q)
          out.push_back({"receiver-conflict", slot, v, w, "two senders share a recipient"});
        else if (inst.has_edge(p, w) || inst.has_edge(q, v))
          out.push_back({"interference", slot, v, w, "a receiver hears a second transmitter"});
      }
    }
  }
  return out;
}

std::string schedule_json(const AggTree& t, const FullSchedule& s) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (int v = 0; v < t.size(); ++v) {
    if (v == t.root()) continue;
    arr.push_back({{"vertex", v}, {"parent", s.recipient[v]}, {"slot", s.send_slot[v]}});
  }
  return arr.dump();
}

}  // namespace mlas
