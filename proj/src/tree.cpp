#include "mlas/tree.hpp"

#include <algorithm>
#include <sstream>

#include "mlas/errors.hpp"

namespace mlas {

AggTree::AggTree(std::shared_ptr<const Instance> inst, std::vector<int> parents)
    : inst_(std::move(inst)), parent_(std::move(parents)) {
  if (!inst_) throw FeasibilityError("tree without an instance");
  const int n = inst_->size();
  if (static_cast<int>(parent_.size()) != n)
    throw FeasibilityError("parent map size does not match the instance");
  root_ = inst_->sink();
  if (parent_[root_] != -1) throw FeasibilityError("the sink must be the parentless root");

  children_.assign(n, {});
  for (int v = 0; v < n; ++v) {
    if (v == root_) continue;
    const int p = parent_[v];
    if (p < 0 || p >= n)
      throw FeasibilityError("vertex " + std::to_string(v) + " has no valid parent");
    if (!inst_->has_edge(v, p)) {
      std::ostringstream os;
      os << "arc (" << v << ", " << p << ") is not an edge of the instance";
      throw FeasibilityError(os.str());
    }
    children_[p].push_back(v);
  }
  for (auto& c : children_) std::sort(c.begin(), c.end());

  // Acyclicity: every parent chain must end at the root.
  std::vector<int> state(n, 0);  // 0 unseen, 1 on stack, 2 done
  state[root_] = 2;
  std::vector<int> stack;
  for (int v = 0; v < n; ++v) {
    int x = v;
    stack.clear();
    while (state[x] == 0) {
      state[x] = 1;
      stack.push_back(x);
      x = parent_[x];
    }
    if (state[x] == 1) {
      std::ostringstream os;
      os << "parent map contains a cycle through vertex " << x;
      throw FeasibilityError(os.str());
    }
    for (int y : stack) state[y] = 2;
  }
}

bool AggTree::is_descendant(int a, int b) const {
  int x = a;
  while (x != -1) {
    if (x == b) return true;
    x = parent_[x];
  }
  return false;
}

bool AggTree::can_reattach(int v, int u) const {
  if (v == root_ || v == u) return false;
  if (!inst_->has_edge(v, u)) return false;
  return !is_descendant(u, v);
}

void AggTree::reattach(int v, int u) {
  if (v == root_) throw FeasibilityError("the root cannot be reattached");
  if (!inst_->has_edge(v, u))
    throw FeasibilityError("reattach target is not a neighbor of the vertex");
  if (is_descendant(u, v))
    throw FeasibilityError("reattaching under a descendant would close a cycle");
  const int old = parent_[v];
  if (old == u) return;
  erase_child(old, v);
  parent_[v] = u;
  insert_child(u, v);
}

bool AggTree::can_invert_and_reattach(int v, int p_star) const {
  if (v == root_ || parent_[v] == root_) return false;
  if (v == p_star || !inst_->has_edge(v, p_star)) return false;
  // Any target inside the moved branch (the subtree of parent(v)) closes a
  // cycle once the arc is inverted.
  return !is_descendant(p_star, parent_[v]);
}

void AggTree::invert_and_reattach(int v, int p_star) {
  if (v == root_ || parent_[v] == root_)
    throw FeasibilityError("arc inversion requires a vertex below depth 1");
  if (v == p_star || !inst_->has_edge(v, p_star))
    throw FeasibilityError("inversion target is not a neighbor of the vertex");
  const int p = parent_[v];
  if (is_descendant(p_star, p))
    throw FeasibilityError("inversion target inside the moved branch would close a cycle");
  const int g = parent_[p];
  erase_child(g, p);
  erase_child(p, v);
  parent_[p] = v;
  insert_child(v, p);
  parent_[v] = p_star;
  insert_child(p_star, v);
}

void AggTree::self_check() const {
  AggTree rebuilt(inst_, parent_);  // revalidates all invariants
  for (int v = 0; v < size(); ++v) {
    if (children_[v] != rebuilt.children_[v])
      throw FeasibilityError("children list out of sync at vertex " + std::to_string(v));
  }
}

void AggTree::insert_child(int p, int c) {
  auto& list = children_[p];
  list.insert(std::lower_bound(list.begin(), list.end(), c), c);
}

void AggTree::erase_child(int p, int c) {
  auto& list = children_[p];
  auto it = std::lower_bound(list.begin(), list.end(), c);
  if (it == list.end() || *it != c)
    throw FeasibilityError("children list out of sync at vertex " + std::to_string(p));
  list.erase(it);
}

int tree_distance(const AggTree& a, const AggTree& b) {
  if (a.instance_ptr().get() != b.instance_ptr().get())
    throw FeasibilityError("tree_distance: trees span different instances");
  int count = 0;
  for (int v = 0; v < a.size(); ++v) {
    if (v == a.root()) continue;
    if (a.parent(v) != b.parent(v)) ++count;
  }
  return count;
}

}  // namespace mlas
