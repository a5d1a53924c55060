#pragma once

#include <memory>
#include <vector>

#include "mlas/instance.hpp"

namespace mlas {

// Spanning aggregation tree rooted at the sink. Every (child, parent) pair is
// an edge of the instance; the sink never sends. Children lists stay sorted by
// vertex id after every mutation, so scan orders are reproducible. Copies are
// plain value copies.
class AggTree {
 public:
  AggTree(std::shared_ptr<const Instance> inst, std::vector<int> parents);

  int size() const { return static_cast<int>(parent_.size()); }
  int root() const { return root_; }
  int parent(int v) const { return parent_[v]; }
  const std::vector<int>& children(int v) const { return children_[v]; }
  const std::vector<int>& parents() const { return parent_; }
  const Instance& instance() const { return *inst_; }
  const std::shared_ptr<const Instance>& instance_ptr() const { return inst_; }

  // True iff a lies in the subtree rooted at b; every vertex is a descendant
  // of itself.
  bool is_descendant(int a, int b) const;

  bool can_reattach(int v, int u) const;
  void reattach(int v, int u);

  // Makes parent(v) a child of v and hangs v under p_star. Requires v below
  // depth 2 (parent(v) must not be the root).
  bool can_invert_and_reattach(int v, int p_star) const;
  void invert_and_reattach(int v, int p_star);

  bool operator==(const AggTree& o) const {
    return inst_.get() == o.inst_.get() && parent_ == o.parent_;
  }

  // Full invariant check; throws FeasibilityError on any breakage.
  void self_check() const;

 private:
  void insert_child(int p, int c);
  void erase_child(int p, int c);

  std::shared_ptr<const Instance> inst_;
  std::vector<int> parent_;
  std::vector<std::vector<int>> children_;
  int root_ = 0;
};

// Number of vertices whose parent differs between the two trees.
int tree_distance(const AggTree& a, const AggTree& b);

}  // namespace mlas
