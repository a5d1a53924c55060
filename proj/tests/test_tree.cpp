#include "doctest.h"
#include "helpers.hpp"
#include "mlas/errors.hpp"

using namespace mlas;
using namespace testutil;

namespace {

// Dense 4-point cluster: every pair is within range, sink is vertex 0.
std::shared_ptr<const Instance> clique4() {
  return inst_of({{0.5, 0.5}, {0.53, 0.5}, {0.5, 0.53}, {0.53, 0.53}}, 0.2);
}

}  // namespace

TEST_SUITE("tree") {

TEST_CASE("descendant checks are reflexive and directional") {
  auto inst = path_instance(3);  // 0 <- 1 <- 2
  AggTree t(inst, {-1, 0, 1});
  CHECK(t.is_descendant(2, 1));
  CHECK_FALSE(t.is_descendant(1, 2));
  CHECK(t.is_descendant(1, 1));
  CHECK(t.is_descendant(2, 0));
}

TEST_CASE("construction validates parent maps") {
  auto inst = path_instance(3);
  CHECK_THROWS_AS(AggTree(inst, {-1, 0, 0}), FeasibilityError);   // (2,0) is not an edge
  CHECK_THROWS_AS(AggTree(inst, {1, -1, 1}), FeasibilityError);   // root must be the sink
  CHECK_THROWS_AS(AggTree(inst, {-1, 2, 1}), FeasibilityError);   // 1 <-> 2 cycle
}

TEST_CASE("reattach moves a single parent") {
  auto inst = clique4();
  AggTree star(inst, {-1, 0, 0, 0});
  AggTree t = star;
  t.reattach(3, 1);
  CHECK(t.parent(3) == 1);
  CHECK(t.parent(1) == 0);
  CHECK(t.children(1) == std::vector<int>{3});
  t.self_check();

  CHECK_THROWS_AS(t.reattach(1, 3), FeasibilityError);  // 3 sits under 1
  AggTree back = t;
  back.reattach(3, 0);
  CHECK(back == star);
}

TEST_CASE("reattach rejects non-edges and the root") {
  auto inst = path_instance(4);  // 0 <- 1 <- 2 <- 3
  AggTree t(inst, {-1, 0, 1, 2});
  CHECK_THROWS_AS(t.reattach(3, 0), FeasibilityError);  // not an edge
  CHECK_THROWS_AS(t.reattach(0, 1), FeasibilityError);  // root
}

TEST_CASE("invert_and_reattach on the smallest legal case") {
  // chain 0 <- 1 <- 2 with the extra edge (2, 0)
  auto inst = inst_of({{0.5, 0.5}, {0.62, 0.5}, {0.56, 0.62}}, 0.15);
  REQUIRE(inst->has_edge(0, 2));
  AggTree t(inst, {-1, 0, 1});
  t.invert_and_reattach(2, 0);
  CHECK(t.parent(2) == 0);
  CHECK(t.parent(1) == 2);
  t.self_check();
}

TEST_CASE("invert_and_reattach precondition and cycle errors") {
  auto inst = clique4();
  AggTree t(inst, {-1, 0, 1, 2});
  CHECK_THROWS_AS(t.invert_and_reattach(1, 3), FeasibilityError);  // root's child
  CHECK_THROWS_AS(t.invert_and_reattach(3, 3), FeasibilityError);  // self
  // target inside the moved branch closes a cycle through the inverted arc
  AggTree u(inst, {-1, 0, 1, 1});
  CHECK_THROWS_AS(u.invert_and_reattach(2, 3), FeasibilityError);
}

TEST_CASE("siblings stay in place when a deeper vertex inverts") {
  // 0 <- 1 <- {2, 3}; vertex 2 also reaches the sink directly
  auto inst = clique4();
  AggTree t(inst, {-1, 0, 1, 1});
  t.invert_and_reattach(2, 0);
  CHECK(t.parent(2) == 0);
  CHECK(t.parent(1) == 2);
  CHECK(t.parent(3) == 1);
  t.self_check();
}

TEST_CASE("tree distance counts differing parents") {
  auto inst = clique4();
  AggTree star(inst, {-1, 0, 0, 0});
  AggTree path(inst, {-1, 0, 1, 2});
  CHECK(tree_distance(star, star) == 0);
  AggTree one = star;
  one.reattach(3, 1);
  CHECK(tree_distance(star, one) == 1);
  CHECK(tree_distance(star, path) == 2);

  auto other = clique4();
  AggTree foreign(other, {-1, 0, 0, 0});
  CHECK_THROWS_AS(tree_distance(star, foreign), FeasibilityError);
}

TEST_CASE("tree distance is a metric on sampled trees") {
  auto inst = generate_instance(18, 0.45, 21);
  Rng rng(5);
  for (int round = 0; round < 25; ++round) {
    AggTree a = random_tree(inst, rng);
    AggTree b = random_tree(inst, rng);
    AggTree c = random_tree(inst, rng);
    CHECK(tree_distance(a, b) == tree_distance(b, a));
    CHECK(tree_distance(a, b) >= 0);
    CHECK((tree_distance(a, b) == 0) == (a == b));
    CHECK(tree_distance(a, c) <= tree_distance(a, b) + tree_distance(b, c));
  }
}

TEST_CASE("random move sequences preserve the invariants") {
  auto inst = generate_instance(25, 0.4, 33);
  Rng rng(7);
  AggTree t = random_shortest_path(inst, rng);
  int applied = 0;
  for (int it = 0; it < 400; ++it) {
    const auto& arcs = inst->arcs();
    const auto [v, u] = arcs[rng.next_below(arcs.size())];
    if (rng.uniform01() < 0.5) {
      if (t.can_reattach(v, u) && u != t.parent(v)) {
        t.reattach(v, u);
        ++applied;
      }
    } else if (t.can_invert_and_reattach(v, u)) {
      t.invert_and_reattach(v, u);
      ++applied;
    }
  }
  CHECK(applied > 50);
  t.self_check();
}

}  // TEST_SUITE
