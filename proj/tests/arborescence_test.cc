// Copyright 2026 The BLLL Links Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>
#include <vector>

#include "doctest.h"
#include "blll/arborescence.h"

namespace blll {
namespace {

// Every non-root node has one outgoing edge and follows a path to the root.
bool IsInTree(int num, int root, const std::vector<WeightedEdge>& edges) {
  std::vector<int> next(num, -1);
  for (const auto& e : edges) {
    if (e.from == root || next[e.from] >= 0) return false;
    next[e.from] = e.to;
  }
  for (int v = 0; v < num; ++v) {
    int x = v;
    for (int steps = 0; x != root; ++steps) {
      if (steps > num || next[x] < 0) return false;
      x = next[x];
    }
  }
  return true;
}

double Cost(const std::vector<WeightedEdge>& edges) {
  double c = 0.0;
  for (const auto& e : edges) c += e.weight;
  return c;
}

TEST_CASE("hand-checked in-trees") {
  // 0 <-> 1 <-> 2 with a costly shortcut 2 -> 0.
  const std::vector<WeightedEdge> edges = {
      {0, 1, 1.0}, {1, 0, 2.0}, {1, 2, 0.5}, {2, 1, 0.0}, {2, 0, 5.0}};
  auto into0 = MinInArborescence(3, edges, 0);
  REQUIRE(into0);
  CHECK(into0->cost == 2.0);
  CHECK(into0->edges == std::vector<WeightedEdge>{{1, 0, 2.0}, {2, 1, 0.0}});
  auto into2 = MinInArborescence(3, edges, 2);
  REQUIRE(into2);
  CHECK(into2->cost == 1.5);
}

TEST_CASE("contraction of a zero-cost cycle") {
  // Cheap cycle 1 -> 2 -> 3 -> 1; entering costs differ per node.
  const std::vector<WeightedEdge> edges = {
      {1, 2, 0.0}, {2, 3, 0.0}, {3, 1, 0.0},
      {1, 0, 4.0}, {2, 0, 1.0}, {3, 0, 3.0}};
  auto tree = MinInArborescence(4, edges, 0);
  REQUIRE(tree);
  CHECK(tree->cost == 1.0);
  CHECK(IsInTree(4, 0, tree->edges));
}

TEST_CASE("unreachable root") {
  const std::vector<WeightedEdge> edges = {{0, 1, 1.0}, {1, 0, 1.0}, {2, 0, 1.0}};
  CHECK_FALSE(MinInArborescence(3, edges, 2));
  CHECK_FALSE(ExhaustiveMinInArborescence(3, edges, 2));
  CHECK(MinInArborescence(3, edges, 0));
}

TEST_CASE("out-arborescence orientation") {
  const std::vector<WeightedEdge> edges = {{0, 1, 3.0}, {0, 2, 1.0}, {2, 1, 1.0}};
  auto tree = MinOutArborescence(3, edges, 0);
  REQUIRE(tree);
  CHECK(tree->cost == 2.0);
  CHECK(tree->edges == std::vector<WeightedEdge>{{0, 2, 1.0}, {2, 1, 1.0}});
}

TEST_CASE("exact algorithm matches enumeration on random graphs") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 400; ++trial) {
    const int num = 1 + trial % 8;
    std::vector<WeightedEdge> edges;
    for (int x = 0; x < num; ++x) {
      for (int y = 0; y < num; ++y) {
        if (x == y || unit(rng) < 0.45) continue;
        // Small integer weights make ties common.
        edges.push_back({x, y, std::floor(unit(rng) * 4)});
      }
    }
    for (int root = 0; root < num; ++root) {
      const auto fast = MinInArborescence(num, edges, root);
      const auto slow = ExhaustiveMinInArborescence(num, edges, root);
      CAPTURE(trial);
      REQUIRE(fast.has_value() == slow.has_value());
      if (!fast) continue;
      CHECK(fast->cost == slow->cost);
      CHECK(IsInTree(num, root, fast->edges));
      CHECK(Cost(fast->edges) == fast->cost);
    }
  }
}

}  // namespace
}  // namespace blll
