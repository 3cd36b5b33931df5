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

#ifndef BLLL_ARBORESCENCE_H_
#define BLLL_ARBORESCENCE_H_

#include <optional>
#include <span>
#include <vector>

namespace blll {

struct WeightedEdge {
  int from = 0;
  int to = 0;
  double weight = 0.0;

  bool operator==(const WeightedEdge&) const = default;
};

struct Arborescence {
  double cost = 0.0;
  // Edges in their original orientation, sorted by (from, to).
  std::vector<WeightedEdge> edges;
};

// Minimum-cost spanning arborescence in which every node other than `root`
// has exactly one incoming edge (Chu-Liu/Edmonds contraction). Returns
// nullopt when some node is unreachable from the root. Self-loops are
// ignored; among equal-cost choices the lexicographically smaller (from, to)
// edge is preferred, which only affects the returned edge set.
std::optional<Arborescence> MinOutArborescence(
    int num_nodes, std::span<const WeightedEdge> edges, int root);

// Minimum-cost spanning tree directed into `root`: every other node has
// exactly one outgoing edge and a unique path to the root.
std::optional<Arborescence> MinInArborescence(
    int num_nodes, std::span<const WeightedEdge> edges, int root);

// Reference implementation by enumerating every in-tree; exponential, meant
// for cross-checking on a handful of nodes.
std::optional<Arborescence> ExhaustiveMinInArborescence(
    int num_nodes, std::span<const WeightedEdge> edges, int root);

}  // namespace blll

#endif  // BLLL_ARBORESCENCE_H_
