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

#include "blll/arborescence.h"

#include <algorithm>
#include <limits>
#include <tuple>

namespace blll {
namespace {

struct WorkEdge {
  int from;
  int to;
  double weight;
  int key;  // rank of the original edge in (from, to) order
};

bool Better(const WorkEdge& a, const WorkEdge& b) {
  return std::tie(a.weight, a.key) < std::tie(b.weight, b.key);
}

// Returns indices into `edges` forming the optimal arborescence, or nullopt.
std::optional<std::vector<int>> Solve(int num_nodes, int root,
                                      const std::vector<WorkEdge>& edges) {
  std::vector<int> best(num_nodes, -1);
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    const WorkEdge& edge = edges[e];
    if (edge.from == edge.to || edge.to == root) continue;
    if (best[edge.to] < 0 || Better(edge, edges[best[edge.to]])) {
      best[edge.to] = e;
    }
  }
  for (int v = 0; v < num_nodes; ++v) {
    if (v != root && best[v] < 0) return std::nullopt;
  }

  // Label the cycles of the best-incoming graph.
  std::vector<int> comp(num_nodes, -1);
  std::vector<int> visit(num_nodes, -1);
  std::vector<bool> on_cycle(num_nodes, false);
  int count = 0;
  for (int v = 0; v < num_nodes; ++v) {
    int x = v;
    while (x != root && comp[x] < 0 && visit[x] != v) {
      visit[x] = v;
      x = edges[best[x]].from;
    }
    if (x != root && comp[x] < 0 && visit[x] == v) {
      for (int y = edges[best[x]].from; y != x; y = edges[best[y]].from) {
        comp[y] = count;
        on_cycle[y] = true;
      }
      comp[x] = count++;
      on_cycle[x] = true;
    }
  }
  if (count == 0) {
    std::vector<int> chosen;
    for (int v = 0; v < num_nodes; ++v) {
      if (v != root) chosen.push_back(best[v]);
    }
    return chosen;
  }
  for (int v = 0; v < num_nodes; ++v) {
    if (comp[v] < 0) comp[v] = count++;
  }

  std::vector<WorkEdge> contracted;
  std::vector<int> origin;
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    const WorkEdge& edge = edges[e];
    const int cu = comp[edge.from];
    const int cv = comp[edge.to];
    if (cu == cv || edge.to == root) continue;
    const double shift = on_cycle[edge.to] ? edges[best[edge.to]].weight : 0.0;
    contracted.push_back({cu, cv, edge.weight - shift, edge.key});
    origin.push_back(e);
  }
  auto sub = Solve(count, comp[root], contracted);
  if (!sub) return std::nullopt;

  std::vector<int> chosen;
  std::vector<bool> entered(num_nodes, false);
  for (int k : *sub) {
    const int e = origin[k];
    chosen.push_back(e);
    entered[edges[e].to] = true;
  }
  for (int v = 0; v < num_nodes; ++v) {
    if (on_cycle[v] && !entered[v]) chosen.push_back(best[v]);
  }
  return chosen;
}

Arborescence Collect(std::vector<WeightedEdge> picked) {
  Arborescence out;
  std::sort(picked.begin(), picked.end(), [](const auto& a, const auto& b) {
    return std::tie(a.from, a.to) < std::tie(b.from, b.to);
  });
  for (const WeightedEdge& e : picked) out.cost += e.weight;
  out.edges = std::move(picked);
  return out;
}

}  // namespace

std::optional<Arborescence> MinOutArborescence(
    int num_nodes, std::span<const WeightedEdge> edges, int root) {
  std::vector<int> order(edges.size());
  for (size_t e = 0; e < edges.size(); ++e) order[e] = static_cast<int>(e);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::tie(edges[a].from, edges[a].to) <
           std::tie(edges[b].from, edges[b].to);
  });
  std::vector<WorkEdge> work(edges.size());
  for (size_t r = 0; r < order.size(); ++r) {
    const WeightedEdge& e = edges[order[r]];
    work[order[r]] = {e.from, e.to, e.weight, static_cast<int>(r)};
  }
  auto chosen = Solve(num_nodes, root, work);
  if (!chosen) return std::nullopt;
  std::vector<WeightedEdge> picked;
  for (int e : *chosen) picked.push_back(edges[e]);
  return Collect(std::move(picked));
}

std::optional<Arborescence> MinInArborescence(
    int num_nodes, std::span<const WeightedEdge> edges, int root) {
  std::vector<WeightedEdge> reversed;
  reversed.reserve(edges.size());
  for (const WeightedEdge& e : edges) reversed.push_back({e.to, e.from, e.weight});
  auto tree = MinOutArborescence(num_nodes, reversed, root);
  if (!tree) return std::nullopt;
  std::vector<WeightedEdge> picked;
  for (const WeightedEdge& e : tree->edges) picked.push_back({e.to, e.from, e.weight});
  return Collect(std::move(picked));
}

std::optional<Arborescence> ExhaustiveMinInArborescence(
    int num_nodes, std::span<const WeightedEdge> edges, int root) {
  std::vector<std::vector<WeightedEdge>> out_edges(num_nodes);
  for (const WeightedEdge& e : edges) {
    if (e.from != e.to) out_edges[e.from].push_back(e);
  }
  std::vector<int> order;
  for (int x = 0; x < num_nodes; ++x) {
    if (x != root) order.push_back(x);
  }
  std::vector<int> parent(num_nodes, -1);
  std::vector<WeightedEdge> current;
  std::optional<std::vector<WeightedEdge>> best;
  double best_cost = std::numeric_limits<double>::infinity();

  auto assign = [&](auto&& self, size_t k, double cost) -> void {
    if (k == order.size()) {
      if (cost < best_cost) {
        best_cost = cost;
        best = current;
      }
      return;
    }
    const int x = order[k];
    for (const WeightedEdge& e : out_edges[x]) {
      int walk = e.to;
      while (walk != root && walk != x && parent[walk] >= 0) walk = parent[walk];
      if (walk == x) continue;
      parent[x] = e.to;
      current.push_back(e);
      self(self, k + 1, cost + e.weight);
      current.pop_back();
      parent[x] = -1;
    }
  };
  assign(assign, 0, 0.0);
  if (!best) return std::nullopt;
  return Collect(std::move(*best));
}

}  // namespace blll
