/*
 * Copyright 2026 The grgad Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "graph_algos.hpp"

#include <algorithm>
#include <deque>

namespace grgad {

std::vector<int> BfsDistances(const Adjacency& adj, int source) {
  std::vector<int> dist(adj.size(), kUnreached);
  std::deque<int> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const int node = queue.front();
    queue.pop_front();
    for (int next : adj[node]) {
      if (dist[next] != kUnreached) continue;
      dist[next] = dist[node] + 1;
      queue.push_back(next);
    }
  }
  return dist;
}

BfsForest BuildBfsForest(const Adjacency& adj) {
  const int n = static_cast<int>(adj.size());
  BfsForest forest;
  forest.parent.assign(n, -1);
  forest.depth.assign(n, kUnreached);
  forest.root.assign(n, -1);
  std::deque<int> queue;
  for (int start = 0; start < n; ++start) {
    if (forest.depth[start] != kUnreached) continue;
    ++forest.num_components;
    forest.depth[start] = 0;
    forest.root[start] = start;
    queue.push_back(start);
    while (!queue.empty()) {
      const int node = queue.front();
      queue.pop_front();
      for (int next : adj[node]) {
        if (forest.depth[next] != kUnreached) continue;
        forest.depth[next] = forest.depth[node] + 1;
        forest.parent[next] = node;
        forest.root[next] = start;
        queue.push_back(next);
      }
    }
  }
  return forest;
}

namespace {

std::vector<int> Canonicalize(std::vector<int> cycle) {
  const auto smallest = std::min_element(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), smallest, cycle.end());
  if (cycle.size() > 2 && cycle.back() < cycle[1]) std::reverse(cycle.begin() + 1, cycle.end());
  return cycle;
}

}  // namespace

std::vector<std::vector<int>> FundamentalCycleBasis(const Adjacency& adj) {
  const BfsForest forest = BuildBfsForest(adj);
  const int n = static_cast<int>(adj.size());
  std::vector<std::vector<int>> cycles;
  for (int u = 0; u < n; ++u) {
    for (int v : adj[u]) {
      if (v <= u) continue;
      if (forest.parent[v] == u || forest.parent[u] == v) continue;
      // Walk both endpoints up to their lowest common ancestor.
      std::vector<int> left{u};
      std::vector<int> right{v};
      int a = u;
      int b = v;
      while (a != b) {
        if (forest.depth[a] >= forest.depth[b]) {
          a = forest.parent[a];
          left.push_back(a);
        } else {
          b = forest.parent[b];
          right.push_back(b);
        }
      }
      // Both walks end at the ancestor; keep it once.
      right.pop_back();
      left.insert(left.end(), right.rbegin(), right.rend());
      cycles.push_back(Canonicalize(std::move(left)));
    }
  }
  return cycles;
}

std::vector<std::vector<int>> ConnectedComponents(const Adjacency& adj) {
  const BfsForest forest = BuildBfsForest(adj);
  std::vector<std::vector<int>> components;
  std::vector<int> index_of_root(adj.size(), -1);
  for (int node = 0; node < static_cast<int>(adj.size()); ++node) {
    const int r = forest.root[node];
    if (index_of_root[r] < 0) {
      index_of_root[r] = static_cast<int>(components.size());
      components.emplace_back();
    }
    components[index_of_root[r]].push_back(node);
  }
  return components;
}

int CountEdges(const Adjacency& adj) {
  std::size_t total = 0;
  for (const auto& list : adj) total += list.size();
  return static_cast<int>(total / 2);
}

}  // namespace grgad
