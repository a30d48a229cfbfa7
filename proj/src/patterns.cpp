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

#include "patterns.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "graph_algos.hpp"

namespace grgad {
namespace {

// Group re-indexed so that local id order equals host id order.
struct LocalGroup {
  std::vector<int> host;  // sorted host ids
  Adjacency adj;

  int Local(int host_id) const {
    return static_cast<int>(std::lower_bound(host.begin(), host.end(), host_id) - host.begin());
  }
};

LocalGroup Localize(const CandidateGroup& group) {
  LocalGroup local;
  local.host = group.nodes;
  std::sort(local.host.begin(), local.host.end());
  local.host.erase(std::unique(local.host.begin(), local.host.end()), local.host.end());
  std::vector<Edge> edges;
  for (const Edge& e : group.edges) {
    const auto in_group = [&](int x) {
      return std::binary_search(local.host.begin(), local.host.end(), x);
    };
    if (!in_group(e.u) || !in_group(e.v)) {
      Fail(ErrorCode::kInvalidArgument, "group edge endpoint is not a group member");
    }
    edges.push_back(Edge::Make(local.Local(e.u), local.Local(e.v)));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  local.adj = BuildAdjacency(static_cast<int>(local.host.size()), edges);
  return local;
}

RowVector MeanOf(const std::vector<int>& host_ids, const Matrix& attributes) {
  RowVector mean = RowVector::Zero(attributes.cols());
  for (int id : host_ids) mean += attributes.row(id);
  return mean / static_cast<double>(host_ids.size());
}

}  // namespace

PatternDecomposition FindPatterns(const CandidateGroup& group) {
  if (group.nodes.empty()) Fail(ErrorCode::kInvalidArgument, "cannot decompose an empty group");
  const LocalGroup local = Localize(group);
  const int k = static_cast<int>(local.host.size());
  PatternDecomposition out;

  const auto local_cycles = FundamentalCycleBasis(local.adj);
  std::set<Edge> cycle_edges;
  for (const auto& cycle : local_cycles) {
    std::vector<int> host_cycle;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      cycle_edges.insert(Edge::Make(cycle[i], cycle[(i + 1) % cycle.size()]));
      host_cycle.push_back(local.host[cycle[i]]);
    }
    out.cycles.push_back(std::move(host_cycle));
  }

  Adjacency residual(k);
  for (int a = 0; a < k; ++a) {
    for (int b : local.adj[a]) {
      if (!cycle_edges.contains(Edge::Make(a, b))) residual[a].push_back(b);
    }
  }

  // Paths: chains of low-degree nodes in the residual forest.
  std::vector<char> visited(k, 0);
  auto chain_member = [&](int x) { return local.adj[x].size() <= 2 && !residual[x].empty(); };
  for (int start = 0; start < k; ++start) {
    if (visited[start] || !chain_member(start)) continue;
    // Collect the component, then walk it from its lower-index end.
    std::vector<int> component;
    std::vector<int> stack{start};
    visited[start] = 1;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      component.push_back(x);
      for (int y : residual[x]) {
        if (!visited[y] && chain_member(y)) {
          visited[y] = 1;
          stack.push_back(y);
        }
      }
    }
    if (component.size() < 3) continue;
    std::vector<int> ends;
    for (int x : component) {
      const auto inside = std::count_if(residual[x].begin(), residual[x].end(), [&](int y) {
        return chain_member(y);
      });
      if (inside <= 1) ends.push_back(x);
    }
    int current = *std::min_element(ends.begin(), ends.end());
    int previous = -1;
    std::vector<int> path;
    while (current >= 0) {
      path.push_back(local.host[current]);
      int next = -1;
      for (int y : residual[current]) {
        if (y != previous && chain_member(y)) next = y;
      }
      previous = current;
      current = next;
    }
    out.paths.push_back(std::move(path));
  }

  // Trees: branching nodes of the oriented residual forest.
  const BfsForest forest = BuildBfsForest(residual);
  std::vector<std::vector<int>> children(k);
  for (int x = 0; x < k; ++x) {
    if (forest.parent[x] >= 0) children[forest.parent[x]].push_back(x);
  }
  for (int r = 0; r < k; ++r) {
    if (residual[r].size() < 3) continue;
    TreePattern tree;
    tree.root = local.host[r];
    for (int c : children[r]) tree.children.push_back(local.host[c]);
    std::vector<int> frontier{r};
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      const int x = frontier[i];
      tree.nodes.push_back(local.host[x]);
      for (int c : children[x]) {
        tree.edges.push_back(Edge::Make(local.host[x], local.host[c]));
        frontier.push_back(c);
      }
    }
    std::sort(tree.edges.begin(), tree.edges.end());
    out.trees.push_back(std::move(tree));
  }

  auto lowest = [](const std::vector<int>& v) { return *std::min_element(v.begin(), v.end()); };
  std::stable_sort(out.paths.begin(), out.paths.end(),
                   [&](const auto& a, const auto& b) { return lowest(a) < lowest(b); });
  std::stable_sort(out.cycles.begin(), out.cycles.end(),
                   [&](const auto& a, const auto& b) { return lowest(a) < lowest(b); });
  std::stable_sort(out.trees.begin(), out.trees.end(), [&](const auto& a, const auto& b) {
    return lowest(a.nodes) < lowest(b.nodes);
  });
  return out;
}

std::vector<std::pair<int, int>> CycleEditPairs(const PatternDecomposition& patterns,
                                                std::uint64_t seed) {
  SeededRng rng(seed);
  std::vector<std::pair<int, int>> pairs;
  for (const auto& cycle : patterns.cycles) {
    const auto at = static_cast<std::size_t>(rng.UniformInt(cycle.size()));
    pairs.emplace_back(cycle[at], cycle[(at + 1) % cycle.size()]);
  }
  return pairs;
}

AugmentedView NegativeView(const CandidateGroup& group, const PatternDecomposition& patterns,
                           std::uint64_t seed) {
  std::set<int> removed;
  for (const auto& tree : patterns.trees) removed.insert(tree.root);
  for (const auto& path : patterns.paths) removed.insert(path[path.size() / 2]);
  for (const auto& [n1, n2] : CycleEditPairs(patterns, seed)) {
    removed.insert(n1);
    removed.insert(n2);
  }
  std::set<int> members(group.nodes.begin(), group.nodes.end());
  if (removed.size() >= members.size()) {
    Fail(ErrorCode::kDegenerate, "negative view removes every node of the group");
  }
  AugmentedView view;
  view.removed.assign(removed.begin(), removed.end());
  view.polarity = Polarity::kNegative;
  return view;
}

AugmentedView PositiveView(const CandidateGroup& group, const PatternDecomposition& patterns,
                           const Matrix& attributes, std::uint64_t seed) {
  (void)group;
  AugmentedView view;
  view.polarity = Polarity::kPositive;
  for (const auto& tree : patterns.trees) {
    view.added.push_back(AddedNode{MeanOf(tree.children, attributes), {tree.root}});
  }
  for (const auto& path : patterns.paths) {
    const int endpoint = std::min(path.front(), path.back());
    view.added.push_back(AddedNode{MeanOf(path, attributes), {endpoint}});
  }
  const auto pairs = CycleEditPairs(patterns, seed);
  for (std::size_t i = 0; i < patterns.cycles.size(); ++i) {
    view.added.push_back(
        AddedNode{MeanOf(patterns.cycles[i], attributes), {pairs[i].first, pairs[i].second}});
  }
  return view;
}

ViewGraph MaterializeGroup(const CandidateGroup& group, const Matrix& attributes) {
  return MaterializeView(group, AugmentedView{}, attributes);
}

ViewGraph MaterializeView(const CandidateGroup& group, const AugmentedView& view,
                          const Matrix& attributes) {
  std::map<int, int> local_of;
  ViewGraph out;
  for (int id : group.nodes) {
    if (std::binary_search(view.removed.begin(), view.removed.end(), id)) continue;
    if (local_of.contains(id)) continue;
    local_of.emplace(id, static_cast<int>(out.host_ids.size()));
    out.host_ids.push_back(id);
  }
  const int survivors = static_cast<int>(out.host_ids.size());
  const int total = survivors + static_cast<int>(view.added.size());
  if (total == 0) Fail(ErrorCode::kDegenerate, "view has no nodes");
  out.attributes.resize(total, attributes.cols());
  for (int i = 0; i < survivors; ++i) out.attributes.row(i) = attributes.row(out.host_ids[i]);
  for (const Edge& e : group.edges) {
    const auto a = local_of.find(e.u);
    const auto b = local_of.find(e.v);
    if (a != local_of.end() && b != local_of.end()) {
      out.edges.push_back(Edge::Make(a->second, b->second));
    }
  }
  for (std::size_t i = 0; i < view.added.size(); ++i) {
    const int local = survivors + static_cast<int>(i);
    out.attributes.row(local) = view.added[i].attributes;
    out.host_ids.push_back(-1);
    for (int target : view.added[i].attach_to) {
      const auto it = local_of.find(target);
      if (it == local_of.end()) {
        Fail(ErrorCode::kInvalidArgument, "added node attaches to a node outside the view");
      }
      out.edges.push_back(Edge::Make(local, it->second));
    }
  }
  std::sort(out.edges.begin(), out.edges.end());
  out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
  return out;
}

CandidateGroup ViewAsGroup(const CandidateGroup& group, const AugmentedView& view,
                           int first_new_id) {
  CandidateGroup out;
  out.provenance = group.provenance;
  for (int id : group.nodes) {
    if (!std::binary_search(view.removed.begin(), view.removed.end(), id)) out.nodes.push_back(id);
  }
  for (const Edge& e : group.edges) {
    if (!std::binary_search(view.removed.begin(), view.removed.end(), e.u) &&
        !std::binary_search(view.removed.begin(), view.removed.end(), e.v)) {
      out.edges.push_back(e);
    }
  }
  for (std::size_t i = 0; i < view.added.size(); ++i) {
    const int id = first_new_id + static_cast<int>(i);
    out.nodes.push_back(id);
    for (int target : view.added[i].attach_to) out.edges.push_back(Edge::Make(id, target));
  }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

}  // namespace grgad
