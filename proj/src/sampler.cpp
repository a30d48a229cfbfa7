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

#include "sampler.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <utility>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "graph_algos.hpp"

namespace grgad {

const char* PatternKindName(PatternKind kind) {
  switch (kind) {
    case PatternKind::kPath: return "path";
    case PatternKind::kTree: return "tree";
    case PatternKind::kCycle: return "cycle";
  }
  return "unknown";
}

PatternKind ParsePatternKind(const std::string& name) {
  if (name == "path") return PatternKind::kPath;
  if (name == "tree") return PatternKind::kTree;
  if (name == "cycle") return PatternKind::kCycle;
  Fail(ErrorCode::kParse, "unknown pattern kind: " + name);
}

void SamplerConfig::Validate() const {
  Require(max_path_len >= 2, "sampler.max_path_len must be >= 2");
  Require(max_tree_nodes >= 2, "sampler.max_tree_nodes must be >= 2");
  Require(max_cycle_len >= 3, "sampler.max_cycle_len must be >= 3");
  Require(tree_depth >= 1, "sampler.tree_depth must be >= 1");
}

namespace {

void CheckNode(const AttributedGraph& graph, int node) {
  if (!graph.IsValidNode(node)) {
    Fail(ErrorCode::kInvalidArgument,
         fmt::format("node {} is not in the graph (n = {})", node, graph.num_nodes()));
  }
}

std::optional<CandidateGroup> PathFromDistances(const AttributedGraph& graph, int v, int mu,
                                                const std::vector<int>& dist_to_mu,
                                                const SamplerConfig& config) {
  if (dist_to_mu[v] == kUnreached) return std::nullopt;
  if (dist_to_mu[v] + 1 > config.max_path_len) return std::nullopt;
  CandidateGroup group;
  group.provenance = Provenance{PatternKind::kPath, {v, mu}, 0};
  int current = v;
  group.nodes.push_back(current);
  while (current != mu) {
    // Neighbour lists are sorted, so the first hit is the lowest index.
    const auto& adj = graph.neighbors(current);
    const auto next = std::find_if(adj.begin(), adj.end(), [&](int w) {
      return dist_to_mu[w] == dist_to_mu[current] - 1;
    });
    group.edges.push_back(Edge::Make(current, *next));
    current = *next;
    group.nodes.push_back(current);
  }
  std::sort(group.edges.begin(), group.edges.end());
  return group;
}

struct BfsTree {
  std::vector<int> nodes;  // BFS order, root first
  std::vector<int> parent_of;
  std::vector<char> member;
};

BfsTree BuildTree(const AttributedGraph& graph, int v, int depth, const SamplerConfig& config) {
  const int n = graph.num_nodes();
  BfsTree tree;
  tree.parent_of.assign(n, -1);
  tree.member.assign(n, 0);
  std::vector<int> level(n, kUnreached);
  std::deque<int> queue{v};
  level[v] = 0;
  while (!queue.empty()) {
    const int node = queue.front();
    queue.pop_front();
    tree.nodes.push_back(node);
    if (level[node] == depth) continue;
    for (int next : graph.neighbors(node)) {
      if (level[next] != kUnreached) continue;
      level[next] = level[node] + 1;
      tree.parent_of[next] = node;
      queue.push_back(next);
    }
  }
  if (static_cast<int>(tree.nodes.size()) > config.max_tree_nodes) {
    // Deepest first, highest index first; every node is removed after all of
    // its (deeper) descendants, so the remainder stays a tree.
    std::vector<int> order(tree.nodes.begin() + 1, tree.nodes.end());
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return level[a] != level[b] ? level[a] > level[b] : a > b;
    });
    std::vector<char> dropped(n, 0);
    const std::size_t excess = tree.nodes.size() - static_cast<std::size_t>(config.max_tree_nodes);
    for (std::size_t i = 0; i < excess; ++i) dropped[order[i]] = 1;
    std::erase_if(tree.nodes, [&](int node) { return dropped[node] != 0; });
  }
  for (int node : tree.nodes) tree.member[node] = 1;
  return tree;
}

CandidateGroup TreeGroup(const BfsTree& tree, int v, int mu, int depth) {
  CandidateGroup group;
  group.nodes = tree.nodes;
  for (std::size_t i = 1; i < tree.nodes.size(); ++i) {
    group.edges.push_back(Edge::Make(tree.parent_of[tree.nodes[i]], tree.nodes[i]));
  }
  std::sort(group.edges.begin(), group.edges.end());
  group.provenance = Provenance{PatternKind::kTree, {v, mu}, depth};
  return group;
}

}  // namespace

std::optional<CandidateGroup> PathSearch(const AttributedGraph& graph, int v, int mu,
                                         const SamplerConfig& config) {
  config.Validate();
  CheckNode(graph, v);
  CheckNode(graph, mu);
  Require(v != mu, "path search needs two distinct nodes");
  return PathFromDistances(graph, v, mu, BfsDistances(graph.adjacency(), mu), config);
}

std::optional<CandidateGroup> TreeSearch(const AttributedGraph& graph, int v, int mu, int depth,
                                         const SamplerConfig& config) {
  config.Validate();
  CheckNode(graph, v);
  CheckNode(graph, mu);
  Require(depth >= 1, "tree search depth must be >= 1");
  const BfsTree tree = BuildTree(graph, v, depth, config);
  if (!tree.member[mu]) return std::nullopt;
  return TreeGroup(tree, v, mu, depth);
}

CycleIndex::CycleIndex(const AttributedGraph& graph)
    : cycles_(FundamentalCycleBasis(graph.adjacency())),
      cycles_of_node_(graph.num_nodes()) {
  for (std::size_t c = 0; c < cycles_.size(); ++c) {
    for (int node : cycles_[c]) cycles_of_node_[node].push_back(static_cast<int>(c));
  }
}

std::vector<CandidateGroup> CycleIndex::CyclesThrough(int v, const SamplerConfig& config) const {
  std::vector<CandidateGroup> out;
  for (int c : cycles_of_node_.at(v)) {
    const auto& cycle = cycles_[c];
    if (static_cast<int>(cycle.size()) > config.max_cycle_len) continue;
    CandidateGroup group;
    group.nodes = cycle;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      group.edges.push_back(Edge::Make(cycle[i], cycle[(i + 1) % cycle.size()]));
    }
    std::sort(group.edges.begin(), group.edges.end());
    group.provenance = Provenance{PatternKind::kCycle, {v}, 0};
    out.push_back(std::move(group));
  }
  return out;
}

std::vector<CandidateGroup> CycleSearch(const AttributedGraph& graph, int v,
                                        const SamplerConfig& config) {
  config.Validate();
  CheckNode(graph, v);
  return CycleIndex(graph).CyclesThrough(v, config);
}

std::vector<CandidateGroup> SampleCandidateGroups(const AttributedGraph& graph,
                                                  const std::vector<int>& anchor_list,
                                                  const SamplerConfig& config) {
  config.Validate();
  Require(!anchor_list.empty(), "candidate sampling needs at least one anchor");
  for (int a : anchor_list) CheckNode(graph, a);
  std::vector<int> anchors = anchor_list;
  std::sort(anchors.begin(), anchors.end());
  anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());

  std::vector<std::vector<int>> dist_to(anchors.size());
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    dist_to[i] = BfsDistances(graph.adjacency(), anchors[i]);
  }
  const CycleIndex cycles(graph);

  std::vector<CandidateGroup> groups;
  std::set<std::pair<PatternKind, std::vector<int>>> seen;
  auto add = [&](CandidateGroup group) {
    std::vector<int> key = group.nodes;
    std::sort(key.begin(), key.end());
    if (seen.emplace(group.provenance.kind, std::move(key)).second) {
      groups.push_back(std::move(group));
    }
  };

  for (std::size_t i = 0; i < anchors.size(); ++i) {
    const int v = anchors[i];
    const BfsTree tree = BuildTree(graph, v, config.tree_depth, config);
    for (std::size_t j = 0; j < anchors.size(); ++j) {
      const int mu = anchors[j];
      if (mu == v) continue;
      if (auto path = PathFromDistances(graph, v, mu, dist_to[j], config)) add(std::move(*path));
      if (tree.member[mu]) add(TreeGroup(tree, v, mu, config.tree_depth));
    }
    for (auto& cycle : cycles.CyclesThrough(v, config)) add(std::move(cycle));
  }
  spdlog::info("sampled {} candidate groups from {} anchors", groups.size(), anchors.size());
  return groups;
}

}  // namespace grgad
