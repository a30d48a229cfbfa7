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

// Checks the destruction/preservation properties of the two augmented views
// of one group. Returns an empty string when all hold, else the first
// violation.

#ifndef GRGAD_TESTS_AUGMENTATION_INVARIANTS_HPP_
#define GRGAD_TESTS_AUGMENTATION_INVARIANTS_HPP_

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "graph_algos.hpp"
#include "patterns.hpp"

namespace grgad::testing {

inline bool HasAll(const std::set<Edge>& edges, const std::vector<int>& seq, bool closed) {
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    if (!edges.contains(Edge::Make(seq[i], seq[i + 1]))) return false;
  }
  return !closed || seq.size() < 3 || edges.contains(Edge::Make(seq.back(), seq.front()));
}

// Component label of every node of `group` (host ids).
inline std::map<int, int> Components(const CandidateGroup& group) {
  std::vector<int> ids = group.nodes;
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto local = [&](int id) {
    return static_cast<int>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  std::vector<Edge> edges;
  for (const Edge& e : group.edges) edges.push_back(Edge::Make(local(e.u), local(e.v)));
  const auto comps = ConnectedComponents(BuildAdjacency(static_cast<int>(ids.size()), edges));
  std::map<int, int> label;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (int x : comps[c]) label[ids[x]] = static_cast<int>(c);
  }
  return label;
}

inline std::string CheckAugmentationInvariants(const CandidateGroup& group,
                                               const Matrix& attributes, std::uint64_t seed) {
  const PatternDecomposition patterns = FindPatterns(group);
  const std::set<int> members(group.nodes.begin(), group.nodes.end());
  const std::set<Edge> group_edges(group.edges.begin(), group.edges.end());

  // Pattern structure.
  for (const auto& tree : patterns.trees) {
    if (tree.children.size() < 2) return "tree root has fewer than two children";
    for (const Edge& e : tree.edges) {
      if (!group_edges.contains(e)) return "tree edge outside the group";
    }
  }
  for (const auto& path : patterns.paths) {
    if (path.size() < 3 || !HasAll(group_edges, path, false)) return "malformed path pattern";
  }
  for (const auto& cycle : patterns.cycles) {
    if (cycle.size() < 3 || !HasAll(group_edges, cycle, true)) return "malformed cycle pattern";
  }

  const int first_new = *std::max_element(group.nodes.begin(), group.nodes.end()) + 1;

  // Negative view: breaks every pattern.
  AugmentedView neg;
  try {
    neg = NegativeView(group, patterns, seed);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kDegenerate) return "";  // skipped by training
    throw;
  }
  if (!neg.added.empty()) return "negative view adds nodes";
  const std::set<int> removed(neg.removed.begin(), neg.removed.end());
  for (int r : removed) {
    if (!members.contains(r)) return "negative view removes a non-member";
  }
  const CandidateGroup neg_group = ViewAsGroup(group, neg, first_new);
  for (const auto& tree : patterns.trees) {
    if (!removed.contains(tree.root)) return "tree root survives the negative view";
  }
  const auto label = Components(neg_group);
  for (const auto& path : patterns.paths) {
    const std::size_t mid = path.size() / 2;
    if (!removed.contains(path[mid])) return "path middle survives the negative view";
    for (std::size_t i = 0; i < mid; ++i) {
      for (std::size_t j = mid + 1; j < path.size(); ++j) {
        if (removed.contains(path[i]) || removed.contains(path[j])) continue;
        if (label.at(path[i]) == label.at(path[j])) return "path still spans its removed middle";
      }
    }
  }
  if (!patterns.cycles.empty()) {
    const std::size_t before = patterns.cycles.size();
    const std::size_t after = neg_group.nodes.empty() ? 0 : FindPatterns(neg_group).cycles.size();
    if (after >= before) return "negative view keeps every basis cycle";
  }
  if (!patterns.empty() && neg_group.nodes.size() >= members.size()) {
    return "negative view is not smaller";
  }

  // Positive view: extends every pattern.
  const AugmentedView pos = PositiveView(group, patterns, attributes, seed);
  if (!pos.removed.empty()) return "positive view removes nodes";
  for (const AddedNode& a : pos.added) {
    if (!a.attributes.allFinite()) return "positive view adds non-finite attributes";
  }
  const CandidateGroup pos_group = ViewAsGroup(group, pos, first_new);
  const std::set<Edge> pos_edges(pos_group.edges.begin(), pos_group.edges.end());
  std::map<int, int> pos_degree;
  for (const Edge& e : pos_edges) {
    ++pos_degree[e.u];
    ++pos_degree[e.v];
  }
  std::size_t next = 0;  // added nodes come as trees, then paths, then cycles
  for (const auto& tree : patterns.trees) {
    for (const Edge& e : tree.edges) {
      if (!pos_edges.contains(e)) return "tree lost in the positive view";
    }
    const int added = first_new + static_cast<int>(next++);
    if (!pos_edges.contains(Edge::Make(tree.root, added))) return "tree root gained no child";
  }
  for (const auto& path : patterns.paths) {
    if (!HasAll(pos_edges, path, false)) return "path lost in the positive view";
    const int added = first_new + static_cast<int>(next++);
    const int end = std::min(path.front(), path.back());
    if (!pos_edges.contains(Edge::Make(end, added)) || pos_degree[added] != 1) {
      return "path not extended at its endpoint";
    }
  }
  for (const auto& cycle : patterns.cycles) {
    if (!HasAll(pos_edges, cycle, true)) return "cycle lost in the positive view";
    const int added = first_new + static_cast<int>(next++);
    std::vector<int> nbrs;
    for (const Edge& e : pos_edges) {
      if (e.u == added) nbrs.push_back(e.v);
      if (e.v == added) nbrs.push_back(e.u);
    }
    // Replacing the edge (n1, n2) by n1 - added - n2 lengthens the cycle.
    bool consecutive = false;
    if (nbrs.size() == 2) {
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        if (Edge::Make(cycle[i], cycle[(i + 1) % cycle.size()]) == Edge::Make(nbrs[0], nbrs[1])) {
          consecutive = true;
        }
      }
    }
    if (!consecutive) return "cycle not extended through an adjacent pair";
  }
  if (pos_group.nodes.size() < members.size()) return "positive view is smaller";
  return "";
}

}  // namespace grgad::testing

#endif  // GRGAD_TESTS_AUGMENTATION_INVARIANTS_HPP_
