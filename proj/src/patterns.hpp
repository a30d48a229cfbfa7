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

// Topology patterns inside a candidate group and the two augmentations built
// on them: the positive view extends every pattern, the negative view breaks
// every pattern.

#ifndef GRGAD_PATTERNS_HPP_
#define GRGAD_PATTERNS_HPP_

#include <cstdint>
#include <vector>

#include "graph.hpp"
#include "sampler.hpp"

namespace grgad {

struct TreePattern {
  int root = 0;
  std::vector<int> children;  // direct children of the root
  std::vector<int> nodes;     // root first, then descendants in BFS order
  std::vector<Edge> edges;
};

// All node ids are host-graph ids.
struct PatternDecomposition {
  std::vector<TreePattern> trees;
  std::vector<std::vector<int>> paths;   // ordered, >= 3 nodes
  std::vector<std::vector<int>> cycles;  // cyclic order

  bool empty() const { return trees.empty() && paths.empty() && cycles.empty(); }
};

// Cycles are the fundamental cycle basis of the group's edge set. The
// remaining (bridge) edges form a forest in which:
//  - a path is a chain of >= 3 nodes whose group degree is <= 2;
//  - a tree is rooted at every node of residual degree >= 3, spanning its
//    descendants when each residual component is oriented by BFS from its
//    lowest-index node.
// Each list is ordered by lowest contained node index.
PatternDecomposition FindPatterns(const CandidateGroup& group);

enum class Polarity { kPositive, kNegative };

struct AddedNode {
  RowVector attributes;
  std::vector<int> attach_to;  // host ids of existing group nodes
};

struct AugmentedView {
  std::vector<AddedNode> added;
  std::vector<int> removed;  // sorted host ids
  Polarity polarity = Polarity::kPositive;
};

// The adjacent node pair (n1, n2) edited on each cycle. Drawn from `seed`, so
// the positive and negative views of one group agree on it.
std::vector<std::pair<int, int>> CycleEditPairs(const PatternDecomposition& patterns,
                                                std::uint64_t seed);

// Drops every tree root, every path's middle node (index floor(L / 2)) and an
// adjacent node pair of every cycle. Throws kDegenerate if nothing survives.
AugmentedView NegativeView(const CandidateGroup& group, const PatternDecomposition& patterns,
                           std::uint64_t seed);

// Adds a child to every tree root (mean of its children's attributes), a
// neighbour to the lower-index endpoint of every path (mean over the path),
// and a node bridging every cycle's edit pair (mean over the cycle).
AugmentedView PositiveView(const CandidateGroup& group, const PatternDecomposition& patterns,
                           const Matrix& attributes, std::uint64_t seed);

// A group or view as a standalone small graph with local ids: surviving
// group nodes in group order, then added nodes.
struct ViewGraph {
  Matrix attributes;
  std::vector<Edge> edges;
  std::vector<int> host_ids;  // -1 for added nodes

  int num_nodes() const { return static_cast<int>(attributes.rows()); }
};

ViewGraph MaterializeGroup(const CandidateGroup& group, const Matrix& attributes);
ViewGraph MaterializeView(const CandidateGroup& group, const AugmentedView& view,
                          const Matrix& attributes);

// The view as a CandidateGroup over extended host ids: added node i gets id
// `first_new_id + i`. Handy for re-running FindPatterns on a view.
CandidateGroup ViewAsGroup(const CandidateGroup& group, const AugmentedView& view,
                           int first_new_id);

}  // namespace grgad

#endif  // GRGAD_PATTERNS_HPP_
