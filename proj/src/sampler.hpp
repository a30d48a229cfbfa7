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

// Candidate group sampling around anchor nodes: shortest paths between anchor
// pairs, depth-limited BFS trees, and fundamental cycles through anchors.

#ifndef GRGAD_SAMPLER_HPP_
#define GRGAD_SAMPLER_HPP_

#include <optional>
#include <string>
#include <vector>

#include "graph.hpp"

namespace grgad {

enum class PatternKind { kPath, kTree, kCycle };

const char* PatternKindName(PatternKind kind);
PatternKind ParsePatternKind(const std::string& name);

struct Provenance {
  PatternKind kind = PatternKind::kPath;
  std::vector<int> anchors;  // (v, mu) for paths and trees, (v) for cycles
  int depth = 0;             // tree depth t; 0 otherwise

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

// A node subset of the host graph plus the edges of the pattern it was
// sampled as. `nodes` keeps the pattern order (path order, BFS order, cyclic
// order); `edges` use host-graph node ids.
struct CandidateGroup {
  std::vector<int> nodes;
  std::vector<Edge> edges;
  Provenance provenance;

  friend bool operator==(const CandidateGroup&, const CandidateGroup&) = default;
};

struct SamplerConfig {
  int max_path_len = 10;    // nodes
  int max_tree_nodes = 50;
  int max_cycle_len = 12;   // nodes
  int tree_depth = 3;

  void Validate() const;
};

// One shortest path from v to mu (BFS; with unit weights this is what
// Bellman-Ford computes). Among equal-length paths the walk from v always
// takes the lowest-index next hop, giving the lexicographically smallest
// sequence. None when disconnected or longer than max_path_len nodes.
std::optional<CandidateGroup> PathSearch(const AttributedGraph& graph, int v, int mu,
                                         const SamplerConfig& config = {});

// BFS tree from v (ascending-index expansion) truncated at depth t. Trees
// above max_tree_nodes lose their deepest nodes, highest index first. The
// tree is returned only if mu survives in it.
std::optional<CandidateGroup> TreeSearch(const AttributedGraph& graph, int v, int mu, int depth,
                                         const SamplerConfig& config = {});

// Fundamental cycles of the whole graph that pass through v, dropping those
// longer than max_cycle_len nodes.
std::vector<CandidateGroup> CycleSearch(const AttributedGraph& graph, int v,
                                        const SamplerConfig& config = {});

// Precomputed cycle basis, shared by every anchor of one sampling run.
class CycleIndex {
 public:
  explicit CycleIndex(const AttributedGraph& graph);
  std::vector<CandidateGroup> CyclesThrough(int v, const SamplerConfig& config) const;
  std::size_t basis_size() const { return cycles_.size(); }

 private:
  std::vector<std::vector<int>> cycles_;
  std::vector<std::vector<int>> cycles_of_node_;
};

// Loops over ordered anchor pairs (v, mu), v != mu, collecting path and tree
// groups, then the cycles of v. Groups with the same node set and the same
// pattern kind are kept once (first occurrence).
std::vector<CandidateGroup> SampleCandidateGroups(const AttributedGraph& graph,
                                                  const std::vector<int>& anchors,
                                                  const SamplerConfig& config = {});

}  // namespace grgad

#endif  // GRGAD_SAMPLER_HPP_
