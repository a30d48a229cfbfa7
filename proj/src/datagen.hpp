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

// Synthetic labelled benchmarks: a random attributed base graph with
// clustered attributes, plus injected path/tree/cycle groups grown from one
// existing anchor node each.

#ifndef GRGAD_DATAGEN_HPP_
#define GRGAD_DATAGEN_HPP_

#include <cstdint>
#include <vector>

#include "graph.hpp"
#include "sampler.hpp"

namespace grgad {

struct BaseGraphSpec {
  int n = 1000;
  double avg_degree = 5.0;
  int dim = 32;
  int num_clusters = 4;
  // Standard deviation of the cluster centres; members add unit noise.
  double center_scale = 1.0;
  std::uint64_t seed = 0;
};

// Every node draws ceil(avg_degree) distinct random partners; the union of
// those edges (deduplicated) is the edge set.
AttributedGraph GenerateBaseGraph(const BaseGraphSpec& spec);
AttributedGraph GenerateBaseGraph(int n, double avg_degree, int dim, std::uint64_t seed);

struct PatternMix {
  double path = 0.4;
  double tree = 0.3;
  double cycle = 0.3;
};

struct InjectionSpec {
  int num_groups = 10;
  PatternMix mix;
  int min_size = 5;
  int max_size = 8;
  double noise_sigma = 0.1;
  std::uint64_t seed = 0;

  void Validate() const;
};

struct GroundTruthGroup {
  std::vector<int> nodes;  // sorted
  PatternKind kind = PatternKind::kPath;
};

struct LabeledBenchmark {
  AttributedGraph graph;
  std::vector<GroundTruthGroup> gt_groups;
};

// Adds s - 1 new nodes per group, wired with the anchor into a chain (anchor
// at a random position), a binary tree rooted at the anchor, or a ring.
// New attributes are the anchor's plus N(0, noise_sigma^2) noise. Groups are
// node-disjoint.
LabeledBenchmark InjectAnomalyGroups(const AttributedGraph& base, const InjectionSpec& spec);

InjectionSpec StandardInjectionSpec(std::uint64_t seed);
BaseGraphSpec StandardBaseGraphSpec(std::uint64_t seed);

// n = 1000, average degree 5, 32 attributes; 10 groups of 5-8 nodes.
LabeledBenchmark StandardBenchmark(std::uint64_t seed);

// Group with the host graph's induced edges on the ground-truth nodes.
CandidateGroup InducedGroup(const AttributedGraph& graph, const std::vector<int>& nodes,
                            PatternKind kind);

}  // namespace grgad

#endif  // GRGAD_DATAGEN_HPP_
