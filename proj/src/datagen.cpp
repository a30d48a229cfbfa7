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

#include "datagen.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

namespace grgad {

AttributedGraph GenerateBaseGraph(const BaseGraphSpec& spec) {
  Require(spec.n >= 10, "base graph needs n >= 10");
  Require(spec.avg_degree >= 1.0, "base graph needs avg_degree >= 1");
  Require(spec.dim >= 1, "base graph needs at least one attribute");
  Require(spec.num_clusters >= 1, "base graph needs at least one cluster");
  Require(spec.center_scale >= 0.0, "cluster centre scale must be >= 0");
  const int draws = static_cast<int>(std::ceil(spec.avg_degree));
  Require(draws < spec.n, "avg_degree must be below n - 1");

  SeededRng rng(spec.seed);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(spec.n) * draws);
  for (int node = 0; node < spec.n; ++node) {
    std::set<int> partners;
    while (static_cast<int>(partners.size()) < draws) {
      const int other = static_cast<int>(rng.UniformInt(static_cast<std::uint64_t>(spec.n)));
      if (other != node) partners.insert(other);
    }
    for (int other : partners) edges.push_back(Edge::Make(node, other));
  }

  Matrix centers(spec.num_clusters, spec.dim);
  for (Eigen::Index i = 0; i < centers.size(); ++i) {
    centers.data()[i] = spec.center_scale * rng.Normal();
  }
  Matrix x(spec.n, spec.dim);
  for (int node = 0; node < spec.n; ++node) {
    const auto cluster =
        static_cast<Eigen::Index>(rng.UniformInt(static_cast<std::uint64_t>(spec.num_clusters)));
    for (int j = 0; j < spec.dim; ++j) x(node, j) = centers(cluster, j) + rng.Normal();
  }
  return AttributedGraph::Build(std::move(x), std::move(edges));
}

AttributedGraph GenerateBaseGraph(int n, double avg_degree, int dim, std::uint64_t seed) {
  BaseGraphSpec spec;
  spec.n = n;
  spec.avg_degree = avg_degree;
  spec.dim = dim;
  spec.seed = seed;
  return GenerateBaseGraph(spec);
}

void InjectionSpec::Validate() const {
  Require(num_groups >= 0, "num_groups must be >= 0");
  Require(mix.path >= 0.0 && mix.tree >= 0.0 && mix.cycle >= 0.0,
          "pattern mix probabilities must be non-negative");
  Require(std::abs(mix.path + mix.tree + mix.cycle - 1.0) < 1e-9, "pattern mix must sum to 1");
  Require(min_size >= 3, "group size must be >= 3");
  Require(max_size >= min_size, "max group size must be >= min group size");
  Require(noise_sigma >= 0.0, "noise_sigma must be >= 0");
}

LabeledBenchmark InjectAnomalyGroups(const AttributedGraph& base, const InjectionSpec& spec) {
  spec.Validate();
  const int base_n = base.num_nodes();
  Require(base_n >= 1, "cannot inject into an empty graph");
  SeededRng rng(spec.seed);

  std::vector<Edge> edges = base.edges();
  std::vector<RowVector> new_rows;
  std::vector<char> used(base_n, 0);
  std::vector<GroundTruthGroup> gt;
  const long max_retries = 100L * std::max(1, spec.num_groups);
  long retries = 0;
  int next_id = base_n;

  for (int g = 0; g < spec.num_groups; ++g) {
    const double u = rng.Uniform();
    const PatternKind kind = u < spec.mix.path                   ? PatternKind::kPath
                             : u < spec.mix.path + spec.mix.tree ? PatternKind::kTree
                                                                 : PatternKind::kCycle;
    const int size = spec.min_size + static_cast<int>(rng.UniformInt(
                                         static_cast<std::uint64_t>(spec.max_size - spec.min_size + 1)));
    int anchor = static_cast<int>(rng.UniformInt(static_cast<std::uint64_t>(base_n)));
    while (used[anchor]) {
      if (++retries > max_retries) {
        Fail(ErrorCode::kInvalidArgument,
             fmt::format("could not place {} disjoint groups after {} retries", spec.num_groups,
                         max_retries));
      }
      anchor = static_cast<int>(rng.UniformInt(static_cast<std::uint64_t>(base_n)));
    }
    used[anchor] = 1;

    // members[0] is the anchor for trees and rings; paths place it anywhere.
    std::vector<int> members;
    if (kind == PatternKind::kPath) {
      const int position = static_cast<int>(rng.UniformInt(static_cast<std::uint64_t>(size)));
      for (int i = 0; i < size; ++i) members.push_back(i == position ? anchor : next_id++);
    } else {
      members.push_back(anchor);
      for (int i = 1; i < size; ++i) members.push_back(next_id++);
    }
    for (int id : members) {
      if (id == anchor) continue;
      RowVector row = base.attributes().row(anchor);
      for (Eigen::Index j = 0; j < row.size(); ++j) row[j] += spec.noise_sigma * rng.Normal();
      new_rows.push_back(std::move(row));
    }
    switch (kind) {
      case PatternKind::kPath:
        for (int i = 0; i + 1 < size; ++i) edges.push_back(Edge::Make(members[i], members[i + 1]));
        break;
      case PatternKind::kTree:
        for (int i = 1; i < size; ++i) edges.push_back(Edge::Make(members[(i - 1) / 2], members[i]));
        break;
      case PatternKind::kCycle:
        for (int i = 0; i < size; ++i) {
          edges.push_back(Edge::Make(members[i], members[(i + 1) % size]));
        }
        break;
    }
    std::sort(members.begin(), members.end());
    gt.push_back(GroundTruthGroup{std::move(members), kind});
  }

  Matrix x(next_id, base.attribute_dim());
  x.topRows(base_n) = base.attributes();
  for (std::size_t i = 0; i < new_rows.size(); ++i) {
    x.row(base_n + static_cast<Eigen::Index>(i)) = new_rows[i];
  }
  return LabeledBenchmark{AttributedGraph::Build(std::move(x), std::move(edges)), std::move(gt)};
}

InjectionSpec StandardInjectionSpec(std::uint64_t seed) {
  InjectionSpec spec;
  spec.num_groups = 10;
  spec.mix = PatternMix{0.4, 0.3, 0.3};
  spec.min_size = 5;
  spec.max_size = 8;
  spec.noise_sigma = 0.1;
  spec.seed = MixSeed(seed, 2);
  return spec;
}

BaseGraphSpec StandardBaseGraphSpec(std::uint64_t seed) {
  BaseGraphSpec spec;
  spec.n = 1000;
  spec.avg_degree = 5.0;
  spec.dim = 32;
  spec.seed = MixSeed(seed, 1);
  return spec;
}

LabeledBenchmark StandardBenchmark(std::uint64_t seed) {
  return InjectAnomalyGroups(GenerateBaseGraph(StandardBaseGraphSpec(seed)),
                             StandardInjectionSpec(seed));
}

CandidateGroup InducedGroup(const AttributedGraph& graph, const std::vector<int>& nodes,
                            PatternKind kind) {
  CandidateGroup group;
  group.nodes = nodes;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      if (graph.HasEdge(nodes[i], nodes[j])) group.edges.push_back(Edge::Make(nodes[i], nodes[j]));
    }
  }
  std::sort(group.edges.begin(), group.edges.end());
  group.provenance.kind = kind;
  if (!nodes.empty()) group.provenance.anchors = {nodes.front()};
  return group;
}

}  // namespace grgad
