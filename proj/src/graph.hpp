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

#ifndef GRGAD_GRAPH_HPP_
#define GRGAD_GRAPH_HPP_

#include <span>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "common.hpp"

namespace grgad {

// Undirected edge, stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;

  static Edge Make(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// Sorted adjacency lists over local node ids 0..n-1.
using Adjacency = std::vector<std::vector<int>>;
Adjacency BuildAdjacency(int n, std::span<const Edge> edges);

struct EdgeCleanupStats {
  int self_loops = 0;
  int duplicates = 0;
};

// Undirected graph with one real-valued attribute row per node. Immutable
// once built; edges are sorted, unique and loop-free.
class AttributedGraph {
 public:
  AttributedGraph() = default;

  // Drops self-loops and duplicate edges (counted in `stats` if given).
  // Throws on out-of-range endpoints, non-finite attributes, or an id list
  // whose length differs from the row count.
  static AttributedGraph Build(Matrix attributes, std::vector<Edge> edges,
                               std::vector<std::string> node_ids = {},
                               EdgeCleanupStats* stats = nullptr);

  int num_nodes() const { return static_cast<int>(attributes_.rows()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int attribute_dim() const { return static_cast<int>(attributes_.cols()); }

  const std::vector<Edge>& edges() const { return edges_; }
  const Matrix& attributes() const { return attributes_; }
  const std::vector<std::string>& node_ids() const { return node_ids_; }
  const Adjacency& adjacency() const { return adjacency_; }
  const std::vector<int>& neighbors(int node) const { return adjacency_[node]; }
  int degree(int node) const { return static_cast<int>(adjacency_[node].size()); }
  bool HasEdge(int a, int b) const;
  bool IsValidNode(int node) const { return node >= 0 && node < num_nodes(); }

  Matrix DenseAdjacency() const;

 private:
  Matrix attributes_;
  std::vector<Edge> edges_;
  std::vector<std::string> node_ids_;
  Adjacency adjacency_;
};

// Reads an edge list (two whitespace-separated 0-based ints per line, '#'
// comments) and a feature file (one comma-separated row per node).
AttributedGraph LoadGraph(const std::string& edges_path, const std::string& features_path,
                          EdgeCleanupStats* stats = nullptr);

// Writes the same two formats. Reals are printed in shortest round-trip form.
void SaveGraph(const AttributedGraph& graph, const std::string& edges_path,
               const std::string& features_path);

enum class TargetKind { kPlain, kKHop, kOverlapWeighted };

const char* TargetKindName(TargetKind kind);

// Structure-reconstruction objective for the autoencoder: symmetric, zero
// diagonal, entries in [0, 1].
struct ReconTarget {
  TargetKind kind = TargetKind::kPlain;
  int k = 1;
  double lambda = 1.0;
  Matrix m;
};

// A^k from path counts of the 0/1 adjacency, diagonal zeroed, divided by the
// largest off-diagonal entry.
ReconTarget KHopTarget(const AttributedGraph& graph, int k);

inline ReconTarget PlainTarget(const AttributedGraph& graph) {
  ReconTarget t = KHopTarget(graph, 1);
  t.kind = TargetKind::kPlain;
  return t;
}

// Raw per-edge overlap weight |E_vu| / (|V_vu| (|V_vu| - 1)) * |V_vu|^lambda,
// where (V_vu, E_vu) is the intersection of the closed-neighbourhood
// subgraphs of v and u. Zero when |V_vu| < 2.
double OverlapWeight(const AttributedGraph& graph, int v, int u, double lambda);

// Overlap weights on every edge, max-normalized into [0, 1].
ReconTarget OverlapWeightedTarget(const AttributedGraph& graph, double lambda);

// D^-1/2 (A + I) D^-1/2 with D the degree matrix of A + I.
Matrix PropagationMatrix(const AttributedGraph& graph);
SparseMatrix PropagationSparse(const AttributedGraph& graph);
SparseMatrix PropagationSparse(int n, std::span<const Edge> edges);

}  // namespace grgad

#endif  // GRGAD_GRAPH_HPP_
