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

#ifndef GRGAD_GRAPH_ALGOS_HPP_
#define GRGAD_GRAPH_ALGOS_HPP_

#include <vector>

#include "graph.hpp"

namespace grgad {

inline constexpr int kUnreached = -1;

// Hop distances from `source`; kUnreached for other components.
std::vector<int> BfsDistances(const Adjacency& adj, int source);

// BFS forest where every component is rooted at its lowest-index node and
// neighbours are visited in ascending order.
struct BfsForest {
  std::vector<int> parent;  // -1 at roots
  std::vector<int> depth;
  std::vector<int> root;    // component root of every node
  int num_components = 0;
};
BfsForest BuildBfsForest(const Adjacency& adj);

// Fundamental cycle basis of the BFS forest above: one cycle per non-tree
// edge, as an ordered cyclic node list rotated to start at its smallest node
// and oriented towards the smaller of that node's two cycle neighbours.
// Cycles are listed in ascending order of their closing (non-tree) edge.
std::vector<std::vector<int>> FundamentalCycleBasis(const Adjacency& adj);

// Connected components (by lowest member), each sorted ascending.
std::vector<std::vector<int>> ConnectedComponents(const Adjacency& adj);

int CountEdges(const Adjacency& adj);

}  // namespace grgad

#endif  // GRGAD_GRAPH_ALGOS_HPP_
