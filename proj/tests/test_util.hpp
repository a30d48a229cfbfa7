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

// Small generators and helpers shared by the unit tests.

#ifndef GRGAD_TESTS_TEST_UTIL_HPP_
#define GRGAD_TESTS_TEST_UTIL_HPP_

#include <algorithm>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "common.hpp"
#include "graph.hpp"
#include "sampler.hpp"

namespace grgad::testing {

inline Matrix RandomMatrix(int rows, int cols, SeededRng& rng, double scale = 1.0) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = scale * rng.Normal();
  return m;
}

// Erdos-Renyi style graph: every pair independently with probability p.
inline std::vector<Edge> RandomEdges(int n, double p, SeededRng& rng) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.Uniform() < p) edges.push_back(Edge{u, v});
    }
  }
  return edges;
}

inline AttributedGraph RandomGraph(int n, double p, int dim, SeededRng& rng) {
  return AttributedGraph::Build(RandomMatrix(n, dim, rng), RandomEdges(n, p, rng));
}

inline AttributedGraph GraphFromEdges(int n, const std::vector<std::pair<int, int>>& pairs,
                                      int dim = 2) {
  std::vector<Edge> edges;
  for (auto [u, v] : pairs) edges.push_back(Edge::Make(u, v));
  Matrix x = Matrix::Zero(n, dim);
  for (int i = 0; i < n; ++i) x(i, 0) = i;
  return AttributedGraph::Build(std::move(x), std::move(edges));
}

// Group made of `nodes` and exactly the listed edges.
inline CandidateGroup MakeGroup(std::vector<int> nodes,
                                const std::vector<std::pair<int, int>>& pairs,
                                PatternKind kind = PatternKind::kPath) {
  CandidateGroup g;
  g.nodes = std::move(nodes);
  for (auto [u, v] : pairs) g.edges.push_back(Edge::Make(u, v));
  std::sort(g.edges.begin(), g.edges.end());
  g.provenance.kind = kind;
  return g;
}

// Fresh empty directory under the system temp dir.
inline std::string TempDir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("grgad_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

}  // namespace grgad::testing

#endif  // GRGAD_TESTS_TEST_UTIL_HPP_
