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

#include "graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

namespace grgad {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::ifstream OpenOrThrow(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "cannot open file: " + path);
  return in;
}

double ParseReal(std::string_view token, const std::string& where) {
  token = Trim(token);
  double value = 0.0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end || token.empty()) {
    Fail(ErrorCode::kParse, where + ": not a real number: '" + std::string(token) + "'");
  }
  if (!std::isfinite(value)) Fail(ErrorCode::kParse, where + ": non-finite attribute");
  return value;
}

int ParseNodeIndex(std::string_view token, const std::string& where) {
  long long value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    Fail(ErrorCode::kParse, where + ": not an integer: '" + std::string(token) + "'");
  }
  if (value < 0 || value > INT32_MAX) {
    Fail(ErrorCode::kParse, where + ": node index out of range: " + std::string(token));
  }
  return static_cast<int>(value);
}

}  // namespace

Adjacency BuildAdjacency(int n, std::span<const Edge> edges) {
  Adjacency adj(n);
  for (const Edge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

AttributedGraph AttributedGraph::Build(Matrix attributes, std::vector<Edge> edges,
                                       std::vector<std::string> node_ids,
                                       EdgeCleanupStats* stats) {
  const int n = static_cast<int>(attributes.rows());
  if (!AllFinite(attributes)) Fail(ErrorCode::kInvalidArgument, "attributes must be finite");
  if (!node_ids.empty() && static_cast<int>(node_ids.size()) != n) {
    Fail(ErrorCode::kInvalidArgument, "node id count does not match attribute rows");
  }
  EdgeCleanupStats local;
  std::vector<Edge> clean;
  clean.reserve(edges.size());
  for (const Edge& raw : edges) {
    if (raw.u < 0 || raw.v < 0 || raw.u >= n || raw.v >= n) {
      Fail(ErrorCode::kInvalidArgument,
           fmt::format("edge ({}, {}) has an endpoint outside [0, {})", raw.u, raw.v, n));
    }
    if (raw.u == raw.v) {
      ++local.self_loops;
      continue;
    }
    clean.push_back(Edge::Make(raw.u, raw.v));
  }
  std::sort(clean.begin(), clean.end());
  const auto last = std::unique(clean.begin(), clean.end());
  local.duplicates = static_cast<int>(std::distance(last, clean.end()));
  clean.erase(last, clean.end());
  if (stats) *stats = local;

  AttributedGraph g;
  g.attributes_ = std::move(attributes);
  g.edges_ = std::move(clean);
  g.node_ids_ = std::move(node_ids);
  g.adjacency_ = BuildAdjacency(n, g.edges_);
  return g;
}

bool AttributedGraph::HasEdge(int a, int b) const {
  if (!IsValidNode(a) || !IsValidNode(b)) return false;
  const auto& list = adjacency_[a];
  return std::binary_search(list.begin(), list.end(), b);
}

Matrix AttributedGraph::DenseAdjacency() const {
  Matrix a = Matrix::Zero(num_nodes(), num_nodes());
  for (const Edge& e : edges_) {
    a(e.u, e.v) = 1.0;
    a(e.v, e.u) = 1.0;
  }
  return a;
}

AttributedGraph LoadGraph(const std::string& edges_path, const std::string& features_path,
                          EdgeCleanupStats* stats) {
  std::vector<std::vector<double>> rows;
  {
    auto in = OpenOrThrow(features_path);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const auto body = Trim(line);
      if (body.empty() || body.front() == '#') continue;
      const std::string where = fmt::format("{}:{}", features_path, line_no);
      std::vector<double> row;
      std::size_t start = 0;
      while (true) {
        const auto comma = body.find(',', start);
        row.push_back(ParseReal(body.substr(start, comma - start), where));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
      if (!rows.empty() && row.size() != rows.front().size()) {
        Fail(ErrorCode::kParse, fmt::format("{}: ragged feature row ({} values, expected {})",
                                            where, row.size(), rows.front().size()));
      }
      rows.push_back(std::move(row));
    }
  }
  const int n = static_cast<int>(rows.size());
  const int d = n > 0 ? static_cast<int>(rows.front().size()) : 0;
  Matrix x(n, d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) x(i, j) = rows[i][j];
  }

  std::vector<Edge> edges;
  {
    auto in = OpenOrThrow(edges_path);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      auto body = Trim(line);
      if (const auto hash = body.find('#'); hash != std::string_view::npos) {
        body = Trim(body.substr(0, hash));
      }
      if (body.empty()) continue;
      const std::string where = fmt::format("{}:{}", edges_path, line_no);
      std::istringstream tokens{std::string(body)};
      std::string a, b, extra;
      if (!(tokens >> a >> b) || (tokens >> extra)) {
        Fail(ErrorCode::kParse, where + ": expected exactly two node indices");
      }
      const int u = ParseNodeIndex(a, where);
      const int v = ParseNodeIndex(b, where);
      if (u >= n || v >= n) {
        Fail(ErrorCode::kParse,
             fmt::format("{}: edge endpoint exceeds node count {}", where, n));
      }
      edges.push_back(Edge{u, v});
    }
  }

  EdgeCleanupStats local;
  AttributedGraph g = AttributedGraph::Build(std::move(x), std::move(edges), {}, &local);
  if (local.self_loops > 0 || local.duplicates > 0) {
    spdlog::warn("{}: dropped {} self-loop(s) and {} duplicate edge(s)", edges_path,
                 local.self_loops, local.duplicates);
  }
  if (stats) *stats = local;
  return g;
}

void SaveGraph(const AttributedGraph& graph, const std::string& edges_path,
               const std::string& features_path) {
  {
    std::ofstream out(edges_path);
    if (!out) Fail(ErrorCode::kIo, "cannot write file: " + edges_path);
    for (const Edge& e : graph.edges()) out << e.u << ' ' << e.v << '\n';
  }
  {
    std::ofstream out(features_path);
    if (!out) Fail(ErrorCode::kIo, "cannot write file: " + features_path);
    const Matrix& x = graph.attributes();
    std::string line;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      line.clear();
      for (Eigen::Index j = 0; j < x.cols(); ++j) {
        if (j > 0) line += ',';
        line += fmt::format("{}", x(i, j));
      }
      out << line << '\n';
    }
  }
}

const char* TargetKindName(TargetKind kind) {
  switch (kind) {
    case TargetKind::kPlain: return "plain";
    case TargetKind::kKHop: return "khop";
    case TargetKind::kOverlapWeighted: return "overlap";
  }
  return "unknown";
}

namespace {

void ZeroDiagonalAndMaxNormalize(Matrix& m) {
  m.diagonal().setZero();
  const double max_entry = m.maxCoeff();
  if (max_entry > 0.0) m /= max_entry;
}

}  // namespace

ReconTarget KHopTarget(const AttributedGraph& graph, int k) {
  Require(k >= 1, "k-hop target requires k >= 1");
  if (graph.num_nodes() == 0) Fail(ErrorCode::kInvalidArgument, "k-hop target of an empty graph");
  const Matrix a = graph.DenseAdjacency();
  Matrix power = a;
  for (int step = 1; step < k; ++step) power = power * a;
  ZeroDiagonalAndMaxNormalize(power);
  return ReconTarget{TargetKind::kKHop, k, 1.0, std::move(power)};
}

double OverlapWeight(const AttributedGraph& graph, int v, int u, double lambda) {
  // Closed neighbourhoods N[v] and N[u], both sorted.
  auto closed = [&](int node) {
    std::vector<int> c = graph.neighbors(node);
    c.insert(std::lower_bound(c.begin(), c.end(), node), node);
    return c;
  };
  const std::vector<int> nv = closed(v);
  const std::vector<int> nu = closed(u);
  std::vector<int> common;
  std::set_intersection(nv.begin(), nv.end(), nu.begin(), nu.end(), std::back_inserter(common));
  const double num_nodes = static_cast<double>(common.size());
  if (common.size() < 2) return 0.0;
  // An edge lies in both neighbourhood subgraphs iff both endpoints lie in
  // both closed neighbourhoods.
  std::size_t num_edges = 0;
  for (std::size_t i = 0; i < common.size(); ++i) {
    const auto& adj = graph.neighbors(common[i]);
    for (std::size_t j = i + 1; j < common.size(); ++j) {
      if (std::binary_search(adj.begin(), adj.end(), common[j])) ++num_edges;
    }
  }
  return static_cast<double>(num_edges) / (num_nodes * (num_nodes - 1.0)) *
         std::pow(num_nodes, lambda);
}

ReconTarget OverlapWeightedTarget(const AttributedGraph& graph, double lambda) {
  Require(lambda > 0.0, "overlap weighting requires lambda > 0");
  if (graph.num_nodes() == 0) {
    Fail(ErrorCode::kInvalidArgument, "overlap-weighted target of an empty graph");
  }
  Matrix m = Matrix::Zero(graph.num_nodes(), graph.num_nodes());
  for (const Edge& e : graph.edges()) {
    const double w = OverlapWeight(graph, e.u, e.v, lambda);
    m(e.u, e.v) = w;
    m(e.v, e.u) = w;
  }
  ZeroDiagonalAndMaxNormalize(m);
  return ReconTarget{TargetKind::kOverlapWeighted, 1, lambda, std::move(m)};
}

Matrix PropagationMatrix(const AttributedGraph& graph) {
  return Matrix(PropagationSparse(graph));
}

SparseMatrix PropagationSparse(const AttributedGraph& graph) {
  return PropagationSparse(graph.num_nodes(), graph.edges());
}

SparseMatrix PropagationSparse(int n, std::span<const Edge> edges) {
  if (n == 0) Fail(ErrorCode::kInvalidArgument, "propagation matrix of an empty graph");
  std::vector<double> degree(n, 1.0);
  for (const Edge& e : edges) {
    degree[e.u] += 1.0;
    degree[e.v] += 1.0;
  }
  std::vector<double> inv_sqrt(n);
  for (int i = 0; i < n; ++i) inv_sqrt[i] = 1.0 / std::sqrt(degree[i]);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(n) + 2 * edges.size());
  for (int i = 0; i < n; ++i) triplets.emplace_back(i, i, inv_sqrt[i] * inv_sqrt[i]);
  for (const Edge& e : edges) {
    const double w = inv_sqrt[e.u] * inv_sqrt[e.v];
    triplets.emplace_back(e.u, e.v, w);
    triplets.emplace_back(e.v, e.u, w);
  }
  SparseMatrix p(n, n);
  p.setFromTriplets(triplets.begin(), triplets.end());
  return p;
}

}  // namespace grgad
