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

#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "augmentation_invariants.hpp"
#include "datagen.hpp"
#include "patterns.hpp"
#include "test_util.hpp"

namespace grgad {
namespace {

using testing::CheckAugmentationInvariants;
using testing::MakeGroup;
using testing::RandomEdges;
using testing::RandomMatrix;

TEST(FindPatterns, FourNodePath) {
  const auto p = FindPatterns(MakeGroup({0, 1, 2, 3}, {{0, 1}, {1, 2}, {2, 3}}));
  ASSERT_EQ(p.paths.size(), 1u);
  EXPECT_EQ(p.paths[0], (std::vector<int>{0, 1, 2, 3}));
  EXPECT_TRUE(p.trees.empty());
  EXPECT_TRUE(p.cycles.empty());
}

TEST(FindPatterns, PathIsWalkedFromItsLowerEnd) {
  const auto p = FindPatterns(MakeGroup({9, 4, 7}, {{9, 4}, {4, 7}}));
  ASSERT_EQ(p.paths.size(), 1u);
  EXPECT_EQ(p.paths[0], (std::vector<int>{7, 4, 9}));
}

TEST(FindPatterns, Star) {
  const auto p = FindPatterns(MakeGroup({0, 1, 2, 3}, {{0, 1}, {0, 2}, {0, 3}}, PatternKind::kTree));
  ASSERT_EQ(p.trees.size(), 1u);
  EXPECT_EQ(p.trees[0].root, 0);
  EXPECT_EQ(p.trees[0].children, (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(p.trees[0].nodes, (std::vector<int>{0, 1, 2, 3}));
  EXPECT_TRUE(p.paths.empty());
  EXPECT_TRUE(p.cycles.empty());
}

TEST(FindPatterns, TriangleWithPendantChain) {
  const auto p = FindPatterns(
      MakeGroup({0, 1, 2, 3, 4, 5}, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {4, 5}}));
  ASSERT_EQ(p.cycles.size(), 1u);
  EXPECT_EQ(std::set<int>(p.cycles[0].begin(), p.cycles[0].end()), (std::set<int>{0, 1, 2}));
  ASSERT_EQ(p.paths.size(), 1u);
  EXPECT_EQ(p.paths[0], (std::vector<int>{3, 4, 5}));
  EXPECT_TRUE(p.trees.empty());
}

TEST(FindPatterns, Errors) {
  EXPECT_THROW(FindPatterns(CandidateGroup{}), Error);
  EXPECT_THROW(FindPatterns(MakeGroup({0, 1}, {{0, 5}})), Error);
}

TEST(NegativeView, Examples) {
  const auto path = MakeGroup({0, 1, 2, 3}, {{0, 1}, {1, 2}, {2, 3}});
  const AugmentedView n1 = NegativeView(path, FindPatterns(path), 0);
  EXPECT_EQ(n1.removed, (std::vector<int>{2}));
  EXPECT_TRUE(n1.added.empty());
  EXPECT_EQ(n1.polarity, Polarity::kNegative);

  const auto star = MakeGroup({0, 1, 2, 3}, {{0, 1}, {0, 2}, {0, 3}});
  const AugmentedView n2 = NegativeView(star, FindPatterns(star), 0);
  EXPECT_EQ(n2.removed, (std::vector<int>{0}));
  const ViewGraph leaves = MaterializeView(star, n2, Matrix::Zero(4, 1));
  EXPECT_EQ(leaves.num_nodes(), 3);
  EXPECT_TRUE(leaves.edges.empty());
}

TEST(NegativeView, TriangleIsSeededAndDegenerateWhenEmptied) {
  const auto tri = MakeGroup({0, 1, 2}, {{0, 1}, {1, 2}, {0, 2}}, PatternKind::kCycle);
  const auto p = FindPatterns(tri);
  const AugmentedView a = NegativeView(tri, p, 77);
  EXPECT_EQ(a.removed.size(), 2u);
  EXPECT_EQ(a.removed, NegativeView(tri, p, 77).removed);
  std::set<std::vector<int>> seen;
  for (std::uint64_t s = 0; s < 40; ++s) seen.insert(NegativeView(tri, p, s).removed);
  EXPECT_GT(seen.size(), 1u);
  // A 2-node group has no patterns, so nothing is removed.
  const auto edge = MakeGroup({0, 1}, {{0, 1}});
  EXPECT_TRUE(NegativeView(edge, FindPatterns(edge), 0).removed.empty());
  // Removals covering every node leave nothing to embed.
  PatternDecomposition forced;
  forced.trees.push_back(TreePattern{0, {1}, {0, 1}, {{0, 1}}});
  forced.paths.push_back({0, 1, 0});
  try {
    NegativeView(edge, forced, 0);
    FAIL() << "expected a degenerate view";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerate);
  }
}

TEST(PositiveView, Examples) {
  Matrix x = Matrix::Zero(4, 2);
  x.row(2) << 1.0, 0.0;
  x.row(3) << 3.0, 2.0;
  const auto tree = MakeGroup({0, 1, 2, 3}, {{0, 1}, {1, 2}, {1, 3}});
  const auto tp = FindPatterns(tree);
  ASSERT_EQ(tp.trees.size(), 1u);
  EXPECT_EQ(tp.trees[0].root, 1);
  const AugmentedView tv = PositiveView(tree, tp, x, 0);
  ASSERT_EQ(tv.added.size(), 1u);
  EXPECT_EQ(tv.added[0].attributes, (RowVector(2) << 2.0, 1.0).finished());
  EXPECT_EQ(tv.added[0].attach_to, (std::vector<int>{1}));

  const auto pair = MakeGroup({0, 1}, {{0, 1}});
  const AugmentedView pv = PositiveView(pair, FindPatterns(pair), x, 0);
  EXPECT_TRUE(pv.added.empty());
  EXPECT_TRUE(pv.removed.empty());
  const ViewGraph same = MaterializeView(pair, pv, x);
  const ViewGraph orig = MaterializeGroup(pair, x);
  EXPECT_EQ(same.attributes, orig.attributes);
  EXPECT_EQ(same.edges, orig.edges);

  const auto path = MakeGroup({3, 2, 1, 0}, {{0, 1}, {1, 2}, {2, 3}});
  const AugmentedView lv = PositiveView(path, FindPatterns(path), x, 0);
  const ViewGraph grown = MaterializeView(path, lv, x);
  EXPECT_EQ(grown.num_nodes(), 5);
  ASSERT_EQ(lv.added.size(), 1u);
  EXPECT_EQ(lv.added[0].attach_to, (std::vector<int>{0}));
  EXPECT_EQ(lv.added[0].attributes, x.colwise().mean());
}

TEST(MaterializeView, LocalIdsFollowGroupOrder) {
  Matrix x(5, 1);
  x << 0, 10, 20, 30, 40;
  const auto g = MakeGroup({4, 2, 0}, {{4, 2}, {2, 0}});
  const ViewGraph v = MaterializeGroup(g, x);
  EXPECT_EQ(v.host_ids, (std::vector<int>{4, 2, 0}));
  EXPECT_EQ(v.attributes(0, 0), 40.0);
  EXPECT_EQ(v.edges, (std::vector<Edge>{{0, 1}, {1, 2}}));
}

TEST(AugmentationInvariants, RandomSmallGroups) {
  SeededRng rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(rng.UniformInt(10));
    const double p = 0.1 + 0.5 * rng.Uniform();
    CandidateGroup group;
    for (int i = 0; i < n; ++i) group.nodes.push_back(i);
    group.edges = RandomEdges(n, p, rng);
    const Matrix x = RandomMatrix(n, 3, rng);
    EXPECT_EQ(CheckAugmentationInvariants(group, x, rng.NextU64()), "") << "trial " << trial;
  }
}

TEST(AugmentationInvariants, StandardBenchmarkGroups) {
  for (std::uint64_t seed = 0; seed < 2; ++seed) {
    const LabeledBenchmark bench = StandardBenchmark(seed);
    SeededRng rng(MixSeed(seed, 30));
    std::vector<int> anchors;
    for (int v = 0; v < bench.graph.num_nodes(); ++v) {
      if (rng.Uniform() < 0.05) anchors.push_back(v);
    }
    const auto groups = SampleCandidateGroups(bench.graph, anchors);
    ASSERT_FALSE(groups.empty());
    for (std::size_t i = 0; i < groups.size(); ++i) {
      ASSERT_EQ(CheckAugmentationInvariants(groups[i], bench.graph.attributes(), i), "")
          << "seed " << seed << " group " << i;
    }
  }
}

}  // namespace
}  // namespace grgad
