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
#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "cr_cases.hpp"
#include "scoring.hpp"
#include "test_util.hpp"

namespace grgad {
namespace {

using testing::RandomMatrix;

std::vector<std::size_t> Ordering(const std::vector<double>& s) {
  std::vector<std::size_t> order(s.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return s[a] < s[b]; });
  return order;
}

TEST(EcodScores, Examples) {
  const std::vector<double> s = EcodScores((Matrix(4, 1) << 0, 0, 0, 10).finished());
  EXPECT_EQ(std::max_element(s.begin(), s.end()) - s.begin(), 3);
  // Ranks (2, 2, 2, 4); right tail of the outlier is 1/4, skew is positive.
  EXPECT_NEAR(s[3], std::log(4.0), 1e-12);
  EXPECT_NEAR(s[0], std::log(2.0), 1e-12);
  EXPECT_THROW(EcodScores(Matrix::Zero(1, 3)), Error);
}

TEST(EcodScores, MedianBelowExtremes) {
  Matrix x(9, 2);
  for (int i = 0; i < 9; ++i) x.row(i) << i - 4.0, 4.0 - i;
  const auto s = EcodScores(x);
  EXPECT_LT(s[4], s[0]);
  EXPECT_LT(s[4], s[8]);
}

TEST(EcodScores, TailsAreFloored) {
  const auto s = EcodScores(Matrix::Zero(5, 3));
  for (double v : s) EXPECT_TRUE(std::isfinite(v));
  EXPECT_EQ(s[0], s[4]);
}

TEST(EcodScores, InvariantUnderAffineMapsAndNegation) {
  SeededRng rng(1);
  for (int trial = 0; trial < 30; ++trial) {
    const Matrix x = RandomMatrix(40, 5, rng);
    Matrix shifted = x;
    for (Eigen::Index d = 0; d < x.cols(); ++d) {
      const double a = 0.1 + 5.0 * rng.Uniform();
      const double b = 10.0 * rng.Normal();
      shifted.col(d) = (a * x.col(d)).array() + b;
    }
    EXPECT_EQ(EcodScores(x), EcodScores(shifted));
    const auto base = EcodScores(x);
    const auto negated = EcodScores(-x);
    for (std::size_t i = 0; i < base.size(); ++i) EXPECT_NEAR(base[i], negated[i], 1e-12);
  }
}

TEST(EcodScores, InvariantUnderSkewPreservingMonotoneMaps) {
  SeededRng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    // Exponential samples stay right-skewed under these increasing maps.
    Matrix x(60, 4);
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = -std::log(1.0 - rng.Uniform());
    const auto base = EcodScores(x);
    for (auto f : {+[](double v) { return v * v * v; }, +[](double v) { return std::exp(v); },
                   +[](double v) { return 3.0 * v + 1.0; }}) {
      const Matrix y = x.unaryExpr(f);
      const auto got = EcodScores(y);
      for (std::size_t i = 0; i < base.size(); ++i) EXPECT_NEAR(got[i], base[i], 1e-12);
    }
  }
}

TEST(ThresholdPredict, Examples) {
  std::vector<double> s(10);
  std::iota(s.begin(), s.end(), 1.0);
  const auto top = ThresholdPredict(s, 0.1);
  EXPECT_EQ(std::count(top.predicted.begin(), top.predicted.end(), true), 1);
  EXPECT_TRUE(top.predicted[9]);
  EXPECT_NEAR(top.tau, 9.1, 1e-12);
  const auto half = ThresholdPredict(s, 0.5);
  EXPECT_EQ(std::count(half.predicted.begin(), half.predicted.end(), true), 5);
  EXPECT_TRUE(half.predicted[5]);
  EXPECT_FALSE(half.predicted[4]);
  const auto flat = ThresholdPredict(std::vector<double>(6, 2.0), 0.3);
  EXPECT_EQ(std::count(flat.predicted.begin(), flat.predicted.end(), true), 0);
  EXPECT_THROW(ThresholdPredict({}, 0.1), Error);
  EXPECT_THROW(ThresholdPredict(s, 0.0), Error);
  EXPECT_THROW(ThresholdPredict(s, 1.0), Error);
}

TEST(Completeness, HandTable) {
  for (const auto& c : testing::CompletenessTable()) {
    const double got = CompletenessScore(c.gt, c.predicted);
    EXPECT_NEAR(got, c.expected, 1e-15);
    EXPECT_EQ(got == 1.0, c.exact);
  }
  EXPECT_THROW(CompletenessScore({}, {{1}}), Error);
}

TEST(CompletenessRatio, Examples) {
  EXPECT_EQ(CompletenessRatio({{1, 2}, {3, 4}}, {{1, 2}, {4, 3}}), 1.0);
  EXPECT_EQ(CompletenessRatio({{1, 2}, {3, 4}}, {{1, 2}}), 0.5);
  EXPECT_EQ(CompletenessRatio({{1, 2, 3, 4}}, {{1, 2}}), 0.75);
  EXPECT_THROW(CompletenessRatio({}, {{1}}), Error);
}

TEST(CompletenessRatio, BoundedAndMonotone) {
  SeededRng rng(3);
  auto random_set = [&] {
    NodeSet s;
    for (int v = 0; v < 12; ++v) {
      if (rng.Uniform() < 0.3) s.push_back(v);
    }
    if (s.empty()) s.push_back(static_cast<int>(rng.UniformInt(12)));
    return s;
  };
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<NodeSet> gt(1 + rng.UniformInt(3)), predicted(rng.UniformInt(5));
    for (auto& g : gt) g = random_set();
    for (auto& p : predicted) p = random_set();
    const double cr = CompletenessRatio(gt, predicted);
    ASSERT_GE(cr, 0.0);
    ASSERT_LE(cr, 1.0);
    auto more = predicted;
    more.push_back(gt[rng.UniformInt(gt.size())]);
    EXPECT_GE(CompletenessRatio(gt, more), cr);
    for (auto& g : gt) more.push_back(g);
    EXPECT_EQ(CompletenessRatio(gt, more), 1.0);
  }
}

// Fraction of (positive, negative) pairs ordered correctly, ties half.
double BruteForceAuc(const std::vector<double>& s, const std::vector<bool>& y) {
  double wins = 0.0, pairs = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (!y[i] || y[j]) continue;
      pairs += 1.0;
      wins += s[i] > s[j] ? 1.0 : (s[i] == s[j] ? 0.5 : 0.0);
    }
  }
  return wins / pairs;
}

TEST(RankAuc, MatchesBruteForce) {
  SeededRng rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 2 + static_cast<int>(rng.UniformInt(99));
    std::vector<double> s(m);
    std::vector<bool> y(m);
    for (int i = 0; i < m; ++i) {
      s[i] = static_cast<double>(rng.UniformInt(8));  // plenty of ties
      y[i] = rng.Uniform() < 0.3;
    }
    const auto auc = RankAuc(s, y);
    const bool both = std::count(y.begin(), y.end(), true) > 0 &&
                      std::count(y.begin(), y.end(), false) > 0;
    ASSERT_EQ(auc.has_value(), both);
    if (both) EXPECT_NEAR(*auc, BruteForceAuc(s, y), 1e-12);
  }
  EXPECT_EQ(RankAuc({1, 2, 3, 4}, {false, false, true, true}), 1.0);
  EXPECT_EQ(RankAuc({1, 2, 3, 4}, {true, true, false, false}), 0.0);
  EXPECT_THROW(RankAuc({1.0}, {}), Error);
}

TEST(RankAuc, IndependentScoresAverageOneHalf) {
  SeededRng rng(5);
  const int m = 200;
  std::vector<double> s(m);
  for (double& v : s) v = rng.Normal();
  std::vector<bool> y(m, false);
  std::fill(y.begin(), y.begin() + m / 4, true);
  double sum = 0.0;
  int within = 0;
  const int shuffles = 1000;
  for (int k = 0; k < shuffles; ++k) {
    rng.Shuffle(y);
    const double auc = *RankAuc(s, y);
    sum += auc;
    if (std::abs(auc - 0.5) <= 0.1) ++within;
  }
  EXPECT_NEAR(sum / shuffles, 0.5, 0.01);
  EXPECT_GE(within, 950);
}

TEST(Evaluate, LabelsAndMetrics) {
  const std::vector<NodeSet> candidates = {{1, 2, 3}, {1, 2}, {7, 8}, {9}, {4, 5, 6}};
  const std::vector<NodeSet> gt = {{1, 2, 3, 4}, {4, 5, 6}};
  std::vector<GroupVerdict> v(5);
  const double scores[] = {0.9, 0.2, 0.8, 0.1, 0.7};
  for (int i = 0; i < 5; ++i) {
    v[i].group_id = i;
    v[i].score = scores[i];
    v[i].predicted = scores[i] > 0.5;
  }
  LabelVerdicts(v, candidates, gt, 0.5);
  // {1,2,3}: 7/8, {1,2}: 3/4, {4,5,6}: 1; the rest miss.
  EXPECT_EQ(*v[0].gt_label, true);
  EXPECT_EQ(*v[1].gt_label, true);
  EXPECT_EQ(*v[2].gt_label, false);
  EXPECT_EQ(*v[3].gt_label, false);
  EXPECT_EQ(*v[4].gt_label, true);
  const EvalReport r = Evaluate(v, candidates, gt);
  EXPECT_EQ(r.confusion.tp, 2);
  EXPECT_EQ(r.confusion.fp, 1);
  EXPECT_EQ(r.confusion.fn, 1);
  EXPECT_EQ(r.confusion.tn, 1);
  EXPECT_NEAR(r.f1, 4.0 / 6.0, 1e-15);
  EXPECT_NEAR(*r.auc, 4.0 / 6.0, 1e-15);
  EXPECT_NEAR(r.cr, (7.0 / 8.0 + 1.0) / 2.0, 1e-15);
  EXPECT_EQ(r.num_predicted, 3);
  EXPECT_EQ(r.num_positive_candidates, 3);

  for (auto& x : v) x.predicted = *x.gt_label;
  EXPECT_EQ(Evaluate(v, candidates, gt).f1, 1.0);
  v[0].gt_label.reset();
  EXPECT_THROW(Evaluate(v, candidates, gt), Error);
}

TEST(F1FromCounts, Edges) {
  EXPECT_EQ(F1FromCounts({}), 0.0);
  EXPECT_EQ(F1FromCounts({.tp = 3}), 1.0);
  EXPECT_NEAR(F1FromCounts({.tp = 1, .fp = 1, .tn = 0, .fn = 2}), 0.4, 1e-15);
}

}  // namespace
}  // namespace grgad
