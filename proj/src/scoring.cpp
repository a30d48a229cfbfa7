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

#include "scoring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <spdlog/spdlog.h>

namespace grgad {
namespace {

// 1-based ranks, ties sharing their average rank.
std::vector<double> AverageRanks(const std::vector<double>& values) {
  const std::size_t m = values.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(m);
  std::size_t i = 0;
  while (i < m) {
    std::size_t j = i;
    while (j + 1 < m && values[order[j + 1]] == values[order[i]]) ++j;
    const double average = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = average;
    i = j + 1;
  }
  return ranks;
}

double SkewnessSign(const std::vector<double>& values) {
  const double m = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / m;
  double m2 = 0.0;
  double m3 = 0.0;
  for (double v : values) {
    const double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  m2 /= m;
  m3 /= m;
  if (m2 <= 0.0) return 0.0;
  const double skew = m3 / std::pow(m2, 1.5);
  // Numerically symmetric samples should not pick a side at random.
  if (std::abs(skew) < 1e-12) return 0.0;
  return skew > 0.0 ? 1.0 : -1.0;
}

}  // namespace

std::vector<double> EcodScores(const Matrix& embeddings) {
  const auto m = embeddings.rows();
  if (m < 2) Fail(ErrorCode::kInvalidArgument, "ecod needs at least 2 samples");
  const double md = static_cast<double>(m);
  const double floor = 1.0 / (2.0 * md);
  std::vector<double> left(m, 0.0), right(m, 0.0), autos(m, 0.0);
  std::vector<double> column(m);
  for (Eigen::Index d = 0; d < embeddings.cols(); ++d) {
    for (Eigen::Index i = 0; i < m; ++i) column[i] = embeddings(i, d);
    const std::vector<double> ranks = AverageRanks(column);
    const double sign = SkewnessSign(column);
    for (Eigen::Index i = 0; i < m; ++i) {
      const double l = -std::log(std::max(ranks[i] / md, floor));
      const double r = -std::log(std::max((md - ranks[i] + 1.0) / md, floor));
      left[i] += l;
      right[i] += r;
      // Negative skew: the left tail is the long one.
      autos[i] += sign < 0.0 ? l : (sign > 0.0 ? r : 0.5 * (l + r));
    }
  }
  std::vector<double> scores(m);
  for (Eigen::Index i = 0; i < m; ++i) scores[i] = std::max({left[i], right[i], autos[i]});
  return scores;
}

ThresholdResult ThresholdPredict(const std::vector<double>& scores, double contamination) {
  if (scores.empty()) Fail(ErrorCode::kInvalidArgument, "cannot threshold an empty score list");
  Require(contamination > 0.0 && contamination < 1.0, "contamination must be in (0, 1)");
  std::vector<double> sorted = scores;
  std::sort(sorted.begin(), sorted.end());
  const double position = (1.0 - contamination) * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(position));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = position - static_cast<double>(lo);
  ThresholdResult out;
  out.tau = sorted[lo] + frac * (sorted[hi] - sorted[lo]);
  out.predicted.reserve(scores.size());
  for (double s : scores) out.predicted.push_back(s > out.tau);
  return out;
}

double SymmetricOverlap(const NodeSet& gt, const NodeSet& predicted) {
  if (gt.empty() || predicted.empty()) return 0.0;
  NodeSet a = gt;
  NodeSet b = predicted;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  NodeSet common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  const double shared = static_cast<double>(common.size());
  return 0.5 * (shared / static_cast<double>(a.size()) + shared / static_cast<double>(b.size()));
}

double CompletenessScore(const NodeSet& gt, const std::vector<NodeSet>& predicted) {
  Require(!gt.empty(), "completeness score needs a non-empty ground-truth group");
  double best = 0.0;
  int skipped = 0;
  for (const NodeSet& p : predicted) {
    if (p.empty()) {
      ++skipped;
      continue;
    }
    best = std::max(best, SymmetricOverlap(gt, p));
  }
  if (skipped > 0) spdlog::warn("skipped {} empty predicted group(s)", skipped);
  return best;
}

double CompletenessRatio(const std::vector<NodeSet>& gt_groups,
                         const std::vector<NodeSet>& predicted) {
  Require(!gt_groups.empty(), "completeness ratio needs at least one ground-truth group");
  double sum = 0.0;
  for (const NodeSet& gt : gt_groups) sum += CompletenessScore(gt, predicted);
  return sum / static_cast<double>(gt_groups.size());
}

std::optional<double> RankAuc(const std::vector<double>& scores, const std::vector<bool>& labels) {
  Require(scores.size() == labels.size(), "auc needs one label per score");
  const auto positives = std::count(labels.begin(), labels.end(), true);
  const auto negatives = static_cast<long>(labels.size()) - positives;
  if (positives == 0 || negatives == 0) return std::nullopt;
  const std::vector<double> ranks = AverageRanks(scores);
  double rank_sum = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i]) rank_sum += ranks[i];
  }
  const double np = static_cast<double>(positives);
  return (rank_sum - np * (np + 1.0) / 2.0) / (np * static_cast<double>(negatives));
}

double F1FromCounts(const ConfusionCounts& c) {
  const long denom = 2 * c.tp + c.fp + c.fn;
  return denom == 0 ? 0.0 : 2.0 * static_cast<double>(c.tp) / static_cast<double>(denom);
}

void LabelVerdicts(std::vector<GroupVerdict>& verdicts, const std::vector<NodeSet>& candidates,
                   const std::vector<NodeSet>& gt_groups, double match_overlap) {
  Require(verdicts.size() == candidates.size(), "one verdict per candidate group is required");
  Require(match_overlap > 0.0 && match_overlap <= 1.0, "match_overlap must be in (0, 1]");
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    double best = 0.0;
    for (const NodeSet& gt : gt_groups) best = std::max(best, SymmetricOverlap(gt, candidates[i]));
    verdicts[i].gt_label = best >= match_overlap;
  }
}

EvalReport Evaluate(const std::vector<GroupVerdict>& verdicts,
                    const std::vector<NodeSet>& candidates,
                    const std::vector<NodeSet>& gt_groups) {
  Require(verdicts.size() == candidates.size(), "one verdict per candidate group is required");
  EvalReport report;
  report.num_candidates = static_cast<int>(verdicts.size());
  report.num_gt_groups = static_cast<int>(gt_groups.size());
  std::vector<double> scores;
  std::vector<bool> labels;
  std::vector<NodeSet> predicted;
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    const GroupVerdict& v = verdicts[i];
    if (!v.gt_label) Fail(ErrorCode::kInvalidArgument, "verdict without a ground-truth label");
    const bool truth = *v.gt_label;
    scores.push_back(v.score);
    labels.push_back(truth);
    if (v.predicted) {
      predicted.push_back(candidates[i]);
      ++report.num_predicted;
    }
    if (truth) ++report.num_positive_candidates;
    if (v.predicted && truth) ++report.confusion.tp;
    if (v.predicted && !truth) ++report.confusion.fp;
    if (!v.predicted && truth) ++report.confusion.fn;
    if (!v.predicted && !truth) ++report.confusion.tn;
  }
  report.f1 = F1FromCounts(report.confusion);
  report.auc = RankAuc(scores, labels);
  for (const NodeSet& gt : gt_groups) report.completeness.push_back(CompletenessScore(gt, predicted));
  if (!gt_groups.empty()) {
    report.cr = std::accumulate(report.completeness.begin(), report.completeness.end(), 0.0) /
                static_cast<double>(gt_groups.size());
  }
  return report;
}

}  // namespace grgad
