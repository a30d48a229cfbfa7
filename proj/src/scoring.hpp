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

#ifndef GRGAD_SCORING_HPP_
#define GRGAD_SCORING_HPP_

#include <optional>
#include <vector>

#include "common.hpp"

namespace grgad {

using NodeSet = std::vector<int>;

// Empirical-CDF outlier scores, one per row of `embeddings` (higher = more
// anomalous). Per dimension, left/right tail probabilities come from average
// ranks; the sample score is the largest of the summed -log left tails, the
// summed -log right tails, and the summed -log tails on each dimension's
// skewed side. Tails are floored at 1/(2m).
std::vector<double> EcodScores(const Matrix& embeddings);

struct ThresholdResult {
  double tau = 0.0;
  std::vector<bool> predicted;  // score > tau
};

// tau is the (1 - contamination) quantile with linear interpolation.
ThresholdResult ThresholdPredict(const std::vector<double>& scores, double contamination);

// 0.5 * (|P n G| / |G| + |P n G| / |P|), the symmetric overlap of a
// predicted group P with a ground-truth group G.
double SymmetricOverlap(const NodeSet& gt, const NodeSet& predicted);

// Best symmetric overlap of `gt` with any predicted group; 0 if none. Empty
// predicted groups are skipped with a warning.
double CompletenessScore(const NodeSet& gt, const std::vector<NodeSet>& predicted);

// Mean completeness over the ground-truth groups.
double CompletenessRatio(const std::vector<NodeSet>& gt_groups,
                         const std::vector<NodeSet>& predicted);

// Mann-Whitney AUC with tie-averaged ranks; empty when one class is missing.
std::optional<double> RankAuc(const std::vector<double>& scores, const std::vector<bool>& labels);

struct ConfusionCounts {
  long tp = 0;
  long fp = 0;
  long tn = 0;
  long fn = 0;
};

double F1FromCounts(const ConfusionCounts& c);

struct GroupVerdict {
  int group_id = 0;
  double score = 0.0;
  bool predicted = false;
  std::optional<bool> gt_label;
};

struct EvalReport {
  double cr = 0.0;
  double f1 = 0.0;
  std::optional<double> auc;
  std::vector<double> completeness;  // per ground-truth group
  ConfusionCounts confusion;
  int num_candidates = 0;
  int num_predicted = 0;
  int num_gt_groups = 0;
  int num_positive_candidates = 0;
};

// Labels every candidate against the ground truth (symmetric overlap >=
// match_overlap with some gt group); fills gt_label in `verdicts`.
void LabelVerdicts(std::vector<GroupVerdict>& verdicts, const std::vector<NodeSet>& candidates,
                   const std::vector<NodeSet>& gt_groups, double match_overlap);

// F1 and AUC over labelled verdicts, plus CR of the predicted groups.
EvalReport Evaluate(const std::vector<GroupVerdict>& verdicts,
                    const std::vector<NodeSet>& candidates,
                    const std::vector<NodeSet>& gt_groups);

}  // namespace grgad

#endif  // GRGAD_SCORING_HPP_
