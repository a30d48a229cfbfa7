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

// Topology-pattern contrastive learning of group embeddings. Each group is
// encoded by a 2-layer GCN over its own subgraph with mean pooling; the
// encoder and a critic MLP are trained on a MINE-style objective between
// positive-view and negative-view embeddings.

#ifndef GRGAD_TPGCL_HPP_
#define GRGAD_TPGCL_HPP_

#include <vector>

#include "ndiff.hpp"
#include "patterns.hpp"
#include "sampler.hpp"

namespace grgad {

struct TpgclConfig {
  int epochs = 20;
  double lr = 1e-3;
  int batch_size = 32;
  int hidden = 64;
  int embedding_dim = 64;
  int critic_hidden = 64;

  void Validate() const;
};

nlohmann::json ToJson(const TpgclConfig& config);

class TpgclModel {
 public:
  TpgclModel() = default;
  static TpgclModel Create(int attribute_dim, const TpgclConfig& config, std::uint64_t seed);

  ParamRefs encoder_params() { return {&enc_w1, &enc_w2}; }
  ParamRefs params();
  int attribute_dim() const { return static_cast<int>(enc_w1.value.rows()); }
  int embedding_dim() const { return static_cast<int>(enc_w2.value.cols()); }

  Param enc_w1;  // d x hidden
  Param enc_w2;  // hidden x embedding_dim
  Mlp2 critic;   // (2 * embedding_dim) -> critic_hidden -> 1
  TpgclConfig config;
  std::uint64_t seed = 0;
};

// Forward pass over one small graph, keeping what the backward pass needs.
class GroupEncoderPass {
 public:
  GroupEncoderPass(const TpgclModel& model, const ViewGraph& view);

  const RowVector& embedding() const { return embedding_; }
  // Accumulates encoder gradients for dL/d(embedding) = grad.
  void Backward(TpgclModel& model, const RowVector& grad) const;

 private:
  Matrix propagation_;
  GcnCache layer1_;
  GcnCache layer2_;
  Matrix hidden_;
  RowVector embedding_;
};

// 2-layer GCN (ReLU, then identity) over the view's normalized adjacency with
// self-loops, mean-pooled over nodes.
RowVector GroupEmbedding(const TpgclModel& model, const ViewGraph& view);

// scores(i, j) = critic([a_i, b_j]).
Matrix CriticScores(const Matrix& a, const Matrix& b, const Mlp2& critic);

// L = -(1/m) sum_i S_ii + log((1/m) sum_{i != j} exp(S_ij)). Needs m >= 2.
double MineLossFromScores(const Matrix& scores);

// Donsker-Varadhan estimate mean_i S_ii - log(mean_{i != j} exp(S_ij)),
// i.e. log(m - 1) - L.
double MineMiEstimate(const Matrix& scores);

struct MineGradients {
  double loss = 0.0;
  Matrix grad_a;
  Matrix grad_b;
};

// Loss of the paired rows (a_i, b_i) against all cross pairs; accumulates the
// critic's parameter gradients and returns input gradients.
MineGradients MineLossAndGradients(const Matrix& a, const Matrix& b, Mlp2& critic);

inline double MineLoss(const Matrix& a, const Matrix& b, const Mlp2& critic) {
  return MineLossFromScores(CriticScores(a, b, critic));
}

struct TpgclTrainResult {
  TpgclModel model;
  std::vector<double> epoch_loss;  // mean batch loss per epoch
  long skipped_degenerate = 0;      // group-epochs skipped
  int usable_groups = 0;
};

// Seed of the views generated for `group_index` in `epoch`.
std::uint64_t ViewSeed(std::uint64_t seed, int epoch, int group_index);

// Shuffled minibatches each epoch, views regenerated per epoch, Adam on the
// encoder and critic jointly. Throws kDegenerate with fewer than two usable
// groups.
TpgclTrainResult TrainTpgcl(const std::vector<CandidateGroup>& groups,
                            const AttributedGraph& graph, const TpgclConfig& config,
                            std::uint64_t seed);

// Embeddings of the unaugmented groups, one row per group.
Matrix EmbedAll(const TpgclModel& model, const std::vector<CandidateGroup>& groups,
                const AttributedGraph& graph);

// Ablation baseline: mean attribute vector of each group.
Matrix MeanAttributeVectors(const std::vector<CandidateGroup>& groups,
                            const AttributedGraph& graph);

}  // namespace grgad

#endif  // GRGAD_TPGCL_HPP_
