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

#include "tpgcl.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

namespace grgad {

void TpgclConfig::Validate() const {
  Require(epochs >= 1, "tpgcl.epochs must be >= 1");
  Require(lr > 0.0, "tpgcl.lr must be positive");
  Require(batch_size >= 2, "tpgcl.batch_size must be >= 2");
  Require(hidden >= 1, "tpgcl.hidden must be >= 1");
  Require(embedding_dim >= 1, "tpgcl.embedding_dim must be >= 1");
  Require(critic_hidden >= 1, "tpgcl.critic_hidden must be >= 1");
}

nlohmann::json ToJson(const TpgclConfig& c) {
  return {{"epochs", c.epochs},           {"lr", c.lr},
          {"batch_size", c.batch_size},   {"hidden", c.hidden},
          {"embedding_dim", c.embedding_dim}, {"critic_hidden", c.critic_hidden}};
}

TpgclModel TpgclModel::Create(int attribute_dim, const TpgclConfig& config,
                              std::uint64_t seed) {
  config.Validate();
  Require(attribute_dim >= 1, "tpgcl needs at least one attribute column");
  SeededRng rng(seed);
  TpgclModel model;
  model.enc_w1 = Param("enc_w1", GlorotUniform(attribute_dim, config.hidden, rng));
  model.enc_w2 = Param("enc_w2", GlorotUniform(config.hidden, config.embedding_dim, rng));
  model.critic = Mlp2("critic", 2 * config.embedding_dim, config.critic_hidden, rng);
  model.config = config;
  model.seed = seed;
  return model;
}

ParamRefs TpgclModel::params() {
  ParamRefs refs = encoder_params();
  for (Param* p : critic.params()) refs.push_back(p);
  return refs;
}

GroupEncoderPass::GroupEncoderPass(const TpgclModel& model, const ViewGraph& view) {
  if (view.num_nodes() == 0) Fail(ErrorCode::kDegenerate, "cannot embed an empty view");
  if (view.attributes.cols() != model.attribute_dim()) {
    Fail(ErrorCode::kInvalidArgument, "view attributes do not match the encoder input size");
  }
  propagation_ = Matrix(PropagationSparse(view.num_nodes(), view.edges));
  hidden_ = GcnForward(propagation_, view.attributes, model.enc_w1, Activation::kRelu, &layer1_);
  const Matrix z = GcnForward(propagation_, hidden_, model.enc_w2, Activation::kIdentity, &layer2_);
  embedding_ = z.colwise().mean();
}

void GroupEncoderPass::Backward(TpgclModel& model, const RowVector& grad) const {
  const auto k = propagation_.rows();
  const Matrix grad_z = (Vector::Ones(k) / static_cast<double>(k)) * grad;
  const Matrix grad_hidden = GcnBackward(propagation_, layer2_, grad_z, model.enc_w2);
  GcnBackward(propagation_, layer1_, grad_hidden, model.enc_w1);
}

RowVector GroupEmbedding(const TpgclModel& model, const ViewGraph& view) {
  return GroupEncoderPass(model, view).embedding();
}

namespace {

// First-layer contributions of the two halves of the critic input.
struct CriticSplit {
  Matrix left;   // a * W1[top]
  Matrix right;  // b * W1[bottom]
};

CriticSplit SplitCritic(const Matrix& a, const Matrix& b, const Mlp2& critic) {
  if (a.rows() != b.rows() || a.cols() + b.cols() != critic.input_dim()) {
    Fail(ErrorCode::kInvalidArgument, "critic input shape mismatch");
  }
  const auto& w1 = critic.w1.value;
  Matrix left = a * w1.topRows(a.cols());
  left.rowwise() += critic.b1.value.row(0);
  return CriticSplit{std::move(left), b * w1.bottomRows(b.cols())};
}

}  // namespace

Matrix CriticScores(const Matrix& a, const Matrix& b, const Mlp2& critic) {
  const CriticSplit split = SplitCritic(a, b, critic);
  const auto m = a.rows();
  const Vector w2 = critic.w2.value.col(0);
  Matrix scores(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    Matrix pre = split.right;
    pre.rowwise() += split.left.row(i);
    scores.row(i) = (pre.cwiseMax(0.0) * w2).transpose();
  }
  scores.array() += critic.b2.value(0, 0);
  return scores;
}

namespace {

struct OffDiagonalLogSumExp {
  double shift = 0.0;
  double sum = 0.0;  // sum_{i != j} exp(S_ij - shift)
};

OffDiagonalLogSumExp OffDiagonal(const Matrix& s) {
  const auto m = s.rows();
  OffDiagonalLogSumExp out;
  out.shift = -INFINITY;
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      if (i != j) out.shift = std::max(out.shift, s(i, j));
    }
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      if (i != j) out.sum += std::exp(s(i, j) - out.shift);
    }
  }
  return out;
}

}  // namespace

double MineLossFromScores(const Matrix& scores) {
  const auto m = scores.rows();
  if (m < 2 || scores.cols() != m) {
    Fail(ErrorCode::kInvalidArgument, "mine loss needs a square score matrix with m >= 2");
  }
  const auto lse = OffDiagonal(scores);
  const double md = static_cast<double>(m);
  return -scores.diagonal().sum() / md + std::log(lse.sum) + lse.shift - std::log(md);
}

double MineMiEstimate(const Matrix& scores) {
  return std::log(static_cast<double>(scores.rows()) - 1.0) - MineLossFromScores(scores);
}

MineGradients MineLossAndGradients(const Matrix& a, const Matrix& b, Mlp2& critic) {
  const auto m = a.rows();
  const CriticSplit split = SplitCritic(a, b, critic);
  const Vector w2 = critic.w2.value.col(0);
  const Matrix scores = CriticScores(a, b, critic);
  MineGradients out;
  out.loss = MineLossFromScores(scores);

  // dL/dS: -1/m on the diagonal, softmax weights off it.
  const auto lse = OffDiagonal(scores);
  const double md = static_cast<double>(m);
  Matrix grad_s(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      grad_s(i, j) = i == j ? -1.0 / md : std::exp(scores(i, j) - lse.shift) / lse.sum;
    }
  }

  Matrix grad_left = Matrix::Zero(m, split.left.cols());
  Matrix grad_right = Matrix::Zero(m, split.right.cols());
  for (Eigen::Index i = 0; i < m; ++i) {
    Matrix pre = split.right;
    pre.rowwise() += split.left.row(i);
    const Matrix hidden = pre.cwiseMax(0.0);
    const Vector g = grad_s.row(i).transpose();
    critic.w2.grad.col(0).noalias() += hidden.transpose() * g;
    critic.b2.grad(0, 0) += g.sum();
    Matrix grad_pre = g * w2.transpose();
    grad_pre = grad_pre.cwiseProduct((pre.array() > 0.0).cast<double>().matrix());
    const RowVector row_sum = grad_pre.colwise().sum();
    grad_left.row(i) += row_sum;
    grad_right += grad_pre;
  }
  critic.b1.grad.row(0) += grad_left.colwise().sum();
  critic.w1.grad.topRows(a.cols()).noalias() += a.transpose() * grad_left;
  critic.w1.grad.bottomRows(b.cols()).noalias() += b.transpose() * grad_right;
  out.grad_a = grad_left * critic.w1.value.topRows(a.cols()).transpose();
  out.grad_b = grad_right * critic.w1.value.bottomRows(b.cols()).transpose();
  return out;
}

std::uint64_t ViewSeed(std::uint64_t seed, int epoch, int group_index) {
  return MixSeed(MixSeed(seed, 0x76696577ULL + static_cast<std::uint64_t>(epoch)),
                 static_cast<std::uint64_t>(group_index));
}

namespace {

struct PreparedGroup {
  int index = 0;
  PatternDecomposition patterns;
};

struct ViewPair {
  ViewGraph positive;
  ViewGraph negative;
};

std::optional<ViewPair> MakeViews(const CandidateGroup& group, const PatternDecomposition& patterns,
                                  const Matrix& attributes, std::uint64_t seed) {
  try {
    const AugmentedView negative = NegativeView(group, patterns, seed);
    const AugmentedView positive = PositiveView(group, patterns, attributes, seed);
    return ViewPair{MaterializeView(group, positive, attributes),
                    MaterializeView(group, negative, attributes)};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kDegenerate) throw;
    return std::nullopt;
  }
}

}  // namespace

TpgclTrainResult TrainTpgcl(const std::vector<CandidateGroup>& groups,
                            const AttributedGraph& graph, const TpgclConfig& config,
                            std::uint64_t seed) {
  config.Validate();
  const Matrix& x = graph.attributes();
  std::vector<PreparedGroup> prepared;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    prepared.push_back(PreparedGroup{static_cast<int>(i), FindPatterns(groups[i])});
  }
  int usable = 0;
  for (const auto& p : prepared) {
    if (MakeViews(groups[p.index], p.patterns, x, ViewSeed(seed, 0, p.index))) ++usable;
  }
  if (usable < 2) {
    Fail(ErrorCode::kDegenerate,
         fmt::format("tpgcl needs at least 2 usable groups, got {}", usable));
  }

  TpgclTrainResult result;
  result.usable_groups = usable;
  result.model = TpgclModel::Create(graph.attribute_dim(), config, seed);
  TpgclModel& model = result.model;
  const ParamRefs params = model.params();
  AdamState adam;
  const AdamConfig adam_config{.lr = config.lr};
  SeededRng shuffle_rng(MixSeed(seed, 0x73687566ULL));

  const int m = static_cast<int>(prepared.size());
  const int batch = std::min(config.batch_size, m);
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    shuffle_rng.Shuffle(order);
    // A trailing batch of one would have no negatives; fold it in.
    std::vector<std::pair<int, int>> batches;
    for (int start = 0; start < m; start += batch) {
      batches.emplace_back(start, std::min(m, start + batch));
    }
    if (batches.size() > 1 && batches.back().second - batches.back().first < 2) {
      batches[batches.size() - 2].second = batches.back().second;
      batches.pop_back();
    }

    double loss_sum = 0.0;
    int loss_count = 0;
    for (const auto& [begin, end] : batches) {
      std::vector<GroupEncoderPass> pos_passes;
      std::vector<GroupEncoderPass> neg_passes;
      for (int k = begin; k < end; ++k) {
        const PreparedGroup& p = prepared[order[k]];
        auto views = MakeViews(groups[p.index], p.patterns, x, ViewSeed(seed, epoch, p.index));
        if (!views) {
          ++result.skipped_degenerate;
          continue;
        }
        pos_passes.emplace_back(model, views->positive);
        neg_passes.emplace_back(model, views->negative);
      }
      const auto count = static_cast<Eigen::Index>(pos_passes.size());
      if (count < 2) continue;
      Matrix pos(count, model.embedding_dim());
      Matrix neg(count, model.embedding_dim());
      for (Eigen::Index i = 0; i < count; ++i) {
        pos.row(i) = pos_passes[i].embedding();
        neg.row(i) = neg_passes[i].embedding();
      }
      ZeroGrads(params);
      const MineGradients mine = MineLossAndGradients(pos, neg, model.critic);
      if (!std::isfinite(mine.loss)) {
        Fail(ErrorCode::kNumeric, fmt::format("tpgcl loss became non-finite in epoch {}", epoch));
      }
      for (Eigen::Index i = 0; i < count; ++i) {
        pos_passes[i].Backward(model, mine.grad_a.row(i));
        neg_passes[i].Backward(model, mine.grad_b.row(i));
      }
      AdamStep(params, adam, adam_config);
      loss_sum += mine.loss;
      ++loss_count;
    }
    const double epoch_loss = loss_count > 0 ? loss_sum / loss_count : 0.0;
    result.epoch_loss.push_back(epoch_loss);
    spdlog::debug("tpgcl epoch {} loss {:.6f}", epoch, epoch_loss);
  }
  if (result.skipped_degenerate > 0) {
    spdlog::info("tpgcl skipped {} degenerate group views", result.skipped_degenerate);
  }
  return result;
}

Matrix EmbedAll(const TpgclModel& model, const std::vector<CandidateGroup>& groups,
                const AttributedGraph& graph) {
  Matrix out(static_cast<Eigen::Index>(groups.size()), model.embedding_dim());
  for (std::size_t i = 0; i < groups.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) =
        GroupEmbedding(model, MaterializeGroup(groups[i], graph.attributes()));
  }
  return out;
}

Matrix MeanAttributeVectors(const std::vector<CandidateGroup>& groups,
                            const AttributedGraph& graph) {
  Matrix out(static_cast<Eigen::Index>(groups.size()), graph.attribute_dim());
  for (std::size_t i = 0; i < groups.size(); ++i) {
    RowVector mean = RowVector::Zero(graph.attribute_dim());
    for (int id : groups[i].nodes) mean += graph.attributes().row(id);
    out.row(static_cast<Eigen::Index>(i)) = mean / static_cast<double>(groups[i].nodes.size());
  }
  return out;
}

}  // namespace grgad
