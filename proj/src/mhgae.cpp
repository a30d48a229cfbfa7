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

#include "mhgae.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

namespace grgad {

void MhGaeConfig::Validate() const {
  Require(recon_mix_lambda >= 0.0 && recon_mix_lambda <= 1.0,
          "mhgae.recon_mix_lambda must be in [0, 1]");
  Require(epochs >= 1, "mhgae.epochs must be >= 1");
  Require(lr > 0.0, "mhgae.lr must be positive");
  Require(hidden >= 1, "mhgae.hidden must be >= 1");
  Require(latent >= 1, "mhgae.latent must be >= 1");
}

nlohmann::json ToJson(const MhGaeConfig& c) {
  return {{"recon_mix_lambda", c.recon_mix_lambda},
          {"epochs", c.epochs},
          {"lr", c.lr},
          {"hidden", c.hidden},
          {"latent", c.latent}};
}

MhGaeModel MhGaeModel::Create(int attribute_dim, const MhGaeConfig& config,
                              std::uint64_t seed) {
  config.Validate();
  Require(attribute_dim >= 1, "mhgae needs at least one attribute column");
  SeededRng rng(seed);
  MhGaeModel model;
  model.enc_w1 = Param("enc_w1", GlorotUniform(attribute_dim, config.hidden, rng));
  model.enc_w2 = Param("enc_w2", GlorotUniform(config.hidden, config.latent, rng));
  model.attr_dec_w = Param("attr_dec_w", GlorotUniform(config.latent, attribute_dim, rng));
  model.config = config;
  model.seed = seed;
  return model;
}

namespace {

Matrix Sigmoid(const Matrix& q) {
  return (1.0 / (1.0 + (-q.array()).exp())).matrix();
}

}  // namespace

Matrix DecodeStructure(const Matrix& z) {
  Matrix s = Sigmoid(z * z.transpose());
  s.diagonal().setZero();
  return s;
}

NodeErrorVector ErrorsFromReconstruction(const Matrix& target, const Matrix& decoded,
                                         const Matrix& attributes, const Matrix& attr_recon,
                                         double lambda) {
  if (target.rows() != decoded.rows() || target.cols() != decoded.cols() ||
      attributes.rows() != attr_recon.rows() || attributes.cols() != attr_recon.cols() ||
      target.rows() != attributes.rows()) {
    Fail(ErrorCode::kInvalidArgument, "reconstruction shapes do not match the graph");
  }
  NodeErrorVector e;
  e.r_stru = (target - decoded).cwiseAbs().rowwise().sum();
  e.r_attr = (attributes - attr_recon).rowwise().norm();
  e.r = lambda * e.r_stru + (1.0 - lambda) * e.r_attr;
  return e;
}

MhGaeObjective::MhGaeObjective(const AttributedGraph& graph, const ReconTarget& target)
    : propagation_(PropagationSparse(graph)),
      attributes_(graph.attributes()),
      target_(target.m) {
  if (target.m.rows() != graph.num_nodes() || target.m.cols() != graph.num_nodes()) {
    Fail(ErrorCode::kInvalidArgument, "reconstruction target does not match the graph size");
  }
}

Matrix MhGaeObjective::Encode(const MhGaeModel& model) const {
  if (model.attribute_dim() != attributes_.cols()) {
    Fail(ErrorCode::kInvalidArgument,
         fmt::format("model expects {} attributes, graph has {}", model.attribute_dim(),
                     attributes_.cols()));
  }
  const Matrix h1 = GcnForward(propagation_, attributes_, model.enc_w1, Activation::kRelu);
  return GcnForward(propagation_, h1, model.enc_w2, Activation::kIdentity);
}

NodeErrorVector MhGaeObjective::Errors(const MhGaeModel& model) const {
  const Matrix z = Encode(model);
  return ErrorsFromReconstruction(target_, DecodeStructure(z), attributes_,
                                  z * model.attr_dec_w.value, model.config.recon_mix_lambda);
}

double MhGaeObjective::Loss(const MhGaeModel& model) const { return Errors(model).r.sum(); }

double MhGaeObjective::LossAndGradients(MhGaeModel& model) const {
  if (model.attribute_dim() != attributes_.cols()) {
    Fail(ErrorCode::kInvalidArgument, "model does not match the graph attribute dimension");
  }
  const double lambda = model.config.recon_mix_lambda;
  ZeroGrads(model.params());

  GcnCache c1, c2;
  const Matrix h1 = GcnForward(propagation_, attributes_, model.enc_w1, Activation::kRelu, &c1);
  const Matrix z = GcnForward(propagation_, h1, model.enc_w2, Activation::kIdentity, &c2);

  // Structure term.
  Matrix s = Sigmoid(z * z.transpose());
  s.diagonal().setZero();
  const Matrix diff = s - target_;
  double loss = lambda * diff.cwiseAbs().sum();
  Matrix grad_q = lambda * diff.array().sign().matrix();
  grad_q.diagonal().setZero();
  grad_q = grad_q.cwiseProduct(s).cwiseProduct((1.0 - s.array()).matrix());
  Matrix grad_z = (grad_q + grad_q.transpose()) * z;

  // Attribute term.
  const Matrix x_recon = z * model.attr_dec_w.value;
  const Matrix resid = x_recon - attributes_;
  const Vector norms = resid.rowwise().norm();
  loss += (1.0 - lambda) * norms.sum();
  Matrix grad_recon = Matrix::Zero(resid.rows(), resid.cols());
  for (Eigen::Index i = 0; i < resid.rows(); ++i) {
    if (norms[i] > 0.0) grad_recon.row(i) = (1.0 - lambda) / norms[i] * resid.row(i);
  }
  model.attr_dec_w.grad.noalias() += z.transpose() * grad_recon;
  grad_z.noalias() += grad_recon * model.attr_dec_w.value.transpose();

  const Matrix grad_h1 = GcnBackward(propagation_, c2, grad_z, model.enc_w2);
  GcnBackward(propagation_, c1, grad_h1, model.enc_w1);
  return loss;
}

NodeErrorVector ReconstructionErrors(const MhGaeModel& model, const AttributedGraph& graph,
                                     const ReconTarget& target) {
  return MhGaeObjective(graph, target).Errors(model);
}

MhGaeTrainResult TrainMhGae(const AttributedGraph& graph, const ReconTarget& target,
                            const MhGaeConfig& config, std::uint64_t seed) {
  config.Validate();
  MhGaeTrainResult result;
  result.model = MhGaeModel::Create(graph.attribute_dim(), config, seed);
  const MhGaeObjective objective(graph, target);
  AdamState adam;
  const AdamConfig adam_config{.lr = config.lr};
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    const double loss = objective.LossAndGradients(result.model);
    if (!std::isfinite(loss)) {
      Fail(ErrorCode::kNumeric, fmt::format("mhgae loss became non-finite at epoch {}", epoch));
    }
    result.loss_history.push_back(loss);
    AdamStep(result.model.params(), adam, adam_config);
    if (epoch % 50 == 0) spdlog::debug("mhgae epoch {} loss {:.6f}", epoch, loss);
  }
  result.errors = objective.Errors(result.model);
  result.final_loss = result.errors.r.sum();
  if (!std::isfinite(result.final_loss)) {
    Fail(ErrorCode::kNumeric, "mhgae loss became non-finite after the final epoch");
  }

  // Soft convergence check over the last 10% of epochs; logged only.
  const std::size_t tail = std::max<std::size_t>(2, result.loss_history.size() / 10);
  if (result.loss_history.size() >= tail) {
    const auto begin = result.loss_history.end() - static_cast<std::ptrdiff_t>(tail);
    const bool monotone = std::is_sorted(begin, result.loss_history.end(), std::greater<>());
    if (!monotone) spdlog::info("mhgae loss not monotone over the last {} epochs", tail);
  }
  spdlog::info("mhgae trained: loss {:.4f} -> {:.4f}", result.loss_history.front(),
               result.final_loss);
  return result;
}

std::vector<int> SelectAnchorNodes(const NodeErrorVector& errors, double fraction) {
  Require(fraction > 0.0 && fraction <= 1.0, "anchor fraction must be in (0, 1]");
  const auto n = static_cast<int>(errors.r.size());
  if (n == 0) Fail(ErrorCode::kInvalidArgument, "cannot select anchors from an empty error vector");
  // The small slack keeps e.g. (1/3) * 3 from rounding up to 2.
  int count = static_cast<int>(std::ceil(fraction * n - 1e-9));
  count = std::clamp(count, 1, n);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return errors.r[a] > errors.r[b]; });
  order.resize(count);
  std::sort(order.begin(), order.end());
  return order;
}

}  // namespace grgad
