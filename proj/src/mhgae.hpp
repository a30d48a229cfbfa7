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

// Multi-hop graph autoencoder. A 2-layer GCN encodes nodes; the structure
// decoder is sigmoid(Z Z^T) compared against a ReconTarget (plain, k-hop or
// overlap-weighted adjacency); a linear decoder reconstructs attributes.
// Per-node errors mix the two terms and rank candidate anchor nodes.

#ifndef GRGAD_MHGAE_HPP_
#define GRGAD_MHGAE_HPP_

#include <vector>

#include "graph.hpp"
#include "ndiff.hpp"

namespace grgad {

struct MhGaeConfig {
  double recon_mix_lambda = 0.5;  // weight of the structure error
  int epochs = 300;
  double lr = 1e-3;
  int hidden = 64;
  int latent = 64;

  void Validate() const;
};

nlohmann::json ToJson(const MhGaeConfig& config);

class MhGaeModel {
 public:
  MhGaeModel() = default;
  static MhGaeModel Create(int attribute_dim, const MhGaeConfig& config, std::uint64_t seed);

  ParamRefs params() { return {&enc_w1, &enc_w2, &attr_dec_w}; }
  int attribute_dim() const { return static_cast<int>(enc_w1.value.rows()); }

  Param enc_w1;      // d x hidden
  Param enc_w2;      // hidden x latent
  Param attr_dec_w;  // latent x d
  MhGaeConfig config;
  std::uint64_t seed = 0;
};

struct NodeErrorVector {
  Vector r;
  Vector r_stru;
  Vector r_attr;
};

// sigmoid(Z Z^T) with the diagonal set to zero.
Matrix DecodeStructure(const Matrix& z);

// r_stru(i) = sum_j |T_ij - S_ij|, r_attr(i) = ||x_i - x'_i||_2,
// r = lambda r_stru + (1 - lambda) r_attr.
NodeErrorVector ErrorsFromReconstruction(const Matrix& target, const Matrix& decoded,
                                         const Matrix& attributes, const Matrix& attr_recon,
                                         double lambda);

// Binds one graph and target; evaluates the summed error and its gradient.
class MhGaeObjective {
 public:
  MhGaeObjective(const AttributedGraph& graph, const ReconTarget& target);

  Matrix Encode(const MhGaeModel& model) const;
  NodeErrorVector Errors(const MhGaeModel& model) const;
  double Loss(const MhGaeModel& model) const;
  // Overwrites the .grad of every model parameter; returns the loss.
  double LossAndGradients(MhGaeModel& model) const;

 private:
  SparseMatrix propagation_;
  const Matrix& attributes_;
  const Matrix& target_;
};

NodeErrorVector ReconstructionErrors(const MhGaeModel& model, const AttributedGraph& graph,
                                     const ReconTarget& target);

struct MhGaeTrainResult {
  MhGaeModel model;
  NodeErrorVector errors;
  std::vector<double> loss_history;  // loss before each update
  double final_loss = 0.0;
};

// Full-batch Adam on the summed node errors. Throws kNumeric on a non-finite
// loss, naming the epoch.
MhGaeTrainResult TrainMhGae(const AttributedGraph& graph, const ReconTarget& target,
                            const MhGaeConfig& config, std::uint64_t seed);

// ceil(fraction * n) nodes with the largest r; ties go to the lower index.
// Returned in ascending node order.
std::vector<int> SelectAnchorNodes(const NodeErrorVector& errors, double fraction);

}  // namespace grgad

#endif  // GRGAD_MHGAE_HPP_
