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

// Small dense differentiation kit: parameters, a GCN layer, a one-hidden-layer
// MLP, Adam, and a finite-difference gradient checker. Backward passes are
// written by hand for each architecture.

#ifndef GRGAD_NDIFF_HPP_
#define GRGAD_NDIFF_HPP_

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "common.hpp"
#include "graph.hpp"

namespace grgad {

struct Param {
  std::string name;
  Matrix value;
  Matrix grad;

  Param() = default;
  Param(std::string n, Matrix v)
      : name(std::move(n)), value(std::move(v)), grad(Matrix::Zero(value.rows(), value.cols())) {}

  void ZeroGrad() { grad.setZero(); }
};

using ParamRefs = std::vector<Param*>;

void ZeroGrads(const ParamRefs& params);

// Uniform in +-sqrt(6 / (fan_in + fan_out)).
Matrix GlorotUniform(int fan_in, int fan_out, SeededRng& rng);

enum class Activation { kRelu, kIdentity };

// Intermediates of one GCN layer needed by the backward pass.
struct GcnCache {
  Matrix propagated_input;  // P H
  Matrix pre_activation;    // P H W
  Activation activation = Activation::kIdentity;
};

// act(P H W). P may be dense (Matrix) or sparse (SparseMatrix).
template <typename Prop>
Matrix GcnForward(const Prop& p, const Matrix& h, const Param& w, Activation act,
                  GcnCache* cache = nullptr) {
  if (p.rows() != p.cols() || p.cols() != h.rows() || h.cols() != w.value.rows()) {
    Fail(ErrorCode::kInvalidArgument, "gcn layer shape mismatch");
  }
  Matrix ph = p * h;
  Matrix pre = ph * w.value;
  Matrix out = act == Activation::kRelu ? Matrix(pre.cwiseMax(0.0)) : pre;
  if (cache) {
    cache->propagated_input = std::move(ph);
    cache->pre_activation = std::move(pre);
    cache->activation = act;
  }
  return out;
}

// Accumulates dL/dW into w.grad and returns dL/dH. P must be symmetric.
template <typename Prop>
Matrix GcnBackward(const Prop& p, const GcnCache& cache, const Matrix& grad_out, Param& w) {
  Matrix grad_pre = grad_out;
  if (cache.activation == Activation::kRelu) {
    grad_pre = grad_pre.cwiseProduct(
        (cache.pre_activation.array() > 0.0).cast<double>().matrix());
  }
  w.grad.noalias() += cache.propagated_input.transpose() * grad_pre;
  Matrix grad_ph = grad_pre * w.value.transpose();
  return p.transpose() * grad_ph;
}

// Scalar-output MLP with one ReLU hidden layer:
//   f(x) = w2 . relu(W1^T x + b1) + b2
class Mlp2 {
 public:
  Mlp2() = default;
  Mlp2(const std::string& prefix, int input_dim, int hidden_dim, SeededRng& rng);

  int input_dim() const { return static_cast<int>(w1.value.rows()); }
  int hidden_dim() const { return static_cast<int>(w1.value.cols()); }

  double Forward(const RowVector& x) const;
  // One output per row of `x`.
  Vector ForwardBatch(const Matrix& x) const;

  // Accumulates parameter gradients for sum_i grad_out[i] * f(x_i) and
  // returns the gradient with respect to the inputs.
  Matrix BackwardBatch(const Matrix& x, const Vector& grad_out);

  ParamRefs params() { return {&w1, &b1, &w2, &b2}; }

  Param w1;  // input x hidden
  Param b1;  // 1 x hidden
  Param w2;  // hidden x 1
  Param b2;  // 1 x 1
};

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  std::vector<Matrix> m;
  std::vector<Matrix> v;
  long step = 0;
};

// One bias-corrected Adam update over `params` using their .grad fields.
// Throws ErrorCode::kNumeric naming the parameter on a non-finite gradient.
void AdamStep(const ParamRefs& params, AdamState& state, const AdamConfig& config);

struct GradCheckOptions {
  double step = 1e-5;
  // Entries checked per parameter; all entries when the parameter is smaller.
  int max_entries_per_param = 64;
  // Relative errors are |a - n| / max(|a|, |n|, abs_floor).
  double abs_floor = 1e-6;
  std::uint64_t seed = 0;
};

struct GradCheckReport {
  double max_rel_error = 0.0;
  std::string worst_param;
  int entries_checked = 0;
};

// Central-difference check of the analytic gradients. `loss` evaluates the
// loss at the current parameter values; `gradients` recomputes .grad of every
// parameter (after zeroing) at the current values.
GradCheckReport CheckGradients(const std::function<double()>& loss,
                               const std::function<void()>& gradients, const ParamRefs& params,
                               const GradCheckOptions& options = {});

// JSON checkpoint:
//   {"format": "grgad-checkpoint", "version": 1, "model": kind, "seed": N,
//    "config": {...}, "params": [{"name", "rows", "cols", "values": [...]}]}
// Values are written in shortest round-trip form, so save/load is exact.
void SaveCheckpoint(const std::string& path, const std::string& model_kind,
                    const ParamRefs& params, std::uint64_t seed, const nlohmann::json& config);

struct LoadedCheckpoint {
  std::uint64_t seed = 0;
  nlohmann::json config;
};

// Reads the header of a checkpoint without touching any parameters.
LoadedCheckpoint ReadCheckpointHeader(const std::string& path, const std::string& model_kind);

// Copies stored values into params with matching names; shapes must agree.
LoadedCheckpoint LoadCheckpoint(const std::string& path, const std::string& model_kind,
                                const ParamRefs& params);

}  // namespace grgad

#endif  // GRGAD_NDIFF_HPP_
