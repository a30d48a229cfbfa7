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

#include "ndiff.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <fmt/format.h>

namespace grgad {

void ZeroGrads(const ParamRefs& params) {
  for (Param* p : params) p->ZeroGrad();
}

Matrix GlorotUniform(int fan_in, int fan_out, SeededRng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  Matrix w(fan_in, fan_out);
  for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = rng.Uniform(-limit, limit);
  return w;
}

Mlp2::Mlp2(const std::string& prefix, int input_dim, int hidden_dim, SeededRng& rng)
    : w1(prefix + ".w1", GlorotUniform(input_dim, hidden_dim, rng)),
      b1(prefix + ".b1", Matrix::Zero(1, hidden_dim)),
      w2(prefix + ".w2", GlorotUniform(hidden_dim, 1, rng)),
      b2(prefix + ".b2", Matrix::Zero(1, 1)) {}

double Mlp2::Forward(const RowVector& x) const {
  if (x.size() != w1.value.rows()) Fail(ErrorCode::kInvalidArgument, "mlp input size mismatch");
  const RowVector hidden = (x * w1.value + b1.value).cwiseMax(0.0);
  return (hidden * w2.value)(0, 0) + b2.value(0, 0);
}

Vector Mlp2::ForwardBatch(const Matrix& x) const {
  if (x.cols() != w1.value.rows()) Fail(ErrorCode::kInvalidArgument, "mlp input size mismatch");
  Matrix hidden = x * w1.value;
  hidden.rowwise() += b1.value.row(0);
  hidden = hidden.cwiseMax(0.0);
  Vector out = hidden * w2.value.col(0);
  out.array() += b2.value(0, 0);
  return out;
}

Matrix Mlp2::BackwardBatch(const Matrix& x, const Vector& grad_out) {
  if (x.cols() != w1.value.rows() || x.rows() != grad_out.size()) {
    Fail(ErrorCode::kInvalidArgument, "mlp backward shape mismatch");
  }
  Matrix pre = x * w1.value;
  pre.rowwise() += b1.value.row(0);
  const Matrix hidden = pre.cwiseMax(0.0);
  w2.grad.col(0).noalias() += hidden.transpose() * grad_out;
  b2.grad(0, 0) += grad_out.sum();
  // d pre = grad_out * w2^T masked by the ReLU.
  Matrix grad_pre = grad_out * w2.value.col(0).transpose();
  grad_pre = grad_pre.cwiseProduct((pre.array() > 0.0).cast<double>().matrix());
  w1.grad.noalias() += x.transpose() * grad_pre;
  b1.grad.row(0) += grad_pre.colwise().sum();
  return grad_pre * w1.value.transpose();
}

void AdamStep(const ParamRefs& params, AdamState& state, const AdamConfig& config) {
  Require(config.lr > 0.0, "adam learning rate must be positive");
  if (state.m.size() != params.size()) {
    state.m.clear();
    state.v.clear();
    for (const Param* p : params) {
      state.m.push_back(Matrix::Zero(p->value.rows(), p->value.cols()));
      state.v.push_back(Matrix::Zero(p->value.rows(), p->value.cols()));
    }
    state.step = 0;
  }
  for (const Param* p : params) {
    if (!p->grad.allFinite()) {
      Fail(ErrorCode::kNumeric, "non-finite gradient in parameter '" + p->name + "'");
    }
  }
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(config.beta1, t);
  const double correction2 = 1.0 - std::pow(config.beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    Param& p = *params[i];
    Matrix& m = state.m[i];
    Matrix& v = state.v[i];
    m = config.beta1 * m + (1.0 - config.beta1) * p.grad;
    v = config.beta2 * v + (1.0 - config.beta2) * p.grad.cwiseProduct(p.grad);
    p.value.array() -= config.lr * (m.array() / correction1) /
                       ((v.array() / correction2).sqrt() + config.eps);
    if (!p.value.allFinite()) {
      Fail(ErrorCode::kNumeric, "non-finite value after update of parameter '" + p.name + "'");
    }
  }
}

GradCheckReport CheckGradients(const std::function<double()>& loss,
                               const std::function<void()>& gradients, const ParamRefs& params,
                               const GradCheckOptions& options) {
  ZeroGrads(params);
  gradients();
  std::vector<Matrix> analytic;
  analytic.reserve(params.size());
  for (const Param* p : params) analytic.push_back(p->grad);

  SeededRng rng(options.seed);
  GradCheckReport report;
  for (std::size_t k = 0; k < params.size(); ++k) {
    Param& p = *params[k];
    const auto size = static_cast<std::size_t>(p.value.size());
    std::vector<std::size_t> entries(size);
    std::iota(entries.begin(), entries.end(), 0);
    if (size > static_cast<std::size_t>(options.max_entries_per_param)) {
      rng.Shuffle(entries);
      entries.resize(options.max_entries_per_param);
      std::sort(entries.begin(), entries.end());
    }
    for (std::size_t idx : entries) {
      double& slot = p.value.data()[idx];
      const double saved = slot;
      slot = saved + options.step;
      const double up = loss();
      slot = saved - options.step;
      const double down = loss();
      slot = saved;
      const double numeric = (up - down) / (2.0 * options.step);
      const double exact = analytic[k].data()[idx];
      const double denom = std::max({std::abs(exact), std::abs(numeric), options.abs_floor});
      const double rel = std::abs(exact - numeric) / denom;
      ++report.entries_checked;
      if (rel > report.max_rel_error || !std::isfinite(rel)) {
        report.max_rel_error = std::isfinite(rel) ? rel : INFINITY;
        report.worst_param = p.name;
      }
    }
  }
  return report;
}

void SaveCheckpoint(const std::string& path, const std::string& model_kind,
                    const ParamRefs& params, std::uint64_t seed, const nlohmann::json& config) {
  nlohmann::json doc;
  doc["format"] = "grgad-checkpoint";
  doc["version"] = 1;
  doc["model"] = model_kind;
  doc["seed"] = seed;
  doc["config"] = config;
  auto& list = doc["params"] = nlohmann::json::array();
  for (const Param* p : params) {
    std::vector<double> values(p->value.data(), p->value.data() + p->value.size());
    list.push_back({{"name", p->name},
                    {"rows", p->value.rows()},
                    {"cols", p->value.cols()},
                    {"values", values}});
  }
  std::ofstream out(path);
  if (!out) Fail(ErrorCode::kIo, "cannot write checkpoint: " + path);
  out << doc.dump(1) << '\n';
}

namespace {

nlohmann::json ReadCheckpointDoc(const std::string& path, const std::string& model_kind) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kMissingArtifact, "missing checkpoint: " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParse, path + ": " + e.what());
  }
  if (doc.value("format", "") != "grgad-checkpoint" || doc.value("version", 0) != 1) {
    Fail(ErrorCode::kParse, path + ": not a version-1 grgad checkpoint");
  }
  if (doc.value("model", "") != model_kind) {
    Fail(ErrorCode::kParse, path + ": checkpoint holds a '" + doc.value("model", "") +
                                "' model, expected '" + model_kind + "'");
  }
  return doc;
}

}  // namespace

LoadedCheckpoint ReadCheckpointHeader(const std::string& path, const std::string& model_kind) {
  const nlohmann::json doc = ReadCheckpointDoc(path, model_kind);
  return LoadedCheckpoint{doc.at("seed").get<std::uint64_t>(), doc.at("config")};
}

LoadedCheckpoint LoadCheckpoint(const std::string& path, const std::string& model_kind,
                                const ParamRefs& params) {
  const nlohmann::json doc = ReadCheckpointDoc(path, model_kind);
  try {
    for (Param* p : params) {
      const auto& list = doc.at("params");
      const auto it = std::find_if(list.begin(), list.end(),
                                   [&](const nlohmann::json& e) { return e.at("name") == p->name; });
      if (it == list.end()) Fail(ErrorCode::kParse, path + ": missing parameter " + p->name);
      const auto rows = it->at("rows").get<Eigen::Index>();
      const auto cols = it->at("cols").get<Eigen::Index>();
      const auto values = it->at("values").get<std::vector<double>>();
      if (rows != p->value.rows() || cols != p->value.cols() ||
          static_cast<Eigen::Index>(values.size()) != rows * cols) {
        Fail(ErrorCode::kParse,
             fmt::format("{}: parameter {} has shape {}x{}, expected {}x{}", path, p->name, rows,
                         cols, p->value.rows(), p->value.cols()));
      }
      std::copy(values.begin(), values.end(), p->value.data());
      p->ZeroGrad();
    }
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParse, path + ": " + e.what());
  }
  return LoadedCheckpoint{doc.at("seed").get<std::uint64_t>(), doc.at("config")};
}

}  // namespace grgad
