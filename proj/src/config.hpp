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

// Pipeline configuration. The JSON form is versioned (schema_version) and
// strict: unknown keys anywhere are errors. Every field has a default, so
// "{}" is a valid config running the standard benchmark with seed 0.

#ifndef GRGAD_CONFIG_HPP_
#define GRGAD_CONFIG_HPP_

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "graph.hpp"
#include "mhgae.hpp"
#include "sampler.hpp"
#include "tpgcl.hpp"

namespace grgad {

inline constexpr int kConfigSchemaVersion = 1;

enum class InputKind { kBenchmark, kFiles };
enum class DetectorFeatures { kTpgcl, kMeanAttributes };

struct InputConfig {
  InputKind kind = InputKind::kBenchmark;
  std::optional<std::uint64_t> benchmark_seed;  // defaults to the run seed
  std::string edges_path;
  std::string features_path;
  std::string gt_groups_path;  // optional for kFiles
};

struct TargetConfig {
  TargetKind kind = TargetKind::kOverlapWeighted;
  int k = 2;
  double overlap_lambda = 1.0;
};

struct PipelineConfig {
  std::uint64_t seed = 0;
  InputConfig input;
  TargetConfig target;
  MhGaeConfig mhgae;
  double anchor_fraction = 0.10;
  SamplerConfig sampler;
  TpgclConfig tpgcl;
  std::optional<std::uint64_t> tpgcl_seed;
  double contamination = 0.1;
  DetectorFeatures features = DetectorFeatures::kTpgcl;
  double match_overlap = 0.5;
  std::string output_dir = "grgad_out";

  // Throws kInvalidArgument naming the offending key.
  void Validate() const;

  std::uint64_t BenchmarkSeed() const { return input.benchmark_seed.value_or(seed); }
  std::uint64_t MhGaeSeed() const;
  std::uint64_t TpgclSeed() const;
};

PipelineConfig ConfigFromJson(const nlohmann::json& doc);
PipelineConfig LoadConfig(const std::string& path);
PipelineConfig ParseConfig(const std::string& text);

// Fully resolved config; ConfigFromJson(ConfigToJson(c)) == c.
nlohmann::json ConfigToJson(const PipelineConfig& config);

// FNV-1a over the resolved config with output_dir left out, as 16 hex digits.
std::string ConfigHash(const PipelineConfig& config);

TargetKind ParseTargetKind(const std::string& name);
const char* DetectorFeaturesName(DetectorFeatures features);

}  // namespace grgad

#endif  // GRGAD_CONFIG_HPP_
