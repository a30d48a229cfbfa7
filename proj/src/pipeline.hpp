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

// Stage runner. Each stage reads its inputs from the output directory (or
// the configured input files), does one step, and persists its outputs; the
// full pipeline is the stages run back to back, so a staged run and a
// monolithic run produce the same files.

#ifndef GRGAD_PIPELINE_HPP_
#define GRGAD_PIPELINE_HPP_

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "scoring.hpp"

namespace grgad {

enum class Stage { kGenerate, kTrainMhgae, kSample, kTrainTpgcl, kScore, kEvaluate, kPipeline };

const char* StageName(Stage stage);
Stage ParseStage(const std::string& name);

// File names inside the output directory.
struct ArtifactPaths {
  explicit ArtifactPaths(const std::string& dir);

  std::string dir;
  std::string manifest;
  std::string edges;
  std::string features;
  std::string gt_groups;
  std::string benchmark;
  std::string mhgae_checkpoint;
  std::string errors;
  std::string anchors;
  std::string groups;
  std::string tpgcl_checkpoint;
  std::string embeddings;
  std::string verdicts;
  std::string report;
};

struct RunResult {
  std::vector<std::string> summary;  // one line per stage
  std::optional<EvalReport> eval;    // set when the evaluate stage had ground truth
  nlohmann::json report;             // the report document, when written
};

// Errors are rethrown with the stage name prefixed; files written before the
// failure stay on disk.
RunResult RunStage(const PipelineConfig& config, Stage stage);
RunResult RunPipeline(const PipelineConfig& config);

// The report document written by the evaluate stage.
nlohmann::json MakeReportDocument(const PipelineConfig& config,
                                  const std::optional<EvalReport>& eval, int num_candidates,
                                  int num_predicted);

}  // namespace grgad

#endif  // GRGAD_PIPELINE_HPP_
