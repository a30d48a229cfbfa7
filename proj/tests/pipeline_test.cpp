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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "artifacts.hpp"
#include "datagen.hpp"
#include "pipeline.hpp"
#include "test_util.hpp"

namespace grgad {
namespace {

using testing::TempDir;

std::string Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A 130-node labelled graph on disk, small enough for full runs in tests.
std::string WriteSmallInputs() {
  const std::string dir = TempDir("pipeline_inputs");
  BaseGraphSpec base;
  base.n = 100;
  base.avg_degree = 3.0;
  base.dim = 6;
  base.seed = 3;
  InjectionSpec spec;
  spec.num_groups = 5;
  spec.seed = 4;
  const LabeledBenchmark b = InjectAnomalyGroups(GenerateBaseGraph(base), spec);
  SaveGraph(b.graph, dir + "/edges.txt", dir + "/features.csv");
  WriteGroundTruthJson(dir + "/gt.json", b.gt_groups);
  return dir;
}

PipelineConfig SmallConfig(const std::string& inputs, const std::string& out) {
  PipelineConfig c;
  c.seed = 5;
  c.input.kind = InputKind::kFiles;
  c.input.edges_path = inputs + "/edges.txt";
  c.input.features_path = inputs + "/features.csv";
  c.input.gt_groups_path = inputs + "/gt.json";
  c.mhgae.epochs = 20;
  c.mhgae.hidden = 8;
  c.mhgae.latent = 8;
  c.tpgcl.epochs = 2;
  c.tpgcl.hidden = 8;
  c.tpgcl.embedding_dim = 8;
  c.tpgcl.critic_hidden = 8;
  c.output_dir = out;
  return c;
}

const char* kArtifacts[] = {"mhgae_checkpoint.json", "errors.csv", "anchors.json", "groups.json",
                            "tpgcl_checkpoint.json", "embeddings.csv", "verdicts.csv",
                            "report.json"};

TEST(Pipeline, StagedRunEqualsMonolithicRun) {
  const std::string inputs = WriteSmallInputs();
  const std::string mono = TempDir("pipeline_mono");
  const std::string staged = TempDir("pipeline_staged");
  const RunResult all = RunPipeline(SmallConfig(inputs, mono));
  ASSERT_TRUE(all.eval.has_value());
  EXPECT_EQ(all.summary.size(), 5u);
  for (Stage s : {Stage::kTrainMhgae, Stage::kSample, Stage::kTrainTpgcl, Stage::kScore,
                  Stage::kEvaluate}) {
    RunStage(SmallConfig(inputs, staged), s);
  }
  for (const char* name : kArtifacts) {
    EXPECT_EQ(Slurp(mono + "/" + name), Slurp(staged + "/" + name)) << name;
  }
  const auto doc = ReadJsonFile(mono + "/report.json");
  EXPECT_EQ(doc["format"], "grgad-report");
  EXPECT_EQ(doc["metrics"]["num_gt_groups"], 5);
  EXPECT_EQ(doc, all.report);
}

TEST(Pipeline, RepeatedRunsAreByteIdentical) {
  const std::string inputs = WriteSmallInputs();
  const std::string a = TempDir("pipeline_a");
  const std::string b = TempDir("pipeline_b");
  RunPipeline(SmallConfig(inputs, a));
  RunPipeline(SmallConfig(inputs, b));
  for (const char* name : kArtifacts) EXPECT_EQ(Slurp(a + "/" + name), Slurp(b + "/" + name)) << name;
}

TEST(Pipeline, MeanAttributeFeaturesSkipTraining) {
  const std::string inputs = WriteSmallInputs();
  const std::string out = TempDir("pipeline_mean");
  PipelineConfig c = SmallConfig(inputs, out);
  c.features = DetectorFeatures::kMeanAttributes;
  const RunResult r = RunPipeline(c);
  EXPECT_FALSE(std::filesystem::exists(out + "/tpgcl_checkpoint.json"));
  EXPECT_EQ(ReadEmbeddingsCsv(out + "/embeddings.csv").cols(), 6);
  EXPECT_EQ(r.report["detector_features"], "mean_attributes");
}

TEST(Pipeline, MissingArtifactsNameTheEarlierStage) {
  const std::string inputs = WriteSmallInputs();
  const std::string out = TempDir("pipeline_missing");
  try {
    RunStage(SmallConfig(inputs, out), Stage::kSample);
    FAIL() << "expected a missing-artifact error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingArtifact);
    EXPECT_NE(std::string(e.what()).find("train-mhgae"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("stage 'sample'"), std::string::npos) << e.what();
  }
  EXPECT_THROW(RunStage(SmallConfig(inputs, out), Stage::kScore), Error);
  PipelineConfig bench;
  bench.output_dir = TempDir("pipeline_missing_bench");
  try {
    RunStage(bench, Stage::kTrainMhgae);
    FAIL() << "expected a missing-artifact error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingArtifact);
    EXPECT_NE(std::string(e.what()).find("generate"), std::string::npos) << e.what();
  }
}

TEST(Pipeline, NoGroundTruthGivesNullMetrics) {
  const std::string inputs = WriteSmallInputs();
  const std::string out = TempDir("pipeline_nogt");
  PipelineConfig c = SmallConfig(inputs, out);
  c.input.gt_groups_path.clear();
  const RunResult r = RunPipeline(c);
  EXPECT_FALSE(r.eval.has_value());
  EXPECT_TRUE(ReadJsonFile(out + "/report.json")["metrics"].is_null());
  c.input.gt_groups_path = inputs + "/absent.json";
  EXPECT_THROW(RunStage(c, Stage::kEvaluate), Error);
}

TEST(Pipeline, GenerateWritesTheStandardBenchmark) {
  PipelineConfig c;
  c.seed = 7;
  c.output_dir = TempDir("pipeline_generate");
  const RunResult r = RunStage(c, Stage::kGenerate);
  ASSERT_EQ(r.summary.size(), 1u);
  const AttributedGraph g = LoadGraph(c.output_dir + "/edges.txt", c.output_dir + "/features.csv");
  const LabeledBenchmark b = StandardBenchmark(7);
  EXPECT_EQ(g.edges(), b.graph.edges());
  EXPECT_EQ(g.attributes(), b.graph.attributes());
  EXPECT_EQ(ReadGroundTruthJson(c.output_dir + "/gt_groups.json").size(), 10u);
  const auto manifest = ReadJsonFile(c.output_dir + "/manifest.json");
  EXPECT_EQ(manifest["seed"], 7);
  EXPECT_EQ(manifest["config_hash"], ConfigHash(c));
  c.input.kind = InputKind::kFiles;
  c.input.edges_path = "e";
  c.input.features_path = "f";
  EXPECT_THROW(RunStage(c, Stage::kGenerate), Error);
}

TEST(Stage, NamesRoundTrip) {
  for (Stage s : {Stage::kGenerate, Stage::kTrainMhgae, Stage::kSample, Stage::kTrainTpgcl,
                  Stage::kScore, Stage::kEvaluate, Stage::kPipeline}) {
    EXPECT_EQ(ParseStage(StageName(s)), s);
  }
  EXPECT_THROW(ParseStage("train"), Error);
}

}  // namespace
}  // namespace grgad
