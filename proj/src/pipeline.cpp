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

#include "pipeline.hpp"

#include <filesystem>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "artifacts.hpp"
#include "datagen.hpp"
#include "mhgae.hpp"
#include "sampler.hpp"
#include "tpgcl.hpp"

namespace grgad {
namespace {

using nlohmann::json;

struct GraphInputs {
  std::string edges;
  std::string features;
  std::string gt_groups;  // empty when there is no ground truth
};

GraphInputs ResolveInputs(const PipelineConfig& config, const ArtifactPaths& paths) {
  if (config.input.kind == InputKind::kFiles) {
    return {config.input.edges_path, config.input.features_path, config.input.gt_groups_path};
  }
  return {paths.edges, paths.features, paths.gt_groups};
}

AttributedGraph LoadInputGraph(const PipelineConfig& config, const ArtifactPaths& paths) {
  const GraphInputs in = ResolveInputs(config, paths);
  const char* hint = config.input.kind == InputKind::kBenchmark ? " (run 'generate' first)" : "";
  RequireArtifact(in.edges, fmt::format("edge list{}", hint));
  RequireArtifact(in.features, fmt::format("feature file{}", hint));
  return LoadGraph(in.edges, in.features);
}

std::vector<GroundTruthGroup> LoadGroundTruth(const PipelineConfig& config,
                                              const ArtifactPaths& paths, int num_nodes,
                                              bool* present) {
  const GraphInputs in = ResolveInputs(config, paths);
  *present = !in.gt_groups.empty() && std::filesystem::exists(in.gt_groups);
  if (!*present) {
    if (!in.gt_groups.empty()) {
      Fail(ErrorCode::kMissingArtifact, "missing ground-truth groups artifact: " + in.gt_groups);
    }
    return {};
  }
  std::vector<GroundTruthGroup> gt = ReadGroundTruthJson(in.gt_groups);
  for (const GroundTruthGroup& g : gt) {
    for (int v : g.nodes) {
      if (v >= num_nodes) {
        Fail(ErrorCode::kParse,
             fmt::format("{}: ground-truth node {} is not in the graph", in.gt_groups, v));
      }
    }
  }
  return gt;
}

void CheckGroupsFitGraph(const std::vector<CandidateGroup>& groups, int num_nodes,
                         const std::string& path) {
  for (const CandidateGroup& g : groups) {
    for (int v : g.nodes) {
      if (v >= num_nodes) {
        Fail(ErrorCode::kParse, fmt::format("{}: group node {} is not in the graph", path, v));
      }
    }
  }
}

ReconTarget BuildTarget(const AttributedGraph& graph, const TargetConfig& config) {
  switch (config.kind) {
    case TargetKind::kPlain: return PlainTarget(graph);
    case TargetKind::kKHop: return KHopTarget(graph, config.k);
    case TargetKind::kOverlapWeighted: return OverlapWeightedTarget(graph, config.overlap_lambda);
  }
  Fail(ErrorCode::kInternal, "unhandled target kind");
}

void WriteManifest(const PipelineConfig& config, const ArtifactPaths& paths) {
  WriteJsonFile(paths.manifest, {{"format", "grgad-manifest"},
                                 {"library_version", LibraryVersion()},
                                 {"seed", config.seed},
                                 {"config_hash", ConfigHash(config)},
                                 {"config", ConfigToJson(config)}});
}

std::string GenerateStage(const PipelineConfig& config, const ArtifactPaths& paths) {
  if (config.input.kind != InputKind::kBenchmark) {
    Fail(ErrorCode::kInvalidArgument, "generate needs input.kind = \"benchmark\"");
  }
  const std::uint64_t seed = config.BenchmarkSeed();
  const LabeledBenchmark bench = StandardBenchmark(seed);
  SaveGraph(bench.graph, paths.edges, paths.features);
  WriteGroundTruthJson(paths.gt_groups, bench.gt_groups);
  const BaseGraphSpec base = StandardBaseGraphSpec(seed);
  WriteJsonFile(paths.benchmark,
                {{"generator", "standard_benchmark"},
                 {"seed", seed},
                 {"base_graph",
                  {{"n", base.n},
                   {"avg_degree", base.avg_degree},
                   {"dim", base.dim},
                   {"num_clusters", base.num_clusters},
                   {"center_scale", base.center_scale},
                   {"seed", base.seed}}},
                 {"injection", InjectionSpecToJson(StandardInjectionSpec(seed))},
                 {"num_nodes", bench.graph.num_nodes()},
                 {"num_edges", bench.graph.num_edges()}});
  return fmt::format("generate: {} nodes, {} edges, {} ground-truth groups",
                     bench.graph.num_nodes(), bench.graph.num_edges(), bench.gt_groups.size());
}

std::string TrainMhgaeStage(const PipelineConfig& config, const ArtifactPaths& paths) {
  const AttributedGraph graph = LoadInputGraph(config, paths);
  const ReconTarget target = BuildTarget(graph, config.target);
  MhGaeTrainResult trained = TrainMhGae(graph, target, config.mhgae, config.MhGaeSeed());
  SaveCheckpoint(paths.mhgae_checkpoint, "mhgae", trained.model.params(), config.MhGaeSeed(),
                 ToJson(config.mhgae));
  WriteErrorsCsv(paths.errors, trained.errors);
  const std::vector<int> anchors = SelectAnchorNodes(trained.errors, config.anchor_fraction);
  WriteAnchorsJson(paths.anchors, anchors);
  return fmt::format("train-mhgae: {} target, loss {:.6g} -> {:.6g}, {} anchors",
                     TargetKindName(config.target.kind), trained.loss_history.front(),
                     trained.final_loss, anchors.size());
}

std::string SampleStage(const PipelineConfig& config, const ArtifactPaths& paths) {
  const AttributedGraph graph = LoadInputGraph(config, paths);
  RequireArtifact(paths.anchors, "anchors (run 'train-mhgae' first)");
  const std::vector<int> anchors = ReadAnchorsJson(paths.anchors);
  for (int a : anchors) {
    if (a >= graph.num_nodes()) {
      Fail(ErrorCode::kParse, fmt::format("{}: anchor {} is not in the graph", paths.anchors, a));
    }
  }
  const std::vector<CandidateGroup> groups = SampleCandidateGroups(graph, anchors, config.sampler);
  WriteGroupsJson(paths.groups, groups);
  int counts[3] = {0, 0, 0};
  for (const CandidateGroup& g : groups) ++counts[static_cast<int>(g.provenance.kind)];
  return fmt::format("sample: {} candidate groups ({} path, {} tree, {} cycle)", groups.size(),
                     counts[0], counts[1], counts[2]);
}

std::string TrainTpgclStage(const PipelineConfig& config, const ArtifactPaths& paths) {
  const AttributedGraph graph = LoadInputGraph(config, paths);
  RequireArtifact(paths.groups, "candidate groups (run 'sample' first)");
  const std::vector<CandidateGroup> groups = ReadGroupsJson(paths.groups);
  CheckGroupsFitGraph(groups, graph.num_nodes(), paths.groups);
  if (config.features == DetectorFeatures::kMeanAttributes) {
    WriteEmbeddingsCsv(paths.embeddings, MeanAttributeVectors(groups, graph));
    return fmt::format("train-tpgcl: skipped (mean-attribute features), {} groups", groups.size());
  }
  TpgclTrainResult trained = TrainTpgcl(groups, graph, config.tpgcl, config.TpgclSeed());
  SaveCheckpoint(paths.tpgcl_checkpoint, "tpgcl", trained.model.params(), config.TpgclSeed(),
                 ToJson(config.tpgcl));
  WriteEmbeddingsCsv(paths.embeddings, EmbedAll(trained.model, groups, graph));
  return fmt::format("train-tpgcl: {} usable groups, loss {:.6g} -> {:.6g}, {} degenerate skips",
                     trained.usable_groups, trained.epoch_loss.front(), trained.epoch_loss.back(),
                     trained.skipped_degenerate);
}

std::string ScoreStage(const PipelineConfig& config, const ArtifactPaths& paths) {
  RequireArtifact(paths.embeddings, "embeddings (run 'train-tpgcl' first)");
  const Matrix embeddings = ReadEmbeddingsCsv(paths.embeddings);
  const std::vector<double> scores = EcodScores(embeddings);
  const ThresholdResult threshold = ThresholdPredict(scores, config.contamination);
  std::vector<GroupVerdict> verdicts(scores.size());
  int flagged = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    verdicts[i].group_id = static_cast<int>(i);
    verdicts[i].score = scores[i];
    verdicts[i].predicted = threshold.predicted[i];
    flagged += threshold.predicted[i] ? 1 : 0;
  }
  WriteVerdictsCsv(paths.verdicts, verdicts);
  return fmt::format("score: {} groups, tau {:.6g}, {} flagged", scores.size(), threshold.tau,
                     flagged);
}

std::string EvaluateStage(const PipelineConfig& config, const ArtifactPaths& paths,
                          RunResult& result) {
  RequireArtifact(paths.verdicts, "verdicts (run 'score' first)");
  RequireArtifact(paths.groups, "candidate groups (run 'sample' first)");
  std::vector<GroupVerdict> verdicts = ReadVerdictsCsv(paths.verdicts);
  const std::vector<CandidateGroup> groups = ReadGroupsJson(paths.groups);
  if (verdicts.size() != groups.size()) {
    Fail(ErrorCode::kParse, fmt::format("{} has {} rows but {} lists {} groups", paths.verdicts,
                                        verdicts.size(), paths.groups, groups.size()));
  }
  int num_predicted = 0;
  for (const GroupVerdict& v : verdicts) num_predicted += v.predicted ? 1 : 0;

  // Only the node count is needed to validate the ground truth.
  const AttributedGraph graph = LoadInputGraph(config, paths);
  bool have_gt = false;
  const std::vector<GroundTruthGroup> gt = LoadGroundTruth(config, paths, graph.num_nodes(), &have_gt);

  std::optional<EvalReport> eval;
  if (have_gt && !gt.empty()) {
    std::vector<NodeSet> candidates, gt_sets;
    candidates.reserve(groups.size());
    for (const CandidateGroup& g : groups) candidates.push_back(g.nodes);
    for (const GroundTruthGroup& g : gt) gt_sets.push_back(g.nodes);
    LabelVerdicts(verdicts, candidates, gt_sets, config.match_overlap);
    eval = Evaluate(verdicts, candidates, gt_sets);
    WriteVerdictsCsv(paths.verdicts, verdicts);
  } else {
    spdlog::warn("no ground-truth groups; the report carries no metrics");
  }
  result.report =
      MakeReportDocument(config, eval, static_cast<int>(verdicts.size()), num_predicted);
  WriteJsonFile(paths.report, result.report);
  result.eval = eval;
  if (!eval) return fmt::format("evaluate: {} groups, {} flagged, no ground truth", verdicts.size(),
                                num_predicted);
  return fmt::format("evaluate: CR {:.4f}  F1 {:.4f}  AUC {}  ({} of {} candidates match a gt group)",
                     eval->cr, eval->f1, eval->auc ? fmt::format("{:.4f}", *eval->auc) : "n/a",
                     eval->num_positive_candidates, eval->num_candidates);
}

}  // namespace

const char* StageName(Stage stage) {
  switch (stage) {
    case Stage::kGenerate: return "generate";
    case Stage::kTrainMhgae: return "train-mhgae";
    case Stage::kSample: return "sample";
    case Stage::kTrainTpgcl: return "train-tpgcl";
    case Stage::kScore: return "score";
    case Stage::kEvaluate: return "evaluate";
    case Stage::kPipeline: return "pipeline";
  }
  return "unknown";
}

Stage ParseStage(const std::string& name) {
  for (Stage s : {Stage::kGenerate, Stage::kTrainMhgae, Stage::kSample, Stage::kTrainTpgcl,
                  Stage::kScore, Stage::kEvaluate, Stage::kPipeline}) {
    if (name == StageName(s)) return s;
  }
  Fail(ErrorCode::kInvalidArgument, fmt::format("unknown stage '{}'", name));
}

ArtifactPaths::ArtifactPaths(const std::string& out) : dir(out) {
  const auto at = [&](const char* name) { return (std::filesystem::path(out) / name).string(); };
  manifest = at("manifest.json");
  edges = at("edges.txt");
  features = at("features.csv");
  gt_groups = at("gt_groups.json");
  benchmark = at("benchmark.json");
  mhgae_checkpoint = at("mhgae_checkpoint.json");
  errors = at("errors.csv");
  anchors = at("anchors.json");
  groups = at("groups.json");
  tpgcl_checkpoint = at("tpgcl_checkpoint.json");
  embeddings = at("embeddings.csv");
  verdicts = at("verdicts.csv");
  report = at("report.json");
}

json MakeReportDocument(const PipelineConfig& config, const std::optional<EvalReport>& eval,
                        int num_candidates, int num_predicted) {
  return {{"format", "grgad-report"},
          {"version", 1},
          {"library_version", LibraryVersion()},
          {"seed", config.seed},
          {"config_hash", ConfigHash(config)},
          {"target", TargetKindName(config.target.kind)},
          {"detector_features", DetectorFeaturesName(config.features)},
          {"num_candidates", num_candidates},
          {"num_predicted", num_predicted},
          {"metrics", eval ? ReportToJson(*eval) : json(nullptr)}};
}

RunResult RunStage(const PipelineConfig& config, Stage stage) {
  if (stage == Stage::kPipeline) return RunPipeline(config);
  config.Validate();
  InitLogging();
  const ArtifactPaths paths(config.output_dir);
  RunResult result;
  try {
    std::error_code ec;
    std::filesystem::create_directories(paths.dir, ec);
    if (ec) Fail(ErrorCode::kIo, fmt::format("cannot create output directory {}: {}", paths.dir, ec.message()));
    WriteManifest(config, paths);
    std::string line;
    switch (stage) {
      case Stage::kGenerate: line = GenerateStage(config, paths); break;
      case Stage::kTrainMhgae: line = TrainMhgaeStage(config, paths); break;
      case Stage::kSample: line = SampleStage(config, paths); break;
      case Stage::kTrainTpgcl: line = TrainTpgclStage(config, paths); break;
      case Stage::kScore: line = ScoreStage(config, paths); break;
      case Stage::kEvaluate: line = EvaluateStage(config, paths, result); break;
      case Stage::kPipeline: break;
    }
    spdlog::info("{}", line);
    result.summary.push_back(std::move(line));
  } catch (const Error& e) {
    Fail(e.code(), fmt::format("stage '{}' failed: {}", StageName(stage), e.what()));
  } catch (const std::exception& e) {
    Fail(ErrorCode::kInternal, fmt::format("stage '{}' failed: {}", StageName(stage), e.what()));
  }
  return result;
}

RunResult RunPipeline(const PipelineConfig& config) {
  config.Validate();
  RunResult total;
  std::vector<Stage> stages = {Stage::kTrainMhgae, Stage::kSample, Stage::kTrainTpgcl,
                               Stage::kScore, Stage::kEvaluate};
  if (config.input.kind == InputKind::kBenchmark) stages.insert(stages.begin(), Stage::kGenerate);
  for (Stage stage : stages) {
    RunResult r = RunStage(config, stage);
    total.summary.insert(total.summary.end(), r.summary.begin(), r.summary.end());
    if (stage == Stage::kEvaluate) {
      total.eval = std::move(r.eval);
      total.report = std::move(r.report);
    }
  }
  return total;
}

}  // namespace grgad
