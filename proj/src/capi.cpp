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

#include "grgad/grgad.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "config.hpp"
#include "datagen.hpp"
#include "pipeline.hpp"

struct grgad_config {
  grgad::PipelineConfig value;
};

struct grgad_graph {
  grgad::AttributedGraph graph;
  std::vector<grgad::GroundTruthGroup> gt_groups;
};

struct grgad_report {
  std::optional<grgad::EvalReport> eval;
  nlohmann::json doc;
};

namespace {

thread_local std::string g_last_error;

grgad_status SetError(grgad_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
grgad_status Guard(Fn&& fn) {
  g_last_error.clear();
  try {
    fn();
    return GRGAD_OK;
  } catch (const grgad::Error& e) {
    return SetError(static_cast<grgad_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return SetError(GRGAD_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return SetError(GRGAD_ERR_INTERNAL, e.what());
  } catch (...) {
    return SetError(GRGAD_ERR_INTERNAL, "unknown error");
  }
}

char* CopyString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void RequireArg(bool ok, const char* what) {
  if (!ok) grgad::Fail(grgad::ErrorCode::kInvalidArgument, what);
}

std::string JoinLines(const std::vector<std::string>& lines) {
  std::string out;
  for (const std::string& line : lines) out += line + "\n";
  return out;
}

grgad_status FinishRun(grgad::RunResult result, grgad_report** report, char** summary) {
  return Guard([&] {
    if (summary != nullptr) *summary = CopyString(JoinLines(result.summary));
    if (report != nullptr) {
      *report = nullptr;
      if (!result.report.is_null()) {
        *report = new grgad_report{std::move(result.eval), std::move(result.report)};
      }
    }
  });
}

}  // namespace

extern "C" {

const char* grgad_version(void) { return grgad::LibraryVersion(); }

const char* grgad_status_name(grgad_status status) {
  if (status == GRGAD_OK) return "ok";
  return grgad::ErrorCodeName(static_cast<grgad::ErrorCode>(status));
}

const char* grgad_last_error(void) { return g_last_error.c_str(); }

void grgad_string_free(char* s) { std::free(s); }

grgad_status grgad_config_default(grgad_config** out) {
  return Guard([&] {
    RequireArg(out != nullptr, "null output pointer");
    *out = new grgad_config{};
  });
}

grgad_status grgad_config_parse(const char* json, grgad_config** out) {
  return Guard([&] {
    RequireArg(json != nullptr && out != nullptr, "null argument");
    *out = new grgad_config{grgad::ParseConfig(json)};
  });
}

grgad_status grgad_config_load(const char* path, grgad_config** out) {
  return Guard([&] {
    RequireArg(path != nullptr && out != nullptr, "null argument");
    *out = new grgad_config{grgad::LoadConfig(path)};
  });
}

grgad_status grgad_config_set_seed(grgad_config* config, uint64_t seed) {
  return Guard([&] {
    RequireArg(config != nullptr, "null config");
    config->value.seed = seed;
  });
}

grgad_status grgad_config_set_output_dir(grgad_config* config, const char* dir) {
  return Guard([&] {
    RequireArg(config != nullptr && dir != nullptr && *dir != '\0', "output dir must be non-empty");
    config->value.output_dir = dir;
  });
}

grgad_status grgad_config_to_json(const grgad_config* config, char** out) {
  return Guard([&] {
    RequireArg(config != nullptr && out != nullptr, "null argument");
    *out = CopyString(grgad::ConfigToJson(config->value).dump(2));
  });
}

void grgad_config_free(grgad_config* config) { delete config; }

grgad_status grgad_stage_from_name(const char* name, grgad_stage* out) {
  return Guard([&] {
    RequireArg(name != nullptr && out != nullptr, "null argument");
    *out = static_cast<grgad_stage>(grgad::ParseStage(name));
  });
}

const char* grgad_stage_name(grgad_stage stage) {
  if (stage < GRGAD_STAGE_GENERATE || stage > GRGAD_STAGE_PIPELINE) return "unknown";
  return grgad::StageName(static_cast<grgad::Stage>(stage));
}

grgad_status grgad_run_stage(const grgad_config* config, grgad_stage stage, grgad_report** report,
                             char** summary) {
  if (report != nullptr) *report = nullptr;
  if (summary != nullptr) *summary = nullptr;
  grgad::RunResult result;
  const grgad_status status = Guard([&] {
    RequireArg(config != nullptr, "null config");
    RequireArg(stage >= GRGAD_STAGE_GENERATE && stage <= GRGAD_STAGE_PIPELINE, "unknown stage");
    result = grgad::RunStage(config->value, static_cast<grgad::Stage>(stage));
  });
  if (status != GRGAD_OK) return status;
  return FinishRun(std::move(result), report, summary);
}

grgad_status grgad_run_pipeline(const grgad_config* config, grgad_report** report, char** summary) {
  return grgad_run_stage(config, GRGAD_STAGE_PIPELINE, report, summary);
}

int grgad_report_has_metrics(const grgad_report* report) {
  return report != nullptr && report->eval.has_value() ? 1 : 0;
}

namespace {

grgad_status ReportMetric(const grgad_report* report, double* out, double grgad::EvalReport::*field) {
  return Guard([&] {
    RequireArg(report != nullptr && out != nullptr, "null argument");
    if (!report->eval) grgad::Fail(grgad::ErrorCode::kDegenerate, "report has no metrics");
    *out = (*report->eval).*field;
  });
}

}  // namespace

grgad_status grgad_report_cr(const grgad_report* report, double* out) {
  return ReportMetric(report, out, &grgad::EvalReport::cr);
}

grgad_status grgad_report_f1(const grgad_report* report, double* out) {
  return ReportMetric(report, out, &grgad::EvalReport::f1);
}

grgad_status grgad_report_auc(const grgad_report* report, double* out) {
  return Guard([&] {
    RequireArg(report != nullptr && out != nullptr, "null argument");
    if (!report->eval || !report->eval->auc) {
      grgad::Fail(grgad::ErrorCode::kDegenerate, "AUC is undefined for this report");
    }
    *out = *report->eval->auc;
  });
}

grgad_status grgad_report_to_json(const grgad_report* report, char** out) {
  return Guard([&] {
    RequireArg(report != nullptr && out != nullptr, "null argument");
    *out = CopyString(report->doc.dump(2));
  });
}

void grgad_report_free(grgad_report* report) { delete report; }

grgad_status grgad_graph_load(const char* edges_path, const char* features_path,
                              grgad_graph** out) {
  return Guard([&] {
    RequireArg(edges_path != nullptr && features_path != nullptr && out != nullptr,
               "null argument");
    *out = new grgad_graph{grgad::LoadGraph(edges_path, features_path), {}};
  });
}

grgad_status grgad_graph_standard_benchmark(uint64_t seed, grgad_graph** out) {
  return Guard([&] {
    RequireArg(out != nullptr, "null output pointer");
    grgad::LabeledBenchmark bench = grgad::StandardBenchmark(seed);
    *out = new grgad_graph{std::move(bench.graph), std::move(bench.gt_groups)};
  });
}

grgad_status grgad_graph_save(const grgad_graph* graph, const char* edges_path,
                              const char* features_path) {
  return Guard([&] {
    RequireArg(graph != nullptr && edges_path != nullptr && features_path != nullptr,
               "null argument");
    grgad::SaveGraph(graph->graph, edges_path, features_path);
  });
}

int64_t grgad_graph_num_nodes(const grgad_graph* graph) {
  return graph == nullptr ? -1 : graph->graph.num_nodes();
}

int64_t grgad_graph_num_edges(const grgad_graph* graph) {
  return graph == nullptr ? -1 : graph->graph.num_edges();
}

int64_t grgad_graph_attribute_dim(const grgad_graph* graph) {
  return graph == nullptr ? -1 : graph->graph.attribute_dim();
}

int64_t grgad_graph_num_gt_groups(const grgad_graph* graph) {
  return graph == nullptr ? -1 : static_cast<int64_t>(graph->gt_groups.size());
}

void grgad_graph_free(grgad_graph* graph) { delete graph; }

}  // extern "C"
