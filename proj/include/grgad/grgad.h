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

/*
 * C interface to libgrgad: group-level anomaly detection on attributed
 * graphs. All functions return a grgad_status; on failure the message is
 * available from grgad_last_error() on the calling thread until the next
 * call. Handles are opaque and owned by the caller, who releases them with
 * the matching *_free function. Strings returned through char** out
 * parameters are released with grgad_string_free.
 */

#ifndef GRGAD_GRGAD_H_
#define GRGAD_GRGAD_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(GRGAD_BUILDING_LIBRARY)
#    define GRGAD_API __declspec(dllexport)
#  else
#    define GRGAD_API __declspec(dllimport)
#  endif
#else
#  define GRGAD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as the CLI's process exit codes. */
typedef enum grgad_status {
  GRGAD_OK = 0,
  GRGAD_ERR_INVALID_ARGUMENT = 2,
  GRGAD_ERR_IO = 3,
  GRGAD_ERR_PARSE = 4,
  GRGAD_ERR_NUMERIC = 5,
  GRGAD_ERR_MISSING_ARTIFACT = 6,
  GRGAD_ERR_DEGENERATE = 7,
  GRGAD_ERR_INTERNAL = 10
} grgad_status;

typedef enum grgad_stage {
  GRGAD_STAGE_GENERATE = 0,
  GRGAD_STAGE_TRAIN_MHGAE = 1,
  GRGAD_STAGE_SAMPLE = 2,
  GRGAD_STAGE_TRAIN_TPGCL = 3,
  GRGAD_STAGE_SCORE = 4,
  GRGAD_STAGE_EVALUATE = 5,
  GRGAD_STAGE_PIPELINE = 6
} grgad_stage;

typedef struct grgad_config grgad_config;
typedef struct grgad_graph grgad_graph;
typedef struct grgad_report grgad_report;

GRGAD_API const char* grgad_version(void);
GRGAD_API const char* grgad_status_name(grgad_status status);
/* Message of the last failed call on this thread; "" if none. */
GRGAD_API const char* grgad_last_error(void);
GRGAD_API void grgad_string_free(char* s);

/* Configuration. */
GRGAD_API grgad_status grgad_config_default(grgad_config** out);
GRGAD_API grgad_status grgad_config_parse(const char* json, grgad_config** out);
GRGAD_API grgad_status grgad_config_load(const char* path, grgad_config** out);
GRGAD_API grgad_status grgad_config_set_seed(grgad_config* config, uint64_t seed);
GRGAD_API grgad_status grgad_config_set_output_dir(grgad_config* config, const char* dir);
GRGAD_API grgad_status grgad_config_to_json(const grgad_config* config, char** out);
GRGAD_API void grgad_config_free(grgad_config* config);

/* Stages. `report` may be NULL; it is filled only by the evaluate and
 * pipeline stages, and is NULL otherwise. */
GRGAD_API grgad_status grgad_stage_from_name(const char* name, grgad_stage* out);
GRGAD_API const char* grgad_stage_name(grgad_stage stage);
GRGAD_API grgad_status grgad_run_stage(const grgad_config* config, grgad_stage stage,
                                       grgad_report** report, char** summary);
GRGAD_API grgad_status grgad_run_pipeline(const grgad_config* config, grgad_report** report,
                                          char** summary);

/* Reports. */
GRGAD_API int grgad_report_has_metrics(const grgad_report* report);
GRGAD_API grgad_status grgad_report_cr(const grgad_report* report, double* out);
GRGAD_API grgad_status grgad_report_f1(const grgad_report* report, double* out);
/* GRGAD_ERR_DEGENERATE when AUC is undefined (one label class only). */
GRGAD_API grgad_status grgad_report_auc(const grgad_report* report, double* out);
GRGAD_API grgad_status grgad_report_to_json(const grgad_report* report, char** out);
GRGAD_API void grgad_report_free(grgad_report* report);

/* Graphs. */
GRGAD_API grgad_status grgad_graph_load(const char* edges_path, const char* features_path,
                                        grgad_graph** out);
GRGAD_API grgad_status grgad_graph_standard_benchmark(uint64_t seed, grgad_graph** out);
GRGAD_API grgad_status grgad_graph_save(const grgad_graph* graph, const char* edges_path,
                                        const char* features_path);
GRGAD_API int64_t grgad_graph_num_nodes(const grgad_graph* graph);
GRGAD_API int64_t grgad_graph_num_edges(const grgad_graph* graph);
GRGAD_API int64_t grgad_graph_attribute_dim(const grgad_graph* graph);
/* Number of ground-truth groups attached to the graph (benchmarks only). */
GRGAD_API int64_t grgad_graph_num_gt_groups(const grgad_graph* graph);
GRGAD_API void grgad_graph_free(grgad_graph* graph);

#ifdef __cplusplus
}
#endif

#endif /* GRGAD_GRGAD_H_ */
