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

// Readers and writers for every file a pipeline run persists. Readers
// validate the schema and report the offending file. Doubles are written in
// shortest round-trip form so reloads are bit-exact.

#ifndef GRGAD_ARTIFACTS_HPP_
#define GRGAD_ARTIFACTS_HPP_

#include <string>
#include <vector>

#include <json.hpp>

#include "datagen.hpp"
#include "mhgae.hpp"
#include "sampler.hpp"
#include "scoring.hpp"

namespace grgad {

// Throws kMissingArtifact naming `what` when `path` does not exist.
void RequireArtifact(const std::string& path, const std::string& what);

nlohmann::json ReadJsonFile(const std::string& path);
void WriteJsonFile(const std::string& path, const nlohmann::json& doc);
void WriteTextFile(const std::string& path, const std::string& text);

// node_index,r,r_stru,r_attr
void WriteErrorsCsv(const std::string& path, const NodeErrorVector& errors);
NodeErrorVector ReadErrorsCsv(const std::string& path);

// JSON list of node indices.
void WriteAnchorsJson(const std::string& path, const std::vector<int>& anchors);
std::vector<int> ReadAnchorsJson(const std::string& path);

// [{"nodes": [...], "edges": [[u, v], ...], "provenance": {"kind", "anchors", "depth"}}]
nlohmann::json GroupsToJson(const std::vector<CandidateGroup>& groups);
std::vector<CandidateGroup> GroupsFromJson(const nlohmann::json& doc);
void WriteGroupsJson(const std::string& path, const std::vector<CandidateGroup>& groups);
std::vector<CandidateGroup> ReadGroupsJson(const std::string& path);

// group_id followed by one column per embedding dimension.
void WriteEmbeddingsCsv(const std::string& path, const Matrix& embeddings);
Matrix ReadEmbeddingsCsv(const std::string& path);

// group_id,score,predicted,gt_label (gt_label empty when unknown).
void WriteVerdictsCsv(const std::string& path, const std::vector<GroupVerdict>& verdicts);
std::vector<GroupVerdict> ReadVerdictsCsv(const std::string& path);

// [{"nodes": [...], "pattern": "path"}]; "pattern" is optional on read.
void WriteGroundTruthJson(const std::string& path, const std::vector<GroundTruthGroup>& groups);
std::vector<GroundTruthGroup> ReadGroundTruthJson(const std::string& path);

nlohmann::json ReportToJson(const EvalReport& report);
EvalReport ReportFromJson(const nlohmann::json& doc);

nlohmann::json InjectionSpecToJson(const InjectionSpec& spec);

}  // namespace grgad

#endif  // GRGAD_ARTIFACTS_HPP_
