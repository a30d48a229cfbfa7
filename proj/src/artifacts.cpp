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

#include "artifacts.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string_view>

#include <fmt/format.h>

namespace grgad {
namespace {

using nlohmann::json;

[[noreturn]] void SchemaError(const std::string& path, const std::string& message) {
  Fail(ErrorCode::kParse, fmt::format("{}: {}", path, message));
}

std::vector<std::string_view> SplitCommas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double ParseDouble(std::string_view token, const std::string& where) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(value)) {
    Fail(ErrorCode::kParse, fmt::format("{}: bad number '{}'", where, token));
  }
  return value;
}

long ParseInt(std::string_view token, const std::string& where) {
  long value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    Fail(ErrorCode::kParse, fmt::format("{}: bad integer '{}'", where, token));
  }
  return value;
}

// Reads a CSV with a header row; returns the data rows split into fields.
std::vector<std::vector<std::string>> ReadCsv(const std::string& path,
                                              const std::vector<std::string>& header_prefix,
                                              std::size_t* num_columns) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kMissingArtifact, "missing artifact: " + path);
  std::string line;
  if (!std::getline(in, line)) SchemaError(path, "empty file");
  const auto header = SplitCommas(line);
  if (header.size() < header_prefix.size()) SchemaError(path, "unexpected header");
  for (std::size_t i = 0; i < header_prefix.size(); ++i) {
    if (header[i] != header_prefix[i]) {
      SchemaError(path, fmt::format("expected column '{}' at position {}", header_prefix[i], i));
    }
  }
  *num_columns = header.size();
  std::vector<std::vector<std::string>> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = SplitCommas(line);
    if (fields.size() != header.size()) {
      SchemaError(path, fmt::format("line {} has {} fields, expected {}", line_no, fields.size(),
                                    header.size()));
    }
    rows.emplace_back(fields.begin(), fields.end());
  }
  return rows;
}

std::vector<int> IntList(const json& value, const std::string& path, const std::string& field) {
  if (!value.is_array()) SchemaError(path, fmt::format("'{}' must be an array", field));
  std::vector<int> out;
  out.reserve(value.size());
  for (const json& v : value) {
    if (!v.is_number_integer()) SchemaError(path, fmt::format("'{}' must hold integers", field));
    const auto x = v.get<long long>();
    if (x < 0 || x > std::numeric_limits<int>::max()) {
      SchemaError(path, fmt::format("'{}' holds an out-of-range node index", field));
    }
    out.push_back(static_cast<int>(x));
  }
  return out;
}

}  // namespace

void RequireArtifact(const std::string& path, const std::string& what) {
  if (!std::filesystem::exists(path)) {
    Fail(ErrorCode::kMissingArtifact, fmt::format("missing {} artifact: {}", what, path));
  }
}

json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kMissingArtifact, "missing artifact: " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    SchemaError(path, e.what());
  }
}

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorCode::kIo, "cannot write file: " + path);
  out << text;
  if (!out) Fail(ErrorCode::kIo, "write failed: " + path);
}

void WriteJsonFile(const std::string& path, const json& doc) {
  WriteTextFile(path, doc.dump(2) + "\n");
}

void WriteErrorsCsv(const std::string& path, const NodeErrorVector& errors) {
  std::string text = "node_index,r,r_stru,r_attr\n";
  for (Eigen::Index i = 0; i < errors.r.size(); ++i) {
    text += fmt::format("{},{},{},{}\n", i, errors.r[i], errors.r_stru[i], errors.r_attr[i]);
  }
  WriteTextFile(path, text);
}

NodeErrorVector ReadErrorsCsv(const std::string& path) {
  std::size_t cols = 0;
  const auto rows = ReadCsv(path, {"node_index", "r", "r_stru", "r_attr"}, &cols);
  if (cols != 4) SchemaError(path, "expected 4 columns");
  NodeErrorVector errors;
  const auto n = static_cast<Eigen::Index>(rows.size());
  errors.r.resize(n);
  errors.r_stru.resize(n);
  errors.r_attr.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rows[i];
    const std::string where = fmt::format("{}:{}", path, i + 2);
    if (ParseInt(row[0], where) != i) SchemaError(path, "node_index must count up from 0");
    errors.r[i] = ParseDouble(row[1], where);
    errors.r_stru[i] = ParseDouble(row[2], where);
    errors.r_attr[i] = ParseDouble(row[3], where);
    if (errors.r[i] < 0.0 || errors.r_stru[i] < 0.0 || errors.r_attr[i] < 0.0) {
      SchemaError(path, fmt::format("negative error on line {}", i + 2));
    }
  }
  return errors;
}

void WriteAnchorsJson(const std::string& path, const std::vector<int>& anchors) {
  WriteTextFile(path, json(anchors).dump() + "\n");
}

std::vector<int> ReadAnchorsJson(const std::string& path) {
  std::vector<int> anchors = IntList(ReadJsonFile(path), path, "anchors");
  if (!std::is_sorted(anchors.begin(), anchors.end()) ||
      std::adjacent_find(anchors.begin(), anchors.end()) != anchors.end()) {
    SchemaError(path, "anchors must be strictly increasing");
  }
  return anchors;
}

json GroupsToJson(const std::vector<CandidateGroup>& groups) {
  json doc = json::array();
  for (const CandidateGroup& g : groups) {
    json edges = json::array();
    for (const Edge& e : g.edges) edges.push_back({e.u, e.v});
    doc.push_back({{"nodes", g.nodes},
                   {"edges", std::move(edges)},
                   {"provenance",
                    {{"kind", PatternKindName(g.provenance.kind)},
                     {"anchors", g.provenance.anchors},
                     {"depth", g.provenance.depth}}}});
  }
  return doc;
}

std::vector<CandidateGroup> GroupsFromJson(const json& doc) {
  const std::string path = "groups";
  if (!doc.is_array()) SchemaError(path, "expected an array of groups");
  std::vector<CandidateGroup> groups;
  groups.reserve(doc.size());
  for (const json& item : doc) {
    if (!item.is_object() || !item.contains("nodes") || !item.contains("edges") ||
        !item.contains("provenance")) {
      SchemaError(path, "each group needs nodes, edges and provenance");
    }
    CandidateGroup g;
    g.nodes = IntList(item["nodes"], path, "nodes");
    if (g.nodes.empty()) SchemaError(path, "group with no nodes");
    std::vector<int> sorted = g.nodes;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      SchemaError(path, "group lists a node twice");
    }
    const json& edges = item["edges"];
    if (!edges.is_array()) SchemaError(path, "'edges' must be an array");
    for (const json& e : edges) {
      const std::vector<int> pair = IntList(e, path, "edges");
      if (pair.size() != 2 || pair[0] == pair[1]) SchemaError(path, "edges must be node pairs");
      if (!std::binary_search(sorted.begin(), sorted.end(), pair[0]) ||
          !std::binary_search(sorted.begin(), sorted.end(), pair[1])) {
        SchemaError(path, "edge endpoint outside its group");
      }
      g.edges.push_back(Edge::Make(pair[0], pair[1]));
    }
    const json& prov = item["provenance"];
    if (!prov.is_object() || !prov.contains("kind") || !prov["kind"].is_string()) {
      SchemaError(path, "provenance needs a kind");
    }
    try {
      g.provenance.kind = ParsePatternKind(prov["kind"].get<std::string>());
    } catch (const Error& e) {
      SchemaError(path, e.what());
    }
    if (prov.contains("anchors")) g.provenance.anchors = IntList(prov["anchors"], path, "anchors");
    if (prov.contains("depth")) {
      if (!prov["depth"].is_number_integer()) SchemaError(path, "depth must be an integer");
      g.provenance.depth = prov["depth"].get<int>();
    }
    groups.push_back(std::move(g));
  }
  return groups;
}

void WriteGroupsJson(const std::string& path, const std::vector<CandidateGroup>& groups) {
  // One group per line keeps large files diffable.
  std::string text = "[\n";
  const json doc = GroupsToJson(groups);
  for (std::size_t i = 0; i < doc.size(); ++i) {
    text += "  " + doc[i].dump() + (i + 1 < doc.size() ? ",\n" : "\n");
  }
  text += "]\n";
  WriteTextFile(path, text);
}

std::vector<CandidateGroup> ReadGroupsJson(const std::string& path) {
  try {
    return GroupsFromJson(ReadJsonFile(path));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kParse) throw;
    Fail(ErrorCode::kParse, fmt::format("{}: {}", path, e.what()));
  }
}

void WriteEmbeddingsCsv(const std::string& path, const Matrix& embeddings) {
  std::string text = "group_id";
  for (Eigen::Index j = 0; j < embeddings.cols(); ++j) text += fmt::format(",e{}", j);
  text += '\n';
  for (Eigen::Index i = 0; i < embeddings.rows(); ++i) {
    text += fmt::format("{}", i);
    for (Eigen::Index j = 0; j < embeddings.cols(); ++j) text += fmt::format(",{}", embeddings(i, j));
    text += '\n';
  }
  WriteTextFile(path, text);
}

Matrix ReadEmbeddingsCsv(const std::string& path) {
  std::size_t cols = 0;
  const auto rows = ReadCsv(path, {"group_id"}, &cols);
  if (cols < 2) SchemaError(path, "no embedding columns");
  Matrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols - 1));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string where = fmt::format("{}:{}", path, i + 2);
    if (ParseInt(rows[i][0], where) != static_cast<long>(i)) {
      SchemaError(path, "group_id must count up from 0");
    }
    for (std::size_t j = 1; j < cols; ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j - 1)) =
          ParseDouble(rows[i][j], where);
    }
  }
  return out;
}

void WriteVerdictsCsv(const std::string& path, const std::vector<GroupVerdict>& verdicts) {
  std::string text = "group_id,score,predicted,gt_label\n";
  for (const GroupVerdict& v : verdicts) {
    text += fmt::format("{},{},{},{}\n", v.group_id, v.score, v.predicted ? 1 : 0,
                        v.gt_label ? (*v.gt_label ? "1" : "0") : "");
  }
  WriteTextFile(path, text);
}

std::vector<GroupVerdict> ReadVerdictsCsv(const std::string& path) {
  std::size_t cols = 0;
  const auto rows = ReadCsv(path, {"group_id", "score", "predicted", "gt_label"}, &cols);
  if (cols != 4) SchemaError(path, "expected 4 columns");
  std::vector<GroupVerdict> verdicts;
  verdicts.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string where = fmt::format("{}:{}", path, i + 2);
    GroupVerdict v;
    v.group_id = static_cast<int>(ParseInt(rows[i][0], where));
    if (v.group_id != static_cast<int>(i)) SchemaError(path, "group_id must count up from 0");
    v.score = ParseDouble(rows[i][1], where);
    const long predicted = ParseInt(rows[i][2], where);
    if (predicted != 0 && predicted != 1) SchemaError(where, "predicted must be 0 or 1");
    v.predicted = predicted == 1;
    if (!rows[i][3].empty()) {
      const long label = ParseInt(rows[i][3], where);
      if (label != 0 && label != 1) SchemaError(where, "gt_label must be 0, 1 or empty");
      v.gt_label = label == 1;
    }
    verdicts.push_back(v);
  }
  return verdicts;
}

void WriteGroundTruthJson(const std::string& path, const std::vector<GroundTruthGroup>& groups) {
  json doc = json::array();
  for (const GroundTruthGroup& g : groups) {
    doc.push_back({{"nodes", g.nodes}, {"pattern", PatternKindName(g.kind)}});
  }
  WriteJsonFile(path, doc);
}

std::vector<GroundTruthGroup> ReadGroundTruthJson(const std::string& path) {
  const json doc = ReadJsonFile(path);
  if (!doc.is_array()) SchemaError(path, "expected an array of {\"nodes\": [...]} objects");
  std::vector<GroundTruthGroup> groups;
  for (const json& item : doc) {
    if (!item.is_object() || !item.contains("nodes")) SchemaError(path, "group without nodes");
    GroundTruthGroup g;
    g.nodes = IntList(item["nodes"], path, "nodes");
    if (g.nodes.empty()) SchemaError(path, "empty ground-truth group");
    std::sort(g.nodes.begin(), g.nodes.end());
    g.nodes.erase(std::unique(g.nodes.begin(), g.nodes.end()), g.nodes.end());
    if (item.contains("pattern")) {
      if (!item["pattern"].is_string()) SchemaError(path, "pattern must be a string");
      try {
        g.kind = ParsePatternKind(item["pattern"].get<std::string>());
      } catch (const Error& e) {
        SchemaError(path, e.what());
      }
    }
    groups.push_back(std::move(g));
  }
  return groups;
}

json ReportToJson(const EvalReport& report) {
  return {{"cr", report.cr},
          {"f1", report.f1},
          {"auc", report.auc ? json(*report.auc) : json(nullptr)},
          {"completeness", report.completeness},
          {"confusion",
           {{"tp", report.confusion.tp},
            {"fp", report.confusion.fp},
            {"tn", report.confusion.tn},
            {"fn", report.confusion.fn}}},
          {"num_candidates", report.num_candidates},
          {"num_predicted", report.num_predicted},
          {"num_gt_groups", report.num_gt_groups},
          {"num_positive_candidates", report.num_positive_candidates}};
}

EvalReport ReportFromJson(const json& doc) {
  EvalReport r;
  try {
    r.cr = doc.at("cr").get<double>();
    r.f1 = doc.at("f1").get<double>();
    if (!doc.at("auc").is_null()) r.auc = doc.at("auc").get<double>();
    r.completeness = doc.at("completeness").get<std::vector<double>>();
    const json& c = doc.at("confusion");
    r.confusion = {c.at("tp").get<long>(), c.at("fp").get<long>(), c.at("tn").get<long>(),
                   c.at("fn").get<long>()};
    r.num_candidates = doc.at("num_candidates").get<int>();
    r.num_predicted = doc.at("num_predicted").get<int>();
    r.num_gt_groups = doc.at("num_gt_groups").get<int>();
    r.num_positive_candidates = doc.at("num_positive_candidates").get<int>();
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, fmt::format("malformed report: {}", e.what()));
  }
  return r;
}

json InjectionSpecToJson(const InjectionSpec& spec) {
  return {{"num_groups", spec.num_groups},
          {"pattern_mix", {{"path", spec.mix.path}, {"tree", spec.mix.tree}, {"cycle", spec.mix.cycle}}},
          {"size_range", {spec.min_size, spec.max_size}},
          {"noise_sigma", spec.noise_sigma},
          {"seed", spec.seed}};
}

}  // namespace grgad
