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

#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <fmt/format.h>

namespace grgad {
namespace {

using nlohmann::json;

// Reads typed fields from one JSON object and rejects keys nobody asked for.
class Section {
 public:
  Section(const json& doc, std::string prefix) : doc_(doc), prefix_(std::move(prefix)) {
    if (!doc_.is_object()) Bad(prefix_.empty() ? "config" : prefix_, "must be a JSON object");
  }

  void Int(const char* key, int& out) {
    if (const json* v = Take(key)) {
      if (!v->is_number_integer()) Bad(key, "must be an integer");
      const auto x = v->get<long long>();
      if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
        Bad(key, "is out of range");
      }
      out = static_cast<int>(x);
    }
  }

  void Seed(const char* key, std::uint64_t& out) {
    if (const json* v = Take(key)) {
      if (!v->is_number_unsigned()) Bad(key, "must be a non-negative integer");
      out = v->get<std::uint64_t>();
    }
  }

  void OptionalSeed(const char* key, std::optional<std::uint64_t>& out) {
    if (const json* v = Take(key)) {
      if (v->is_null()) {
        out.reset();
        return;
      }
      if (!v->is_number_unsigned()) Bad(key, "must be a non-negative integer or null");
      out = v->get<std::uint64_t>();
    }
  }

  void Real(const char* key, double& out) {
    if (const json* v = Take(key)) {
      if (!v->is_number()) Bad(key, "must be a number");
      out = v->get<double>();
      if (!std::isfinite(out)) Bad(key, "must be finite");
    }
  }

  void Str(const char* key, std::string& out) {
    if (const json* v = Take(key)) {
      if (!v->is_string()) Bad(key, "must be a string");
      out = v->get<std::string>();
    }
  }

  const json* Object(const char* key) { return Take(key); }

  std::string Path(const char* key) const {
    return prefix_.empty() ? key : prefix_ + "." + key;
  }

  // Call after all fields were read.
  void Finish() const {
    for (auto it = doc_.begin(); it != doc_.end(); ++it) {
      if (!seen_.contains(it.key())) {
        Fail(ErrorCode::kInvalidArgument, fmt::format("unknown config key '{}'", Path(it.key().c_str())));
      }
    }
  }

  [[noreturn]] void Bad(const std::string& key, const std::string& what) const {
    Fail(ErrorCode::kInvalidArgument,
         fmt::format("config key '{}' {}", key == prefix_ ? key : Path(key.c_str()), what));
  }

 private:
  const json* Take(const char* key) {
    seen_.insert(key);
    const auto it = doc_.find(key);
    return it == doc_.end() ? nullptr : &*it;
  }

  const json& doc_;
  std::string prefix_;
  std::set<std::string> seen_;
};

template <typename Fn>
void WithSection(Section& parent, const char* key, Fn&& fn) {
  if (const json* sub = parent.Object(key)) {
    Section section(*sub, parent.Path(key));
    fn(section);
    section.Finish();
  }
}

std::uint64_t Fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

TargetKind ParseTargetKind(const std::string& name) {
  if (name == "plain") return TargetKind::kPlain;
  if (name == "khop") return TargetKind::kKHop;
  if (name == "overlap") return TargetKind::kOverlapWeighted;
  Fail(ErrorCode::kInvalidArgument,
       fmt::format("unknown target kind '{}' (expected plain, khop or overlap)", name));
}

const char* DetectorFeaturesName(DetectorFeatures features) {
  return features == DetectorFeatures::kTpgcl ? "tpgcl" : "mean_attributes";
}

void PipelineConfig::Validate() const {
  if (input.kind == InputKind::kFiles) {
    Require(!input.edges_path.empty(), "config key 'input.edges' is required for file input");
    Require(!input.features_path.empty(), "config key 'input.features' is required for file input");
  }
  Require(target.k >= 1, "config key 'target.k' must be >= 1");
  Require(target.overlap_lambda > 0.0, "config key 'target.overlap_lambda' must be > 0");
  mhgae.Validate();
  Require(anchor_fraction > 0.0 && anchor_fraction <= 1.0,
          "config key 'anchors.fraction' must be in (0, 1]");
  sampler.Validate();
  tpgcl.Validate();
  Require(contamination > 0.0 && contamination < 1.0,
          "config key 'detector.contamination' must be in (0, 1)");
  Require(match_overlap > 0.0 && match_overlap <= 1.0,
          "config key 'eval.match_overlap' must be in (0, 1]");
  Require(!output_dir.empty(), "config key 'output_dir' must not be empty");
}

std::uint64_t PipelineConfig::MhGaeSeed() const { return MixSeed(seed, 10); }

std::uint64_t PipelineConfig::TpgclSeed() const { return tpgcl_seed.value_or(MixSeed(seed, 20)); }

PipelineConfig ConfigFromJson(const json& doc) {
  PipelineConfig c;
  Section root(doc, "");
  int version = kConfigSchemaVersion;
  root.Int("schema_version", version);
  if (version != kConfigSchemaVersion) {
    Fail(ErrorCode::kInvalidArgument,
         fmt::format("unsupported config schema_version {} (this build reads {})", version,
                     kConfigSchemaVersion));
  }
  root.Seed("seed", c.seed);
  root.Str("output_dir", c.output_dir);

  WithSection(root, "input", [&](Section& s) {
    std::string kind = "benchmark";
    s.Str("kind", kind);
    if (kind == "benchmark") {
      c.input.kind = InputKind::kBenchmark;
    } else if (kind == "files") {
      c.input.kind = InputKind::kFiles;
    } else {
      s.Bad("kind", "must be 'benchmark' or 'files'");
    }
    s.OptionalSeed("benchmark_seed", c.input.benchmark_seed);
    s.Str("edges", c.input.edges_path);
    s.Str("features", c.input.features_path);
    s.Str("gt_groups", c.input.gt_groups_path);
  });
  WithSection(root, "target", [&](Section& s) {
    std::string kind = TargetKindName(c.target.kind);
    s.Str("kind", kind);
    c.target.kind = ParseTargetKind(kind);
    s.Int("k", c.target.k);
    s.Real("overlap_lambda", c.target.overlap_lambda);
  });
  WithSection(root, "mhgae", [&](Section& s) {
    s.Real("recon_mix_lambda", c.mhgae.recon_mix_lambda);
    s.Int("epochs", c.mhgae.epochs);
    s.Real("lr", c.mhgae.lr);
    s.Int("hidden", c.mhgae.hidden);
    s.Int("latent", c.mhgae.latent);
  });
  WithSection(root, "anchors", [&](Section& s) { s.Real("fraction", c.anchor_fraction); });
  WithSection(root, "sampler", [&](Section& s) {
    s.Int("max_path_len", c.sampler.max_path_len);
    s.Int("max_tree_nodes", c.sampler.max_tree_nodes);
    s.Int("max_cycle_len", c.sampler.max_cycle_len);
    s.Int("tree_depth", c.sampler.tree_depth);
  });
  WithSection(root, "tpgcl", [&](Section& s) {
    s.Int("epochs", c.tpgcl.epochs);
    s.Real("lr", c.tpgcl.lr);
    s.Int("batch_size", c.tpgcl.batch_size);
    s.Int("hidden", c.tpgcl.hidden);
    s.Int("critic_hidden", c.tpgcl.critic_hidden);
    s.OptionalSeed("seed", c.tpgcl_seed);
  });
  WithSection(root, "detector", [&](Section& s) {
    s.Real("contamination", c.contamination);
    std::string features = DetectorFeaturesName(c.features);
    s.Str("features", features);
    if (features == "tpgcl") {
      c.features = DetectorFeatures::kTpgcl;
    } else if (features == "mean_attributes") {
      c.features = DetectorFeatures::kMeanAttributes;
    } else {
      s.Bad("features", "must be 'tpgcl' or 'mean_attributes'");
    }
  });
  WithSection(root, "eval", [&](Section& s) { s.Real("match_overlap", c.match_overlap); });
  root.Finish();
  c.Validate();
  return c;
}

PipelineConfig ParseConfig(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, fmt::format("config is not valid JSON: {}", e.what()));
  }
  return ConfigFromJson(doc);
}

PipelineConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "cannot open config file: " + path);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return ParseConfig(text);
  } catch (const Error& e) {
    Fail(e.code(), fmt::format("{}: {}", path, e.what()));
  }
}

json ConfigToJson(const PipelineConfig& c) {
  json input = {{"kind", c.input.kind == InputKind::kBenchmark ? "benchmark" : "files"}};
  if (c.input.kind == InputKind::kBenchmark) {
    input["benchmark_seed"] = c.input.benchmark_seed ? json(*c.input.benchmark_seed) : json(nullptr);
  } else {
    input["edges"] = c.input.edges_path;
    input["features"] = c.input.features_path;
    input["gt_groups"] = c.input.gt_groups_path;
  }
  return {{"schema_version", kConfigSchemaVersion},
          {"seed", c.seed},
          {"output_dir", c.output_dir},
          {"input", std::move(input)},
          {"target",
           {{"kind", TargetKindName(c.target.kind)},
            {"k", c.target.k},
            {"overlap_lambda", c.target.overlap_lambda}}},
          {"mhgae", ToJson(c.mhgae)},
          {"anchors", {{"fraction", c.anchor_fraction}}},
          {"sampler",
           {{"max_path_len", c.sampler.max_path_len},
            {"max_tree_nodes", c.sampler.max_tree_nodes},
            {"max_cycle_len", c.sampler.max_cycle_len},
            {"tree_depth", c.sampler.tree_depth}}},
          {"tpgcl",
           {{"epochs", c.tpgcl.epochs},
            {"lr", c.tpgcl.lr},
            {"batch_size", c.tpgcl.batch_size},
            {"hidden", c.tpgcl.hidden},
            {"critic_hidden", c.tpgcl.critic_hidden},
            {"seed", c.tpgcl_seed ? json(*c.tpgcl_seed) : json(nullptr)}}},
          {"detector",
           {{"contamination", c.contamination}, {"features", DetectorFeaturesName(c.features)}}},
          {"eval", {{"match_overlap", c.match_overlap}}}};
}

std::string ConfigHash(const PipelineConfig& config) {
  json doc = ConfigToJson(config);
  doc.erase("output_dir");
  return fmt::format("{:016x}", Fnv1a(doc.dump()));
}

}  // namespace grgad
