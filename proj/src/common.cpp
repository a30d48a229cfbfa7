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

#include "common.hpp"

#include <cmath>
#include <cstdlib>
#include <mutex>
#include <numbers>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

namespace grgad {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kIo: return "io error";
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kNumeric: return "numeric error";
    case ErrorCode::kMissingArtifact: return "missing artifact";
    case ErrorCode::kDegenerate: return "degenerate input";
    case ErrorCode::kInternal: return "internal error";
  }
  return "unknown error";
}

void Fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

bool AllFinite(const Matrix& m) { return m.allFinite(); }

void InitLogging() {
  static std::once_flag once;
  std::call_once(once, [] {
    auto logger = spdlog::stderr_color_mt("grgad");
    logger->set_pattern("[%l] %v");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::warn);
    if (const char* env = std::getenv("GRGAD_LOG")) {
      spdlog::set_level(spdlog::level::from_str(env));
    }
  });
}

const char* LibraryVersion() { return GRGAD_VERSION_STRING; }

SeededRng::SeededRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

std::uint64_t SeededRng::NextU64() { return engine_(); }

double SeededRng::Uniform() {
  return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
}

std::uint64_t SeededRng::UniformInt(std::uint64_t bound) {
  Require(bound > 0, "UniformInt bound must be positive");
  // Rejection sampling over the largest multiple of bound.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = NextU64();
  } while (x >= limit);
  return x % bound;
}

double SeededRng::Normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1;
  do {
    u1 = Uniform();
  } while (u1 <= 0.0);
  const double u2 = Uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace grgad
