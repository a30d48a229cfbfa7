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

#ifndef GRGAD_COMMON_HPP_
#define GRGAD_COMMON_HPP_

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace grgad {

// Dense row-major matrix used for attributes, weights and targets.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;

// Error classes. The numeric values double as CLI exit codes and C API
// status codes, so they must stay stable.
enum class ErrorCode : int {
  kInvalidArgument = 2,
  kIo = 3,
  kParse = 4,
  kNumeric = 5,
  kMissingArtifact = 6,
  kDegenerate = 7,
  kInternal = 10,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void Fail(ErrorCode code, const std::string& message);

inline void Require(bool condition, const std::string& message) {
  if (!condition) Fail(ErrorCode::kInvalidArgument, message);
}

bool AllFinite(const Matrix& m);

// Configures the process-wide logger from the GRGAD_LOG environment variable
// (trace|debug|info|warn|error|off). Idempotent.
void InitLogging();

const char* LibraryVersion();

// Deterministic generator. std::mt19937_64 is fully specified by the
// standard; the distributions are hand-rolled because the std ones are not.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t NextU64();
  // Uniform in [0, 1) with 53 random bits.
  double Uniform();
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t UniformInt(std::uint64_t bound);
  // Standard normal via Box-Muller; caches the second variate.
  double Normal();

  template <typename T>
  void Shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(UniformInt(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// SplitMix64 finalizer; used to derive independent sub-seeds.
std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t stream);

}  // namespace grgad

#endif  // GRGAD_COMMON_HPP_
