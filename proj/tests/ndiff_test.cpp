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

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "ndiff.hpp"
#include "test_util.hpp"

namespace grgad {
namespace {

using testing::RandomGraph;
using testing::RandomMatrix;
using testing::TempDir;

TEST(SeededRng, Deterministic) {
  SeededRng a(5), b(5), c(6);
  for (int i = 0; i < 100; ++i) {
    const double x = a.Normal();
    EXPECT_EQ(x, b.Normal());
    EXPECT_TRUE(std::isfinite(x));
  }
  EXPECT_NE(a.NextU64(), c.NextU64());
}

TEST(SeededRng, RangesAndMoments) {
  SeededRng rng(7);
  double sum = 0.0, sq = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.Uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_LT(rng.UniformInt(7), 7u);
    const double z = rng.Normal();
    sum += z;
    sq += z * z;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.05);
  EXPECT_NEAR(sq / n, 1.0, 0.05);
}

TEST(Gcn, IdentityPropagation) {
  SeededRng rng(1);
  Matrix h = RandomMatrix(4, 3, rng).cwiseAbs();
  Param w("w", Matrix::Identity(3, 3));
  const Matrix out = GcnForward(Matrix(Matrix::Identity(4, 4)), h, w, Activation::kRelu);
  EXPECT_EQ(out, h);
}

TEST(Gcn, SingleNodeScalar) {
  Param w("w", Matrix::Constant(1, 1, -2.0));
  const Matrix p = Matrix::Constant(1, 1, 1.0);
  EXPECT_EQ(GcnForward(p, Matrix::Constant(1, 1, 3.0), w, Activation::kRelu)(0, 0), 0.0);
  w.value(0, 0) = 2.0;
  EXPECT_EQ(GcnForward(p, Matrix::Constant(1, 1, 3.0), w, Activation::kRelu)(0, 0), 6.0);
}

TEST(Gcn, ShapeMismatchThrows) {
  Param w("w", Matrix::Zero(2, 2));
  EXPECT_THROW(GcnForward(Matrix(Matrix::Identity(3, 3)), Matrix::Zero(3, 3), w, Activation::kRelu),
               Error);
}

TEST(Gcn, TwoLayerGradientsMatchFiniteDifferences) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SeededRng rng(seed);
    const AttributedGraph g = RandomGraph(6, 0.4, 3, rng);
    const Matrix p = PropagationMatrix(g);
    Param w1("w1", RandomMatrix(3, 4, rng));
    Param w2("w2", RandomMatrix(4, 2, rng));
    const Matrix target = RandomMatrix(6, 2, rng);
    auto forward = [&](GcnCache* c1, GcnCache* c2) {
      const Matrix h1 = GcnForward(p, g.attributes(), w1, Activation::kRelu, c1);
      return GcnForward(p, h1, w2, Activation::kIdentity, c2);
    };
    auto loss = [&] { return 0.5 * (forward(nullptr, nullptr) - target).squaredNorm(); };
    auto grads = [&] {
      GcnCache c1, c2;
      const Matrix out = forward(&c1, &c2);
      const Matrix dh1 = GcnBackward(p, c2, out - target, w2);
      GcnBackward(p, c1, dh1, w1);
    };
    const GradCheckReport r = CheckGradients(loss, grads, {&w1, &w2}, {});
    EXPECT_LT(r.max_rel_error, 1e-4) << "seed " << seed << " worst " << r.worst_param;
  }
}

TEST(Mlp2, ZeroWeightsGiveBias) {
  SeededRng rng(2);
  Mlp2 mlp("m", 3, 4, rng);
  mlp.w1.value.setZero();
  mlp.w2.value.setZero();
  mlp.b2.value(0, 0) = 0.75;
  EXPECT_EQ(mlp.Forward(RowVector::Ones(3)), 0.75);
}

TEST(Mlp2, HandEvaluatedHiddenSizeOne) {
  SeededRng rng(3);
  Mlp2 mlp("m", 2, 1, rng);
  mlp.w1.value << 1.0, -2.0;  // 2 x 1
  mlp.b1.value << 0.5;
  mlp.w2.value << 3.0;
  mlp.b2.value << -1.0;
  RowVector x(2);
  x << 2.0, 0.25;
  // relu(2 - 0.5 + 0.5) = 2; 3 * 2 - 1 = 5.
  EXPECT_DOUBLE_EQ(mlp.Forward(x), 5.0);
  x << -1.0, 1.0;  // relu(-1 - 2 + 0.5) = 0
  EXPECT_DOUBLE_EQ(mlp.Forward(x), -1.0);
}

TEST(Mlp2, GradientsMatchFiniteDifferences) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SeededRng rng(100 + seed);
    Mlp2 mlp("m", 4, 5, rng);
    mlp.b1.value = RandomMatrix(1, 5, rng);
    Param input("x", RandomMatrix(6, 4, rng));
    const Vector weights = RandomMatrix(6, 1, rng);
    auto loss = [&] { return weights.dot(mlp.ForwardBatch(input.value)); };
    auto grads = [&] { input.grad = mlp.BackwardBatch(input.value, weights); };
    ParamRefs params = mlp.params();
    params.push_back(&input);
    const GradCheckReport r = CheckGradients(loss, grads, params, {});
    EXPECT_LT(r.max_rel_error, 1e-4) << "seed " << seed << " worst " << r.worst_param;
  }
}

TEST(Adam, ZeroGradientLeavesParamsUnchanged) {
  Param p("p", Matrix::Constant(2, 2, 1.5));
  AdamState state;
  AdamStep({&p}, state, {});
  EXPECT_EQ(p.value, Matrix::Constant(2, 2, 1.5));
}

TEST(Adam, FirstStepMovesByLearningRate) {
  Param p("p", Matrix::Constant(1, 1, 1.0));
  p.grad(0, 0) = 1.0;
  AdamState state;
  AdamConfig config;
  config.lr = 0.01;
  AdamStep({&p}, state, config);
  // m_hat = 1, v_hat = 1: step = lr / (1 + eps).
  EXPECT_NEAR(p.value(0, 0), 1.0 - 0.01 / (1.0 + 1e-8), 1e-15);
}

TEST(Adam, RepeatableAndRejectsNonFinite) {
  auto run = [] {
    Param p("p", Matrix::Constant(1, 3, 0.5));
    AdamState state;
    for (int i = 0; i < 2; ++i) {
      p.grad << 0.1, -0.2, 0.3;
      AdamStep({&p}, state, {});
    }
    return p.value;
  };
  EXPECT_EQ(run(), run());
  Param bad("weights", Matrix::Zero(1, 1));
  bad.grad(0, 0) = std::numeric_limits<double>::infinity();
  AdamState state;
  try {
    AdamStep({&bad}, state, {});
    FAIL() << "expected a numeric error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNumeric);
    EXPECT_NE(std::string(e.what()).find("weights"), std::string::npos);
  }
}

TEST(CheckGradients, LinearModelIsExact) {
  SeededRng rng(4);
  Param w("w", RandomMatrix(3, 2, rng));
  const Matrix c = RandomMatrix(3, 2, rng);
  auto loss = [&] { return w.value.cwiseProduct(c).sum(); };
  auto grads = [&] { w.grad = c; };
  EXPECT_LT(CheckGradients(loss, grads, {&w}).max_rel_error, 1e-9);
}

TEST(CheckGradients, FlagsCorruptedGradient) {
  SeededRng rng(5);
  Param w("w", RandomMatrix(3, 2, rng));
  auto loss = [&] { return 0.5 * w.value.squaredNorm(); };
  auto grads = [&] {
    w.grad = w.value;
    w.grad(1, 1) += 1.0;
  };
  const GradCheckReport r = CheckGradients(loss, grads, {&w});
  EXPECT_GT(r.max_rel_error, 1e-2);
  EXPECT_EQ(r.worst_param, "w");
}

TEST(Checkpoint, RoundTripIsExact) {
  SeededRng rng(6);
  Param a("a", RandomMatrix(3, 4, rng));
  Param b("b", RandomMatrix(1, 2, rng));
  const std::string path = TempDir("ckpt") + "/m.json";
  SaveCheckpoint(path, "toy", {&a, &b}, 42, {{"hidden", 4}});
  Param a2("a", Matrix::Zero(3, 4));
  Param b2("b", Matrix::Zero(1, 2));
  const LoadedCheckpoint loaded = LoadCheckpoint(path, "toy", {&a2, &b2});
  EXPECT_EQ(loaded.seed, 42u);
  EXPECT_EQ(loaded.config["hidden"], 4);
  EXPECT_EQ(a2.value, a.value);
  EXPECT_EQ(b2.value, b.value);
  Param wrong("a", Matrix::Zero(2, 2));
  EXPECT_THROW(LoadCheckpoint(path, "toy", {&wrong}), Error);
  EXPECT_THROW(ReadCheckpointHeader(path, "other"), Error);
}

}  // namespace
}  // namespace grgad
