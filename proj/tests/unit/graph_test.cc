// Copyright 2026 The relpara Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "relpara/nn/graph.h"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "gtest/gtest.h"
#include "relpara/nn/adam.h"
#include "relpara/nn/parameters.h"

namespace relpara::nn {
namespace {

// Compares analytic gradients against central differences for every entry of
// every parameter.
void CheckGradients(ParameterSet& params,
                    const std::function<Var(Graph&)>& build, double tol = 2e-2) {
  params.ZeroGrad();
  {
    Graph g;
    g.Backward(build(g));
  }
  auto loss_at = [&] {
    Graph g;
    return static_cast<double>(g.scalar(build(g)));
  };
  const float h = 1e-2f;
  for (auto& p : params.all()) {
    for (int i = 0; i < p->value.size(); ++i) {
      float& w = p->value.data()[i];
      const float saved = w;
      w = saved + h;
      const double up = loss_at();
      w = saved - h;
      const double down = loss_at();
      w = saved;
      const double numeric = (up - down) / (2.0 * h);
      const double analytic = p->grad.data()[i];
      EXPECT_NEAR(analytic, numeric, tol * std::max(1.0, std::abs(numeric)))
          << p->name << "[" << i << "]";
    }
  }
}

class GraphGradientTest : public ::testing::Test {
 protected:
  Parameter& Add(const std::string& name, int r, int c) {
    return params_.Add(name, r, c, Init::kNormal, rng_, 0.5f);
  }
  std::mt19937_64 rng_{42};
  ParameterSet params_;
};

TEST_F(GraphGradientTest, MatMulAddReluSoftmax) {
  Parameter& a = Add("a", 3, 4);
  Parameter& b = Add("b", 4, 5);
  Parameter& bias = Add("bias", 1, 5);
  const std::vector<int> targets = {1, 4, 0};
  const std::vector<float> weights = {1.0f, 0.5f, 2.0f};
  CheckGradients(params_, [&](Graph& g) {
    Var h = g.AddRow(g.MatMul(g.Param(a), g.Param(b)), g.Param(bias));
    Var r = g.Relu(g.Add(h, g.Scale(h, 0.5f)));
    return g.WeightedCrossEntropy(r, targets, weights);
  });
}

TEST_F(GraphGradientTest, AttentionLikeComposition) {
  Parameter& q = Add("q", 3, 4);
  Parameter& k = Add("k", 5, 4);
  Parameter& v = Add("v", 5, 6);
  Parameter& gain = Add("gain", 1, 6);
  Parameter& shift = Add("shift", 1, 6);
  Matrix mask = Matrix::Zero(3, 5);
  mask(0, 4) = -1e9f;
  const std::vector<int> targets = {0, 2, 5};
  const std::vector<float> weights = {1.0f, 1.0f, 1.0f};
  CheckGradients(params_, [&](Graph& g) {
    Var s = g.Scale(g.MatMulTransposed(g.Param(q), g.Param(k)), 0.5f);
    Var att = g.MatMul(g.Softmax(s, &mask), g.Param(v));
    Var n = g.LayerNorm(att, g.Param(gain), g.Param(shift));
    return g.WeightedCrossEntropy(n, targets, weights, 0.1f);
  });
}

TEST_F(GraphGradientTest, SliceConcatGatherMean) {
  Parameter& table = Add("table", 6, 4);
  Parameter& w = Add("w", 4, 3);
  const std::vector<int> ids = {2, 5, 2, 0};
  Matrix soft(1, 3);
  soft << 0.2f, 0.5f, 0.3f;
  CheckGradients(params_, [&](Graph& g) {
    Var rows = g.GatherRows(g.Param(table), ids);
    const Var parts[] = {g.SliceCols(rows, 2, 2), g.SliceCols(rows, 0, 2)};
    Var swapped = g.ConcatCols(parts);
    Var pooled = g.MeanRows(swapped);
    return g.SoftTargetCrossEntropy(g.MatMul(pooled, g.Param(w)), soft);
  });
}

TEST_F(GraphGradientTest, SmoothingSupportGradient) {
  Parameter& logits = Add("logits", 2, 5);
  const std::vector<int> targets = {1, 3};
  const std::vector<float> weights = {1.0f, 1.0f};
  const std::vector<std::uint8_t> support = {0, 1, 1, 1, 0};
  CheckGradients(params_, [&](Graph& g) {
    return g.WeightedCrossEntropy(g.Param(logits), targets, weights, 0.2f,
                                  support);
  });
}

TEST(GraphTest, CrossEntropyOfUniformIsLogThree) {
  Graph g;
  Var logits = g.Constant(Matrix::Zero(1, 3));
  Matrix onehot = Matrix::Zero(1, 3);
  onehot(0, 0) = 1.0f;
  EXPECT_NEAR(g.scalar(g.SoftTargetCrossEntropy(logits, onehot)), std::log(3.0),
              1e-6);
  const std::vector<int> target = {0};
  const std::vector<float> weight = {1.0f};
  EXPECT_NEAR(g.scalar(g.WeightedCrossEntropy(logits, target, weight)),
              std::log(3.0), 1e-6);
}

TEST(GraphTest, ConfidentCorrectPredictionHasNearZeroLoss) {
  Graph g;
  Matrix l(1, 3);
  l << 40.0f, 0.0f, 0.0f;
  Matrix onehot = Matrix::Zero(1, 3);
  onehot(0, 0) = 1.0f;
  EXPECT_NEAR(g.scalar(g.SoftTargetCrossEntropy(g.Constant(l), onehot)), 0.0,
              1e-6);
}

TEST(GraphTest, MaskedSmoothingIgnoresUnsupportedColumns) {
  // A -1e9 column outside the support must not blow up the smoothed loss.
  Graph g;
  Matrix l = Matrix::Zero(1, 4);
  l(0, 3) = -1e9f;
  const std::vector<int> target = {0};
  const std::vector<float> weight = {1.0f};
  const std::vector<std::uint8_t> support = {1, 1, 1, 0};
  const float loss = g.scalar(
      g.WeightedCrossEntropy(g.Constant(l), target, weight, 0.1f, support));
  EXPECT_NEAR(loss, std::log(3.0), 1e-5);
}

TEST(LogSoftmaxRowsTest, RowsExponentiateToOne) {
  Matrix l(2, 3);
  l << 1, 2, 3, -5, 0, 100;
  const Matrix ls = LogSoftmaxRows(l);
  for (int r = 0; r < 2; ++r) {
    EXPECT_NEAR(ls.row(r).array().exp().sum(), 1.0, 1e-5);
  }
}

TEST(ParameterSetTest, SnapshotRestoreAndSerialization) {
  std::mt19937_64 rng(1);
  ParameterSet a;
  a.Add("w", 3, 2, Init::kNormal, rng);
  a.Add("b", 1, 2, Init::kZeros, rng);
  const auto snap = a.Snapshot();
  a.Get("w").value.setConstant(7.0f);
  a.Restore(snap);
  EXPECT_TRUE(a.Get("w").value.isApprox(snap[0]));

  std::stringstream buf;
  a.Write(buf);
  std::mt19937_64 other(99);
  ParameterSet b;
  b.Add("w", 3, 2, Init::kNormal, other);
  b.Add("b", 1, 2, Init::kZeros, other);
  b.Read(buf);
  EXPECT_EQ(b.Get("w").value, a.Get("w").value);

  ParameterSet wrong;
  wrong.Add("w", 2, 2, Init::kZeros, other);
  std::stringstream buf2;
  a.Write(buf2);
  EXPECT_ANY_THROW(wrong.Read(buf2));
  EXPECT_EQ(a.Count(), 8);
}

TEST(ParameterSetTest, FiniteCheck) {
  std::mt19937_64 rng(1);
  ParameterSet p;
  p.Add("w", 2, 2, Init::kOnes, rng);
  EXPECT_TRUE(p.AllFinite());
  p.Get("w").value(0, 1) = std::nanf("");
  EXPECT_FALSE(p.AllFinite());
}

TEST(AdamTest, MinimizesQuadratic) {
  std::mt19937_64 rng(1);
  ParameterSet p;
  Parameter& x = p.Add("x", 1, 2, Init::kOnes, rng);
  Adam adam(p, {.learning_rate = 0.05});
  for (int i = 0; i < 500; ++i) {
    p.ZeroGrad();
    x.grad = 2.0f * (x.value.array() - 3.0f).matrix();
    adam.Step();
  }
  EXPECT_NEAR(x.value(0, 0), 3.0f, 1e-2);
  EXPECT_EQ(adam.steps(), 500);
}

TEST(AdamTest, ClippingBoundsTheUpdateDirection) {
  std::mt19937_64 rng(1);
  ParameterSet p;
  Parameter& x = p.Add("x", 1, 1, Init::kZeros, rng);
  Adam adam(p, {.learning_rate = 0.1, .clip_norm = 1.0});
  x.grad(0, 0) = 1000.0f;
  adam.Step();
  // The first Adam step moves by about lr regardless of scale.
  EXPECT_NEAR(x.value(0, 0), -0.1f, 1e-3);
}

}  // namespace
}  // namespace relpara::nn
