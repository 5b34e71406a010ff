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

// Reverse-mode automatic differentiation over row-major float matrices.
//
// A Graph is a tape: every op appends a node holding its forward value and a
// closure that propagates the node's gradient to its inputs. Backward() walks
// the tape once in reverse and adds parameter gradients into Parameter::grad.
// Graphs are single-use and single-threaded.

#ifndef RELPARA_NN_GRAPH_H_
#define RELPARA_NN_GRAPH_H_

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "relpara/nn/parameters.h"

namespace relpara::nn {

struct Var {
  int id = -1;
};

class Graph {
 public:
  Var Constant(Matrix value);
  Var Param(Parameter& p);

  const Matrix& value(Var v) const { return nodes_[v.id].value; }
  float scalar(Var v) const { return nodes_[v.id].value(0, 0); }

  Var MatMul(Var a, Var b);            // a * b
  Var MatMulTransposed(Var a, Var b);  // a * b^T
  Var Add(Var a, Var b);
  Var AddRow(Var a, Var row);  // broadcast a 1 x n row over a's rows
  Var Scale(Var a, float s);
  Var Relu(Var a);
  Var LayerNorm(Var x, Var gain, Var bias, float eps = 1e-5f);
  // Row softmax of (a + mask); mask may be null. Masked entries use -inf-like
  // additive values.
  Var Softmax(Var a, const Matrix* mask = nullptr);
  Var SliceCols(Var a, int start, int width);
  Var ConcatCols(std::span<const Var> parts);
  Var GatherRows(Var table, std::span<const int> ids);
  Var MeanRows(Var a);  // 1 x cols
  Var Dropout(Var a, float p, std::mt19937_64& rng);

  // Sum over rows i of weights[i] * CE(softmax(logits_i), q_i) where
  // q_i = (1 - label_smoothing) * onehot(targets[i]) + label_smoothing * u
  // and u is uniform over the columns flagged in `support` (all columns when
  // empty). Returns a 1 x 1 node.
  Var WeightedCrossEntropy(Var logits, std::span<const int> targets,
                           std::span<const float> weights,
                           float label_smoothing = 0.0f,
                           std::span<const std::uint8_t> support = {});
  // Sum over rows of -sum_j targets(i, j) * log softmax(logits_i)_j.
  Var SoftTargetCrossEntropy(Var logits, const Matrix& targets);

  // Runs reverse accumulation from a 1 x 1 node seeded with `seed`.
  void Backward(Var loss, float seed = 1.0f);

  int size() const { return static_cast<int>(nodes_.size()); }

 private:
  struct Node {
    Matrix value;
    Matrix grad;
    Parameter* param = nullptr;
    bool needs_grad = false;
    std::function<void()> backward;
  };

  Var Push(Matrix value, bool needs_grad);
  bool NeedsGrad(Var v) const { return nodes_[v.id].needs_grad; }
  Matrix& Grad(Var v);

  std::vector<Node> nodes_;
};

// Row-wise log-softmax, used by both the tape and the inference paths.
Matrix LogSoftmaxRows(const Matrix& logits);

}  // namespace relpara::nn

#endif  // RELPARA_NN_GRAPH_H_
