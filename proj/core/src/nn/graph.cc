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
#include <stdexcept>

namespace relpara::nn {

Matrix LogSoftmaxRows(const Matrix& logits) {
  Matrix out(logits.rows(), logits.cols());
  for (int i = 0; i < logits.rows(); ++i) {
    const float mx = logits.row(i).maxCoeff();
    const float lse =
        mx + std::log((logits.row(i).array() - mx).exp().sum());
    out.row(i) = logits.row(i).array() - lse;
  }
  return out;
}

Var Graph::Push(Matrix value, bool needs_grad) {
  Node n;
  n.value = std::move(value);
  n.needs_grad = needs_grad;
  nodes_.push_back(std::move(n));
  return Var{static_cast<int>(nodes_.size()) - 1};
}

Matrix& Graph::Grad(Var v) {
  Node& n = nodes_[v.id];
  if (n.grad.size() == 0) n.grad = Matrix::Zero(n.value.rows(), n.value.cols());
  return n.grad;
}

Var Graph::Constant(Matrix value) { return Push(std::move(value), false); }

Var Graph::Param(Parameter& p) {
  Var v = Push(p.value, true);
  nodes_[v.id].param = &p;
  return v;
}

Var Graph::MatMul(Var a, Var b) {
  Var out = Push(value(a) * value(b), NeedsGrad(a) || NeedsGrad(b));
  nodes_[out.id].backward = [this, a, b, out] {
    const Matrix& g = nodes_[out.id].grad;
    if (NeedsGrad(a)) Grad(a).noalias() += g * value(b).transpose();
    if (NeedsGrad(b)) Grad(b).noalias() += value(a).transpose() * g;
  };
  return out;
}

Var Graph::MatMulTransposed(Var a, Var b) {
  Var out = Push(value(a) * value(b).transpose(), NeedsGrad(a) || NeedsGrad(b));
  nodes_[out.id].backward = [this, a, b, out] {
    const Matrix& g = nodes_[out.id].grad;
    if (NeedsGrad(a)) Grad(a).noalias() += g * value(b);
    if (NeedsGrad(b)) Grad(b).noalias() += g.transpose() * value(a);
  };
  return out;
}

Var Graph::Add(Var a, Var b) {
  if (value(a).rows() != value(b).rows() || value(a).cols() != value(b).cols()) {
    throw std::invalid_argument("Add shape mismatch");
  }
  Var out = Push(value(a) + value(b), NeedsGrad(a) || NeedsGrad(b));
  nodes_[out.id].backward = [this, a, b, out] {
    const Matrix& g = nodes_[out.id].grad;
    if (NeedsGrad(a)) Grad(a) += g;
    if (NeedsGrad(b)) Grad(b) += g;
  };
  return out;
}

Var Graph::AddRow(Var a, Var row) {
  Matrix v = value(a);
  v.rowwise() += value(row).row(0);
  Var out = Push(std::move(v), NeedsGrad(a) || NeedsGrad(row));
  nodes_[out.id].backward = [this, a, row, out] {
    const Matrix& g = nodes_[out.id].grad;
    if (NeedsGrad(a)) Grad(a) += g;
    if (NeedsGrad(row)) Grad(row) += g.colwise().sum();
  };
  return out;
}

Var Graph::Scale(Var a, float s) {
  Var out = Push(value(a) * s, NeedsGrad(a));
  nodes_[out.id].backward = [this, a, s, out] {
    if (NeedsGrad(a)) Grad(a) += nodes_[out.id].grad * s;
  };
  return out;
}

Var Graph::Relu(Var a) {
  Var out = Push(value(a).cwiseMax(0.0f), NeedsGrad(a));
  nodes_[out.id].backward = [this, a, out] {
    if (!NeedsGrad(a)) return;
    const Matrix& g = nodes_[out.id].grad;
    Grad(a).array() += (value(a).array() > 0.0f).select(g.array(), 0.0f);
  };
  return out;
}

Var Graph::LayerNorm(Var x, Var gain, Var bias, float eps) {
  const Matrix& xv = value(x);
  const int rows = static_cast<int>(xv.rows());
  const int cols = static_cast<int>(xv.cols());
  Matrix normalized(rows, cols);
  std::vector<float> inv_std(rows);
  for (int i = 0; i < rows; ++i) {
    const float mean = xv.row(i).mean();
    const float var = (xv.row(i).array() - mean).square().mean();
    inv_std[i] = 1.0f / std::sqrt(var + eps);
    normalized.row(i) = (xv.row(i).array() - mean) * inv_std[i];
  }
  Matrix y = normalized.array().rowwise() * value(gain).row(0).array();
  y.rowwise() += value(bias).row(0);
  Var out = Push(std::move(y),
                 NeedsGrad(x) || NeedsGrad(gain) || NeedsGrad(bias));
  nodes_[out.id].backward = [this, x, gain, bias, out,
                             normalized = std::move(normalized),
                             inv_std = std::move(inv_std), cols] {
    const Matrix& g = nodes_[out.id].grad;
    if (NeedsGrad(gain)) {
      Grad(gain) += (g.array() * normalized.array()).colwise().sum().matrix();
    }
    if (NeedsGrad(bias)) Grad(bias) += g.colwise().sum();
    if (!NeedsGrad(x)) return;
    Matrix& gx = Grad(x);
    const auto gamma = value(gain).row(0).array();
    for (int i = 0; i < g.rows(); ++i) {
      const Eigen::Array<float, 1, Eigen::Dynamic> dn = g.row(i).array() * gamma;
      const float mean_dn = dn.sum() / static_cast<float>(cols);
      const float mean_dn_n =
          (dn * normalized.row(i).array()).sum() / static_cast<float>(cols);
      gx.row(i).array() +=
          inv_std[i] * (dn - mean_dn - normalized.row(i).array() * mean_dn_n);
    }
  };
  return out;
}

Var Graph::Softmax(Var a, const Matrix* mask) {
  Matrix logits = value(a);
  if (mask != nullptr) logits += *mask;
  Matrix p(logits.rows(), logits.cols());
  for (int i = 0; i < logits.rows(); ++i) {
    const float mx = logits.row(i).maxCoeff();
    p.row(i) = (logits.row(i).array() - mx).exp();
    p.row(i) /= p.row(i).sum();
  }
  Var out = Push(std::move(p), NeedsGrad(a));
  nodes_[out.id].backward = [this, a, out] {
    if (!NeedsGrad(a)) return;
    const Matrix& g = nodes_[out.id].grad;
    const Matrix& p = value(out);
    const Eigen::VectorXf dot = (g.array() * p.array()).rowwise().sum();
    Grad(a).array() += p.array() * (g.array().colwise() - dot.array());
  };
  return out;
}

Var Graph::SliceCols(Var a, int start, int width) {
  Var out = Push(value(a).middleCols(start, width), NeedsGrad(a));
  nodes_[out.id].backward = [this, a, start, width, out] {
    if (NeedsGrad(a)) Grad(a).middleCols(start, width) += nodes_[out.id].grad;
  };
  return out;
}

Var Graph::ConcatCols(std::span<const Var> parts) {
  if (parts.empty()) throw std::invalid_argument("ConcatCols of nothing");
  const auto rows = value(parts[0]).rows();
  Eigen::Index cols = 0;
  bool needs = false;
  for (Var p : parts) {
    cols += value(p).cols();
    needs = needs || NeedsGrad(p);
  }
  Matrix v(rows, cols);
  Eigen::Index at = 0;
  for (Var p : parts) {
    v.middleCols(at, value(p).cols()) = value(p);
    at += value(p).cols();
  }
  Var out = Push(std::move(v), needs);
  std::vector<Var> inputs(parts.begin(), parts.end());
  nodes_[out.id].backward = [this, inputs = std::move(inputs), out] {
    const Matrix& g = nodes_[out.id].grad;
    Eigen::Index at = 0;
    for (Var p : inputs) {
      const auto w = value(p).cols();
      if (NeedsGrad(p)) Grad(p) += g.middleCols(at, w);
      at += w;
    }
  };
  return out;
}

Var Graph::GatherRows(Var table, std::span<const int> ids) {
  const Matrix& t = value(table);
  Matrix v(static_cast<Eigen::Index>(ids.size()), t.cols());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] < 0 || ids[i] >= t.rows()) {
      throw std::out_of_range("GatherRows id out of range");
    }
    v.row(static_cast<Eigen::Index>(i)) = t.row(ids[i]);
  }
  Var out = Push(std::move(v), NeedsGrad(table));
  std::vector<int> idx(ids.begin(), ids.end());
  nodes_[out.id].backward = [this, table, idx = std::move(idx), out] {
    if (!NeedsGrad(table)) return;
    const Matrix& g = nodes_[out.id].grad;
    Matrix& gt = Grad(table);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      gt.row(idx[i]) += g.row(static_cast<Eigen::Index>(i));
    }
  };
  return out;
}

Var Graph::MeanRows(Var a) {
  const auto rows = value(a).rows();
  Var out = Push(value(a).colwise().mean(), NeedsGrad(a));
  nodes_[out.id].backward = [this, a, rows, out] {
    if (!NeedsGrad(a)) return;
    Grad(a).rowwise() += nodes_[out.id].grad.row(0) / static_cast<float>(rows);
  };
  return out;
}

Var Graph::Dropout(Var a, float p, std::mt19937_64& rng) {
  if (p <= 0.0f) return a;
  std::bernoulli_distribution keep(1.0 - p);
  Matrix mask(value(a).rows(), value(a).cols());
  const float scale = 1.0f / (1.0f - p);
  for (Eigen::Index i = 0; i < mask.size(); ++i) {
    mask.data()[i] = keep(rng) ? scale : 0.0f;
  }
  Var out = Push(value(a).cwiseProduct(mask), NeedsGrad(a));
  nodes_[out.id].backward = [this, a, out, mask = std::move(mask)] {
    if (NeedsGrad(a)) Grad(a) += nodes_[out.id].grad.cwiseProduct(mask);
  };
  return out;
}

Var Graph::WeightedCrossEntropy(Var logits, std::span<const int> targets,
                                std::span<const float> weights,
                                float label_smoothing,
                                std::span<const std::uint8_t> support) {
  const Matrix& l = value(logits);
  if (static_cast<Eigen::Index>(targets.size()) != l.rows() ||
      weights.size() != targets.size()) {
    throw std::invalid_argument("cross-entropy target/weight size mismatch");
  }
  if (!support.empty() && static_cast<Eigen::Index>(support.size()) != l.cols()) {
    throw std::invalid_argument("smoothing support size mismatch");
  }
  // Smoothing target: uniform over the supported columns.
  Matrix uniform(1, l.cols());
  if (support.empty()) {
    uniform.setConstant(1.0f / static_cast<float>(l.cols()));
  } else {
    int n = 0;
    for (auto s : support) n += s != 0 ? 1 : 0;
    if (n == 0) throw std::invalid_argument("empty smoothing support");
    for (Eigen::Index j = 0; j < l.cols(); ++j) {
      uniform(0, j) = support[j] != 0 ? 1.0f / static_cast<float>(n) : 0.0f;
    }
  }
  const Matrix logp = LogSoftmaxRows(l);
  double loss = 0.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    const double nll = -logp(i, targets[i]);
    double smooth = 0.0;
    if (label_smoothing != 0.0f) {
      for (Eigen::Index j = 0; j < l.cols(); ++j) {
        if (uniform(0, j) != 0.0f) smooth -= uniform(0, j) * logp(i, j);
      }
    }
    loss += weights[i] *
            ((1.0 - label_smoothing) * nll + label_smoothing * smooth);
  }
  Matrix v(1, 1);
  v(0, 0) = static_cast<float>(loss);
  Var out = Push(std::move(v), NeedsGrad(logits));
  std::vector<int> t(targets.begin(), targets.end());
  std::vector<float> w(weights.begin(), weights.end());
  nodes_[out.id].backward = [this, logits, out, logp, t = std::move(t),
                             w = std::move(w), label_smoothing,
                             uniform = std::move(uniform)] {
    if (!NeedsGrad(logits)) return;
    const float g = nodes_[out.id].grad(0, 0);
    Matrix& gl = Grad(logits);
    for (Eigen::Index i = 0; i < logp.rows(); ++i) {
      Eigen::Array<float, 1, Eigen::Dynamic> d =
          logp.row(i).array().exp() - label_smoothing * uniform.row(0).array();
      d(t[i]) -= 1.0f - label_smoothing;
      gl.row(i).array() += g * w[i] * d;
    }
  };
  return out;
}

Var Graph::SoftTargetCrossEntropy(Var logits, const Matrix& targets) {
  const Matrix& l = value(logits);
  if (targets.rows() != l.rows() || targets.cols() != l.cols()) {
    throw std::invalid_argument("soft target shape mismatch");
  }
  const Matrix logp = LogSoftmaxRows(l);
  Matrix v(1, 1);
  v(0, 0) = -(targets.array() * logp.array()).sum();
  Var out = Push(std::move(v), NeedsGrad(logits));
  nodes_[out.id].backward = [this, logits, out, logp, targets] {
    if (!NeedsGrad(logits)) return;
    const float g = nodes_[out.id].grad(0, 0);
    const Eigen::VectorXf mass = targets.rowwise().sum();
    Matrix d = logp.array().exp().colwise() * mass.array();
    d -= targets;
    Grad(logits) += g * d;
  };
  return out;
}

void Graph::Backward(Var loss, float seed) {
  if (value(loss).size() != 1) {
    throw std::invalid_argument("Backward needs a scalar node");
  }
  Grad(loss)(0, 0) += seed;
  for (int i = loss.id; i >= 0; --i) {
    Node& n = nodes_[i];
    if (!n.needs_grad || n.grad.size() == 0) continue;
    if (n.backward) n.backward();
    if (n.param != nullptr) n.param->grad += n.grad;
  }
}

}  // namespace relpara::nn
