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

#include "relpara/nn/adam.h"

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace relpara::nn {

Adam::Adam(ParameterSet& params, AdamConfig config)
    : params_(params), config_(config) {
  for (const auto& p : params_.all()) {
    m_.push_back(Matrix::Zero(p->value.rows(), p->value.cols()));
    v_.push_back(Matrix::Zero(p->value.rows(), p->value.cols()));
  }
}

void Adam::Step() {
  ++step_;
  float clip = 1.0f;
  if (config_.clip_norm > 0.0) {
    const double norm = params_.GradNorm();
    if (norm > config_.clip_norm) {
      clip = static_cast<float>(config_.clip_norm / norm);
    }
  }
  const double bc1 = 1.0 - std::pow(config_.beta1, static_cast<double>(step_));
  const double bc2 = 1.0 - std::pow(config_.beta2, static_cast<double>(step_));
  const auto lr = static_cast<float>(config_.learning_rate * std::sqrt(bc2) / bc1);
  const auto b1 = static_cast<float>(config_.beta1);
  const auto b2 = static_cast<float>(config_.beta2);
  const auto eps = static_cast<float>(config_.epsilon);
  auto& all = params_.all();
  for (std::size_t i = 0; i < all.size(); ++i) {
    Parameter& p = *all[i];
    const Matrix g = p.grad * clip;
    m_[i] = b1 * m_[i] + (1.0f - b1) * g;
    v_[i] = b2 * v_[i] + (1.0f - b2) * g.cwiseProduct(g);
    p.value.array() -= lr * m_[i].array() / (v_[i].array().sqrt() + eps);
  }
}

void Adam::Write(std::ostream& out) const {
  out.write(reinterpret_cast<const char*>(&step_), sizeof(step_));
  for (std::size_t i = 0; i < m_.size(); ++i) {
    out.write(reinterpret_cast<const char*>(m_[i].data()),
              static_cast<std::streamsize>(m_[i].size() * sizeof(float)));
    out.write(reinterpret_cast<const char*>(v_[i].data()),
              static_cast<std::streamsize>(v_[i].size() * sizeof(float)));
  }
}

void Adam::Read(std::istream& in) {
  in.read(reinterpret_cast<char*>(&step_), sizeof(step_));
  for (std::size_t i = 0; i < m_.size(); ++i) {
    in.read(reinterpret_cast<char*>(m_[i].data()),
            static_cast<std::streamsize>(m_[i].size() * sizeof(float)));
    in.read(reinterpret_cast<char*>(v_[i].data()),
            static_cast<std::streamsize>(v_[i].size() * sizeof(float)));
  }
  if (!in) throw std::runtime_error("truncated optimizer state");
}

}  // namespace relpara::nn
