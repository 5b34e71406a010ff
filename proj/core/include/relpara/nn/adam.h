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

#ifndef RELPARA_NN_ADAM_H_
#define RELPARA_NN_ADAM_H_

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "relpara/nn/parameters.h"

namespace relpara::nn {

struct AdamConfig {
  double learning_rate = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.98;
  double epsilon = 1e-8;
  // Global gradient-norm clipping; <= 0 disables it.
  double clip_norm = 0.0;
};

class Adam {
 public:
  Adam(ParameterSet& params, AdamConfig config);

  // Applies one update from the accumulated gradients. Does not zero them.
  void Step();

  const AdamConfig& config() const { return config_; }
  void set_learning_rate(double lr) { config_.learning_rate = lr; }
  std::int64_t steps() const { return step_; }

  void Write(std::ostream& out) const;
  void Read(std::istream& in);

 private:
  ParameterSet& params_;
  AdamConfig config_;
  std::vector<Matrix> m_;
  std::vector<Matrix> v_;
  std::int64_t step_ = 0;
};

}  // namespace relpara::nn

#endif  // RELPARA_NN_ADAM_H_
