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

#ifndef RELPARA_NN_PARAMETERS_H_
#define RELPARA_NN_PARAMETERS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace relpara::nn {

using Matrix =
    Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RowVector = Eigen::Matrix<float, 1, Eigen::Dynamic, Eigen::RowMajor>;

struct Parameter {
  std::string name;
  Matrix value;
  Matrix grad;
};

enum class Init { kZeros, kOnes, kXavierUniform, kNormal };

// Owns a model's trainable tensors. Parameter addresses are stable.
class ParameterSet {
 public:
  Parameter& Add(std::string name, int rows, int cols, Init init,
                 std::mt19937_64& rng, float scale = 1.0f);

  std::vector<std::unique_ptr<Parameter>>& all() { return params_; }
  const std::vector<std::unique_ptr<Parameter>>& all() const { return params_; }
  Parameter& Get(const std::string& name);

  void ZeroGrad();
  double GradNorm() const;
  bool AllFinite() const;
  std::int64_t Count() const;

  std::vector<Matrix> Snapshot() const;
  void Restore(const std::vector<Matrix>& snapshot);

  // Binary format: "RPPS" magic, u32 version, u32 count, then per tensor
  // u32 name length, name bytes, i32 rows, i32 cols, float32 data.
  void Write(std::ostream& out) const;
  // Shapes and names must match the existing parameters.
  void Read(std::istream& in);
  void Save(const std::filesystem::path& path) const;
  void Load(const std::filesystem::path& path);

 private:
  std::vector<std::unique_ptr<Parameter>> params_;
};

}  // namespace relpara::nn

#endif  // RELPARA_NN_PARAMETERS_H_
