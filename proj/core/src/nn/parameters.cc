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

#include "relpara/nn/parameters.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "relpara/errors.h"

namespace relpara::nn {
namespace {

constexpr char kMagic[4] = {'R', 'P', 'P', 'S'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void WritePod(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T ReadPod(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw std::runtime_error("truncated parameter stream");
  return v;
}

}  // namespace

Parameter& ParameterSet::Add(std::string name, int rows, int cols, Init init,
                             std::mt19937_64& rng, float scale) {
  auto p = std::make_unique<Parameter>();
  p->name = std::move(name);
  p->value.resize(rows, cols);
  p->grad = Matrix::Zero(rows, cols);
  switch (init) {
    case Init::kZeros:
      p->value.setZero();
      break;
    case Init::kOnes:
      p->value.setOnes();
      break;
    case Init::kXavierUniform: {
      const float limit = scale * std::sqrt(6.0f / static_cast<float>(rows + cols));
      std::uniform_real_distribution<float> dist(-limit, limit);
      for (int i = 0; i < p->value.size(); ++i) p->value.data()[i] = dist(rng);
      break;
    }
    case Init::kNormal: {
      std::normal_distribution<float> dist(0.0f, scale);
      for (int i = 0; i < p->value.size(); ++i) p->value.data()[i] = dist(rng);
      break;
    }
  }
  params_.push_back(std::move(p));
  return *params_.back();
}

Parameter& ParameterSet::Get(const std::string& name) {
  for (auto& p : params_) {
    if (p->name == name) return *p;
  }
  throw std::out_of_range("no parameter named " + name);
}

void ParameterSet::ZeroGrad() {
  for (auto& p : params_) p->grad.setZero();
}

double ParameterSet::GradNorm() const {
  double sq = 0.0;
  for (const auto& p : params_) sq += p->grad.cast<double>().squaredNorm();
  return std::sqrt(sq);
}

bool ParameterSet::AllFinite() const {
  for (const auto& p : params_) {
    if (!p->value.allFinite()) return false;
  }
  return true;
}

std::int64_t ParameterSet::Count() const {
  std::int64_t n = 0;
  for (const auto& p : params_) n += p->value.size();
  return n;
}

std::vector<Matrix> ParameterSet::Snapshot() const {
  std::vector<Matrix> out;
  out.reserve(params_.size());
  for (const auto& p : params_) out.push_back(p->value);
  return out;
}

void ParameterSet::Restore(const std::vector<Matrix>& snapshot) {
  if (snapshot.size() != params_.size()) {
    throw std::invalid_argument("snapshot does not match parameter set");
  }
  for (std::size_t i = 0; i < params_.size(); ++i) params_[i]->value = snapshot[i];
}

void ParameterSet::Write(std::ostream& out) const {
  out.write(kMagic, sizeof(kMagic));
  WritePod(out, kVersion);
  WritePod(out, static_cast<std::uint32_t>(params_.size()));
  for (const auto& p : params_) {
    WritePod(out, static_cast<std::uint32_t>(p->name.size()));
    out.write(p->name.data(), static_cast<std::streamsize>(p->name.size()));
    WritePod(out, static_cast<std::int32_t>(p->value.rows()));
    WritePod(out, static_cast<std::int32_t>(p->value.cols()));
    out.write(reinterpret_cast<const char*>(p->value.data()),
              static_cast<std::streamsize>(p->value.size() * sizeof(float)));
  }
}

void ParameterSet::Read(std::istream& in) {
  char magic[4];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw std::runtime_error("not a parameter file");
  }
  if (ReadPod<std::uint32_t>(in) != kVersion) {
    throw std::runtime_error("unsupported parameter file version");
  }
  const auto count = ReadPod<std::uint32_t>(in);
  if (count != params_.size()) {
    throw std::runtime_error("parameter count mismatch");
  }
  for (auto& p : params_) {
    const auto len = ReadPod<std::uint32_t>(in);
    std::string name(len, '\0');
    in.read(name.data(), len);
    const auto rows = ReadPod<std::int32_t>(in);
    const auto cols = ReadPod<std::int32_t>(in);
    if (name != p->name || rows != p->value.rows() || cols != p->value.cols()) {
      throw std::runtime_error("parameter mismatch at " + p->name);
    }
    in.read(reinterpret_cast<char*>(p->value.data()),
            static_cast<std::streamsize>(p->value.size() * sizeof(float)));
    if (!in) throw std::runtime_error("truncated parameter stream");
  }
}

void ParameterSet::Save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  Write(out);
}

void ParameterSet::Load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingInputError("cannot read " + path.string());
  Read(in);
}

}  // namespace relpara::nn
