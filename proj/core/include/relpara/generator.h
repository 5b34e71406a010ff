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

// Paraphrase generator contract and the transformer encoder-decoder that
// implements it.
//
// A generated paraphrase is an action sequence: its tokens followed by
// <eos>. The relation is conditioned on by prepending its control token to
// the source ids.

#ifndef RELPARA_GENERATOR_H_
#define RELPARA_GENERATOR_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "relpara/nn/parameters.h"
#include "relpara/records.h"
#include "relpara/types.h"
#include "relpara/vocabulary.h"

namespace relpara {

using Rng = std::mt19937_64;

struct DecodeConfig {
  int beam_width = 5;
  double top_p = 0.8;
  double temperature = 1.0;
  int min_len = 5;  // tokens, excluding <eos>
  int max_len = 40;
  double length_penalty = 1.0;

  void Validate() const;
  Json ToJson() const;
  static DecodeConfig FromJson(const Json& j);
};

// A conditional distribution P(a_t | source, a_<t) with trainable parameters.
class SequencePolicy {
 public:
  virtual ~SequencePolicy() = default;

  // Returns sum_t weights[t] * log P(actions[t] | source, actions[<t]). When
  // grad_scale != 0, adds grad_scale times the gradient of that sum into the
  // parameters' grad buffers.
  virtual double WeightedLogLikelihood(std::span<const int> source,
                                       std::span<const int> actions,
                                       std::span<const double> weights,
                                       double grad_scale) = 0;

  virtual nn::ParameterSet& parameters() = 0;
};

class Generator : public SequencePolicy {
 public:
  virtual const Vocabulary& vocab() const = 0;

  // Best action sequence (ending in <eos>) under beam search.
  virtual std::vector<int> BeamSearch(std::span<const int> source,
                                      const DecodeConfig& config) const = 0;

  // Completes `prefix` by nucleus sampling and returns the full action
  // sequence, prefix included. A prefix that already ends in <eos> is
  // returned unchanged. Throws DecodeError when the prefix cannot be
  // completed within the length limits.
  virtual std::vector<int> Sample(std::span<const int> source,
                                  std::span<const int> prefix,
                                  const DecodeConfig& config, Rng& rng) const = 0;

  // [control token] + encoded tokens.
  std::vector<int> EncodeSource(const Tokens& x,
                                std::optional<Relation> control) const;
};

struct GeneratorConfig {
  int layers = 2;
  int d_model = 128;
  int heads = 4;
  int ffn_dim = 512;
  float dropout = 0.1f;
  int max_positions = 64;
  std::uint64_t seed = 1;

  // 6 layers, 8 heads, 512 hidden, 2048 feed-forward.
  static GeneratorConfig FullScale();

  void Validate() const;
  Json ToJson() const;
  static GeneratorConfig FromJson(const Json& j);
};

// Pre-layer-norm transformer encoder-decoder with tied input embeddings and
// sinusoidal positions. Training runs on the autodiff tape; decoding uses a
// separate cached forward pass over the same parameters.
class TransformerGenerator : public Generator {
 public:
  TransformerGenerator(Vocabulary vocab, GeneratorConfig config);
  ~TransformerGenerator() override;
  TransformerGenerator(const TransformerGenerator&) = delete;
  TransformerGenerator& operator=(const TransformerGenerator&) = delete;

  const Vocabulary& vocab() const override { return vocab_; }
  const GeneratorConfig& config() const { return config_; }
  nn::ParameterSet& parameters() override { return params_; }
  const nn::ParameterSet& parameters() const { return params_; }

  double WeightedLogLikelihood(std::span<const int> source,
                               std::span<const int> actions,
                               std::span<const double> weights,
                               double grad_scale) override;

  // Teacher-forced, label-smoothed cross-entropy summed over the actions.
  // Dropout is applied when `train` is set. Adds grad_scale * gradient.
  double TrainingLoss(std::span<const int> source, std::span<const int> actions,
                      float label_smoothing, bool train, double grad_scale);

  std::vector<int> BeamSearch(std::span<const int> source,
                              const DecodeConfig& config) const override;
  std::vector<int> Sample(std::span<const int> source,
                          std::span<const int> prefix,
                          const DecodeConfig& config, Rng& rng) const override;

  // Log-probabilities (T x V) of each step given the previous actions, from
  // the cached inference path. Reserved ids are masked as in training; the
  // length constraints of decoding are not applied.
  nn::Matrix InferenceLogProbs(std::span<const int> source,
                               std::span<const int> actions) const;

  // Writes generator.json, vocab.txt and generator.bin into `dir`.
  void Save(const std::filesystem::path& dir) const;
  static std::unique_ptr<TransformerGenerator> Load(
      const std::filesystem::path& dir);

 private:
  struct Impl;
  Vocabulary vocab_;
  GeneratorConfig config_;
  nn::ParameterSet params_;
  std::unique_ptr<Impl> impl_;
  mutable Rng dropout_rng_;
};

}  // namespace relpara

#endif  // RELPARA_GENERATOR_H_
