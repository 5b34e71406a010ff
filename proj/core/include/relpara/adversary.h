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

// Hypothesis-only relation classifier. It sees a generated paraphrase and
// nothing else; a confident correct guess means the relation leaks through
// surface artifacts.

#ifndef RELPARA_ADVERSARY_H_
#define RELPARA_ADVERSARY_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <vector>

#include "relpara/nli_oracle.h"
#include "relpara/nn/adam.h"
#include "relpara/nn/parameters.h"
#include "relpara/types.h"
#include "relpara/vocabulary.h"

namespace relpara {

// Probabilities over EQ, FWD, REV in that order.
using ControlDistribution = std::array<double, 3>;

std::size_t ControlIndex(Relation r);  // throws for non-control relations

struct AdversaryConfig {
  int dim = 64;
  double learning_rate = 1e-2;
  std::uint64_t seed = 7;
  // Train on the oracle argmax instead of its renormalized distribution.
  bool one_hot_targets = false;

  Json ToJson() const;
  static AdversaryConfig FromJson(const Json& j);
};

struct AdversaryBatch {
  std::vector<Tokens> y_hats;
  std::vector<ControlDistribution> targets;
};

struct AdversaryStepResult {
  double loss = 0.0;  // mean over kept rows
  int kept = 0;
  int dropped = 0;  // rows whose target had no mass on control relations
};

// Adversary target for an oracle verdict: likelihoods renormalized over the
// control relations, or one-hot on the argmax. Empty when the verdict's
// argmax is not a control relation.
std::optional<ControlDistribution> AdversaryTarget(const OracleVerdict& verdict,
                                                   bool one_hot = false);

class HypothesisOnlyAdversary {
 public:
  HypothesisOnlyAdversary(Vocabulary vocab, AdversaryConfig config = {});
  ~HypothesisOnlyAdversary();
  HypothesisOnlyAdversary(const HypothesisOnlyAdversary&) = delete;
  HypothesisOnlyAdversary& operator=(const HypothesisOnlyAdversary&) = delete;

  // Uniform until the first training step.
  ControlDistribution Predict(const Tokens& y_hat) const;

  // One Adam step on the mean soft cross-entropy of the kept rows. Throws
  // std::invalid_argument on an empty or ragged batch.
  AdversaryStepResult TrainStep(const AdversaryBatch& batch);

  bool trained() const { return steps_ > 0; }
  std::int64_t steps() const { return steps_; }
  const AdversaryConfig& config() const { return config_; }
  const Vocabulary& vocab() const { return vocab_; }

  // adversary.json, adversary.vocab.txt, adversary.bin, adversary.adam.bin
  void Save(const std::filesystem::path& dir) const;
  static std::unique_ptr<HypothesisOnlyAdversary> Load(
      const std::filesystem::path& dir);

 private:
  Vocabulary vocab_;
  AdversaryConfig config_;
  nn::ParameterSet params_;
  nn::Parameter* embed_ = nullptr;
  nn::Parameter* w_ = nullptr;
  nn::Parameter* b_ = nullptr;
  std::unique_ptr<nn::Adam> adam_;
  std::int64_t steps_ = 0;
};

}  // namespace relpara

#endif  // RELPARA_ADVERSARY_H_
