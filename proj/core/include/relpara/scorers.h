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

// Paraphrase evaluator: similarity, diversity, relation consistency and the
// adversary penalty, their thresholding, and the combined rollout score.

#ifndef RELPARA_SCORERS_H_
#define RELPARA_SCORERS_H_

#include <memory>
#include <span>
#include <string>

#include "relpara/adversary.h"
#include "relpara/nli_oracle.h"
#include "relpara/types.h"

namespace relpara {

class SimilarityBackend {
 public:
  virtual ~SimilarityBackend() = default;
  // Score in [0, 1]; higher is more similar.
  virtual double Score(const Tokens& x, const Tokens& y) const = 0;
  virtual std::string Name() const = 0;
};

// Multiset F1 over content tokens (special and control tokens ignored).
// Deterministic and symmetric; two empty inputs score 1.
class TokenF1Similarity : public SimilarityBackend {
 public:
  double Score(const Tokens& x, const Tokens& y) const override;
  std::string Name() const override { return "token_f1"; }
};

// POSTs {"x": ..., "y": ...} and expects {"score": s}.
class HttpSimilarityBackend : public SimilarityBackend {
 public:
  explicit HttpSimilarityBackend(std::string endpoint,
                                 double timeout_seconds = 30.0);
  double Score(const Tokens& x, const Tokens& y) const override;
  std::string Name() const override { return "http:" + endpoint_; }

  static constexpr const char* kEndpointEnv = "RELPARA_SIM_ENDPOINT";

 private:
  std::string endpoint_;
  std::string host_;
  std::string path_;
  double timeout_seconds_;
};

// "token_f1" or an http:// endpoint; the environment variable wins.
std::unique_ptr<SimilarityBackend> MakeSimilarityBackend(const std::string& spec);

// Raw r_s. Throws BackendError if the backend answers outside [0, 1].
double Similarity(const Tokens& x, const Tokens& y_hat,
                  const SimilarityBackend& backend);

// 1 - BLEU(y_hat, x) with the brevity penalty fixed to 1.
double Diversity(const Tokens& x, const Tokens& y_hat);

// Oracle likelihood of `relation` for (x, y_hat).
double Consistency(const Tokens& x, const Tokens& y_hat, Relation relation,
                   const NliBackend& oracle);

// A(relation | y_hat) when the adversary's argmax equals `relation`, else 0.
// A null or untrained adversary gives 0.
double AdversaryPenalty(const Tokens& y_hat, Relation relation,
                        const HypothesisOnlyAdversary* adversary);

struct ScoreTuple {
  double r_s = 0.0;
  double r_d = 0.0;
  double r_l = 0.0;
  double p_l = 0.0;
};

// r_s survives only inside [sim_low, sim_high]; the other three survive only
// when the thresholded r_s is positive.
ScoreTuple ApplyThresholds(const ScoreTuple& raw, const RewardConfig& config);

// alpha * (r_l - p_l) + beta * r_s + delta * r_d
double WeightedScore(const ScoreTuple& thresholded, const RewardConfig& config);

struct ScorerSet {
  const NliBackend* oracle = nullptr;
  const SimilarityBackend* similarity = nullptr;
  const HypothesisOnlyAdversary* adversary = nullptr;  // optional
};

ScoreTuple ScoreRaw(const Tokens& x, const Tokens& y_hat, Relation relation,
                    const ScorerSet& scorers);

// Thresholded scores. Skips the oracle and adversary when similarity is out
// of band, since their values would be zeroed anyway.
ScoreTuple ScoreThresholded(const Tokens& x, const Tokens& y_hat,
                            Relation relation, const RewardConfig& config,
                            const ScorerSet& scorers);

struct CombinedScoreResult {
  double f = 0.0;
  ScoreTuple mean;  // mean thresholded scores over rollouts
  int failures = 0;  // rollouts whose scoring threw; they contribute 0
};

// Mean weighted score over exactly config.n_rollouts rollouts.
CombinedScoreResult CombinedScore(const Tokens& x, Relation relation,
                                  std::span<const Tokens> rollouts,
                                  const RewardConfig& config,
                                  const ScorerSet& scorers);

}  // namespace relpara

#endif  // RELPARA_SCORERS_H_
