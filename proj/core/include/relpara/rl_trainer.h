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

// Supervised pre-training, rollout-based reward estimation, REINFORCE, and the
// generator/adversary alternating fine-tuning loop.

#ifndef RELPARA_RL_TRAINER_H_
#define RELPARA_RL_TRAINER_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "relpara/adversary.h"
#include "relpara/eval_metrics.h"
#include "relpara/generator.h"
#include "relpara/nli_oracle.h"
#include "relpara/nn/adam.h"
#include "relpara/scorers.h"
#include "relpara/types.h"

namespace relpara {

// AWARE conditions on the pair's relation through its control token; UNAWARE
// trains on the pairs as they are.
enum class TrainingMode { kAware, kUnaware };

std::string_view TrainingModeName(TrainingMode m);
TrainingMode ParseTrainingMode(std::string_view name);

struct PretrainConfig {
  TrainingMode mode = TrainingMode::kUnaware;
  int epochs = 20;
  int batch_size = 16;
  double learning_rate = 1e-4;
  float label_smoothing = 0.1f;
  double clip_norm = 1.0;
  std::uint64_t shuffle_seed = 11;
  DecodeConfig decode;
  // Keep the epoch with the best dev score (iBLEU when UNAWARE, harmonic mean
  // of iBLEU and R-Consistency when AWARE) instead of the last one.
  bool select_best = true;
  int dev_eval_limit = 0;  // decode at most this many dev pairs; 0 = all

  Json ToJson() const;
  static PretrainConfig FromJson(const Json& j);
};

struct PretrainEpochReport {
  int epoch = 0;
  double train_loss = 0.0;  // per token
  double dev_loss = 0.0;    // per token, no smoothing
  EvalMetrics dev;
  double selection_score = 0.0;

  Json ToJson() const;
};

struct PretrainResult {
  std::vector<PretrainEpochReport> epochs;
  int best_epoch = 0;
};

// Source ids for a pair under a training mode.
std::vector<int> SourceFor(const Generator& generator, const Tokens& x,
                           Relation relation, TrainingMode mode);
// y's ids followed by <eos>.
std::vector<int> TargetFor(const Generator& generator, const Tokens& y);

// Throws std::invalid_argument on an empty corpus, or, in AWARE mode, on a
// pair without a control relation. `oracle` is needed for AWARE selection.
PretrainResult Pretrain(
    TransformerGenerator& generator,
    std::span<const RelationAnnotatedPair> train,
    std::span<const RelationAnnotatedPair> dev, const PretrainConfig& config,
    const NliBackend* oracle,
    const std::function<void(const PretrainEpochReport&)>& on_epoch = {});

struct RolloutSet {
  std::vector<int> reference;  // beam output, ends with <eos>
  // per_step[t] holds the completions of reference[0..t]; the last entry is
  // the completed reference repeated.
  std::vector<std::vector<std::vector<int>>> per_step;
  int decode_failures = 0;
};

RolloutSet Rollout(const Generator& generator, std::span<const int> source,
                   const RewardConfig& reward, const DecodeConfig& decode,
                   Rng& rng);

// r_1 = f_1 and r_t = f_t - f_{t-1}.
std::vector<double> RewardsFromScores(std::span<const double> f);
// Q_t = sum over tau >= t of gamma^(tau - t) * r_tau.
std::vector<double> DiscountedReturns(std::span<const double> r, double gamma);

struct Trajectory {
  std::vector<int> source;
  std::vector<int> actions;
  std::vector<double> f;
  std::vector<double> r;
  std::vector<double> q;
  ScoreTuple final_scores;  // thresholded means at t = T
  int scoring_failures = 0;
  int scored_rollouts = 0;

  RewardBreakdown Breakdown() const;
};

Trajectory EstimateRewards(const RolloutSet& rollouts,
                           std::span<const int> source, const Tokens& x,
                           Relation relation, const Vocabulary& vocab,
                           const RewardConfig& reward, const ScorerSet& scorers);

struct ReinforceResult {
  double loss = 0.0;
  bool applied = false;   // an optimizer step was taken
  bool restored = false;  // non-finite loss or parameters; rolled back
};

// One step on L = -(1/B) sum_b sum_t Q_t log P(a_t | s_t). Skips the update
// when every Q is zero.
ReinforceResult ReinforceStep(SequencePolicy& policy, nn::Adam& optimizer,
                              std::span<const Trajectory> batch);

struct FinetuneConfig {
  int epochs = 3;
  int batch_size = 8;
  double learning_rate = 2e-5;
  double clip_norm = 1.0;
  RewardConfig reward;
  DecodeConfig decode;
  bool use_adversary = true;
  AdversaryConfig adversary;
  int adversary_batch_size = 32;
  std::uint64_t shuffle_seed = 11;
  std::uint64_t sampling_seed = 13;
  int dev_eval_limit = 0;
  // This many consecutive examples whose every rollout failed to score is
  // treated as a backend outage.
  int max_consecutive_failures = 8;
  std::filesystem::path run_dir;  // empty: no checkpoints or report

  Json ToJson() const;
  static FinetuneConfig FromJson(const Json& j);
};

struct FinetuneEpochReport {
  int epoch = 0;
  double mean_f = 0.0;
  double mean_r_l = 0.0;
  double mean_p_l = 0.0;
  double mean_r_s = 0.0;
  EvalMetrics dev;
  double adversary_loss = 0.0;
  int adversary_dropped = 0;
  int restored_steps = 0;
  int scoring_failures = 0;
  int decode_failures = 0;

  Json ToJson() const;
  static FinetuneEpochReport FromJson(const Json& j);
};

struct FinetuneResult {
  std::vector<FinetuneEpochReport> epochs;
  int best_epoch = 0;  // 0 is the starting model
  double best_harmonic_mean = 0.0;
};

class Finetuner {
 public:
  Finetuner(TransformerGenerator& generator, const NliBackend& oracle,
            const SimilarityBackend& similarity, FinetuneConfig config);
  ~Finetuner();

  // Runs the remaining epochs and leaves the generator at the best dev
  // checkpoint. Dev pairs are decoded with their control tokens.
  FinetuneResult Run(
      std::span<const RelationAnnotatedPair> train,
      std::span<const RelationAnnotatedPair> dev,
      const std::function<void(const FinetuneEpochReport&)>& on_epoch = {});

  // Restores generator, adversary, optimizer and loop state from
  // {run_dir}/epoch_{k}, resets best/ to the best epoch up to k and truncates
  // report.jsonl to epochs 1..k. A fresh run saves its starting model as
  // epoch_0.
  void Resume(const std::filesystem::path& epoch_dir);

  const HypothesisOnlyAdversary* adversary() const { return adversary_.get(); }
  int completed_epochs() const { return completed_epochs_; }

  // Trajectory for one example under the current parameters.
  Trajectory Collect(const RelationAnnotatedPair& pair, Rng& rng,
                     int* decode_failures);

 private:
  void Checkpoint(int epoch) const;

  TransformerGenerator& generator_;
  const NliBackend& oracle_;
  const SimilarityBackend& similarity_;
  FinetuneConfig config_;
  std::unique_ptr<HypothesisOnlyAdversary> adversary_;
  std::unique_ptr<nn::Adam> optimizer_;
  int completed_epochs_ = 0;
  int best_epoch_ = 0;
  double best_harmonic_ = -1.0;
  std::vector<nn::Matrix> best_params_;
  std::vector<FinetuneEpochReport> history_;
};

}  // namespace relpara

#endif  // RELPARA_RL_TRAINER_H_
