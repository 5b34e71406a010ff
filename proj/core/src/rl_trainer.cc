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

#include "relpara/rl_trainer.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "relpara/errors.h"
#include "relpara/records.h"

namespace relpara {

std::string_view TrainingModeName(TrainingMode m) {
  return m == TrainingMode::kAware ? "AWARE" : "UNAWARE";
}

TrainingMode ParseTrainingMode(std::string_view name) {
  if (name == "AWARE" || name == "aware") return TrainingMode::kAware;
  if (name == "UNAWARE" || name == "unaware") return TrainingMode::kUnaware;
  throw std::invalid_argument("unknown training mode: " + std::string(name));
}

Json PretrainConfig::ToJson() const {
  return {{"mode", TrainingModeName(mode)},
          {"epochs", epochs},
          {"batch_size", batch_size},
          {"learning_rate", learning_rate},
          {"label_smoothing", label_smoothing},
          {"clip_norm", clip_norm},
          {"shuffle_seed", shuffle_seed},
          {"decode", decode.ToJson()},
          {"select_best", select_best},
          {"dev_eval_limit", dev_eval_limit}};
}

PretrainConfig PretrainConfig::FromJson(const Json& j) {
  PretrainConfig c;
  if (j.contains("mode")) c.mode = ParseTrainingMode(j["mode"].get<std::string>());
  c.epochs = j.value("epochs", c.epochs);
  c.batch_size = j.value("batch_size", c.batch_size);
  c.learning_rate = j.value("learning_rate", c.learning_rate);
  c.label_smoothing = j.value("label_smoothing", c.label_smoothing);
  c.clip_norm = j.value("clip_norm", c.clip_norm);
  c.shuffle_seed = j.value("shuffle_seed", c.shuffle_seed);
  if (j.contains("decode")) c.decode = DecodeConfig::FromJson(j["decode"]);
  c.select_best = j.value("select_best", c.select_best);
  c.dev_eval_limit = j.value("dev_eval_limit", c.dev_eval_limit);
  return c;
}

Json PretrainEpochReport::ToJson() const {
  return {{"epoch", epoch},
          {"train_loss", train_loss},
          {"dev_loss", dev_loss},
          {"dev", dev.ToJson()},
          {"selection_score", selection_score}};
}

std::vector<int> SourceFor(const Generator& generator, const Tokens& x,
                           Relation relation, TrainingMode mode) {
  std::optional<Relation> control;
  if (mode == TrainingMode::kAware) control = relation;
  return generator.EncodeSource(x, control);
}

std::vector<int> TargetFor(const Generator& generator, const Tokens& y) {
  std::vector<int> ids = generator.vocab().Encode(y);
  ids.push_back(Vocabulary::kEos);
  return ids;
}

namespace {

std::span<const RelationAnnotatedPair> Limit(
    std::span<const RelationAnnotatedPair> pairs, int limit) {
  if (limit <= 0 || static_cast<std::size_t>(limit) >= pairs.size()) {
    return pairs;
  }
  return pairs.first(static_cast<std::size_t>(limit));
}

double DevLoss(TransformerGenerator& generator,
               std::span<const RelationAnnotatedPair> dev, TrainingMode mode) {
  double loss = 0.0;
  std::size_t tokens = 0;
  for (const auto& p : dev) {
    const auto target = TargetFor(generator, p.pair.y);
    loss += generator.TrainingLoss(SourceFor(generator, p.pair.x, p.relation, mode),
                                   target, 0.0f, false, 0.0);
    tokens += target.size();
  }
  return tokens == 0 ? 0.0 : loss / static_cast<double>(tokens);
}

}  // namespace

PretrainResult Pretrain(
    TransformerGenerator& generator,
    std::span<const RelationAnnotatedPair> train,
    std::span<const RelationAnnotatedPair> dev, const PretrainConfig& config,
    const NliBackend* oracle,
    const std::function<void(const PretrainEpochReport&)>& on_epoch) {
  if (train.empty()) throw std::invalid_argument("empty pre-training corpus");
  if (config.epochs < 0 || config.batch_size < 1) {
    throw std::invalid_argument("epochs must be >= 0 and batch_size >= 1");
  }
  const bool aware = config.mode == TrainingMode::kAware;
  if (aware) {
    for (const auto& p : train) {
      if (!IsControlRelation(p.relation)) {
        throw std::invalid_argument(
            "AWARE pre-training needs EQ/FWD/REV annotations, found " +
            std::string(RelationName(p.relation)));
      }
    }
  }
  nn::AdamConfig adam;
  adam.learning_rate = config.learning_rate;
  adam.clip_norm = config.clip_norm;
  nn::Adam optimizer(generator.parameters(), adam);

  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);
  Rng shuffle(config.shuffle_seed);

  PretrainResult result;
  double best_score = -std::numeric_limits<double>::infinity();
  std::vector<nn::Matrix> best = generator.parameters().Snapshot();
  const auto dev_eval = Limit(dev, config.dev_eval_limit);

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), shuffle);
    double loss = 0.0;
    std::size_t tokens = 0;
    for (std::size_t start = 0; start < order.size();
         start += static_cast<std::size_t>(config.batch_size)) {
      const std::size_t end =
          std::min(order.size(), start + static_cast<std::size_t>(config.batch_size));
      generator.parameters().ZeroGrad();
      const double scale = 1.0 / static_cast<double>(end - start);
      for (std::size_t i = start; i < end; ++i) {
        const auto& p = train[order[i]];
        const auto target = TargetFor(generator, p.pair.y);
        loss += generator.TrainingLoss(
            SourceFor(generator, p.pair.x, p.relation, config.mode), target,
            config.label_smoothing, true, scale);
        tokens += target.size();
      }
      optimizer.Step();
    }
    PretrainEpochReport report;
    report.epoch = epoch;
    report.train_loss = loss / static_cast<double>(std::max<std::size_t>(tokens, 1));
    if (!dev.empty()) {
      report.dev_loss = DevLoss(generator, dev, config.mode);
      report.dev = EvaluateGenerator(generator, dev_eval, aware, config.decode,
                                     aware ? oracle : nullptr);
      report.selection_score = aware ? report.dev.HarmonicMean() : report.dev.ibleu;
    }
    if (report.selection_score > best_score || !config.select_best) {
      best_score = report.selection_score;
      best = generator.parameters().Snapshot();
      result.best_epoch = epoch;
    }
    result.epochs.push_back(report);
    if (on_epoch) on_epoch(report);
  }
  if (config.epochs > 0) generator.parameters().Restore(best);
  return result;
}

RolloutSet Rollout(const Generator& generator, std::span<const int> source,
                   const RewardConfig& reward, const DecodeConfig& decode,
                   Rng& rng) {
  RolloutSet set;
  set.reference = generator.BeamSearch(source, decode);
  const std::size_t steps = set.reference.size();
  set.per_step.resize(steps);
  const std::size_t n = static_cast<std::size_t>(reward.n_rollouts);
  for (std::size_t t = 1; t <= steps; ++t) {
    auto& samples = set.per_step[t - 1];
    if (t == steps) {
      samples.assign(n, set.reference);
      continue;
    }
    const std::span<const int> prefix(set.reference.data(), t);
    try {
      for (std::size_t i = 0; i < n; ++i) {
        samples.push_back(generator.Sample(source, prefix, decode, rng));
      }
    } catch (const DecodeError&) {
      ++set.decode_failures;
      samples.assign(n, set.reference);
    }
  }
  return set;
}

std::vector<double> RewardsFromScores(std::span<const double> f) {
  std::vector<double> r(f.size());
  for (std::size_t t = 0; t < f.size(); ++t) {
    r[t] = t == 0 ? f[0] : f[t] - f[t - 1];
  }
  return r;
}

std::vector<double> DiscountedReturns(std::span<const double> r, double gamma) {
  std::vector<double> q(r.size());
  double running = 0.0;
  for (std::size_t i = r.size(); i-- > 0;) {
    running = r[i] + gamma * running;
    q[i] = running;
  }
  return q;
}

RewardBreakdown Trajectory::Breakdown() const {
  RewardBreakdown b;
  b.r_s = final_scores.r_s;
  b.r_d = final_scores.r_d;
  b.r_l = final_scores.r_l;
  b.p_l = final_scores.p_l;
  b.f = f.empty() ? 0.0 : f.back();
  b.per_step_r = r;
  b.per_step_q = q;
  return b;
}

Trajectory EstimateRewards(const RolloutSet& rollouts,
                           std::span<const int> source, const Tokens& x,
                           Relation relation, const Vocabulary& vocab,
                           const RewardConfig& reward, const ScorerSet& scorers) {
  Trajectory traj;
  traj.source.assign(source.begin(), source.end());
  traj.actions = rollouts.reference;
  for (const auto& samples : rollouts.per_step) {
    std::vector<Tokens> decoded;
    decoded.reserve(samples.size());
    for (const auto& s : samples) decoded.push_back(vocab.Decode(s));
    const CombinedScoreResult c =
        CombinedScore(x, relation, decoded, reward, scorers);
    traj.f.push_back(c.f);
    traj.final_scores = c.mean;
    traj.scoring_failures += c.failures;
    traj.scored_rollouts += static_cast<int>(decoded.size());
  }
  traj.r = RewardsFromScores(traj.f);
  traj.q = DiscountedReturns(traj.r, reward.gamma);
  return traj;
}

ReinforceResult ReinforceStep(SequencePolicy& policy, nn::Adam& optimizer,
                              std::span<const Trajectory> batch) {
  if (batch.empty()) throw std::invalid_argument("empty REINFORCE batch");
  ReinforceResult result;
  nn::ParameterSet& params = policy.parameters();
  bool any_signal = false;
  for (const Trajectory& t : batch) {
    if (t.q.size() != t.actions.size()) {
      throw std::invalid_argument("trajectory Q and actions differ in length");
    }
    for (double q : t.q) any_signal = any_signal || q != 0.0;
  }
  if (!any_signal) return result;

  const std::vector<nn::Matrix> snapshot = params.Snapshot();
  params.ZeroGrad();
  const double scale = 1.0 / static_cast<double>(batch.size());
  for (const Trajectory& t : batch) {
    result.loss -= scale * policy.WeightedLogLikelihood(t.source, t.actions, t.q,
                                                        -scale);
  }
  if (!std::isfinite(result.loss) || !std::isfinite(params.GradNorm())) {
    params.Restore(snapshot);
    params.ZeroGrad();
    result.restored = true;
    return result;
  }
  optimizer.Step();
  if (!params.AllFinite()) {
    params.Restore(snapshot);
    result.restored = true;
    return result;
  }
  result.applied = true;
  return result;
}

Json FinetuneConfig::ToJson() const {
  return {{"epochs", epochs},
          {"batch_size", batch_size},
          {"learning_rate", learning_rate},
          {"clip_norm", clip_norm},
          {"reward",
           {{"alpha", reward.alpha},
            {"beta", reward.beta},
            {"delta", reward.delta},
            {"n_rollouts", reward.n_rollouts},
            {"gamma", reward.gamma},
            {"sim_low", reward.sim_low},
            {"sim_high", reward.sim_high}}},
          {"decode", decode.ToJson()},
          {"use_adversary", use_adversary},
          {"adversary", adversary.ToJson()},
          {"adversary_batch_size", adversary_batch_size},
          {"shuffle_seed", shuffle_seed},
          {"sampling_seed", sampling_seed},
          {"dev_eval_limit", dev_eval_limit},
          {"max_consecutive_failures", max_consecutive_failures},
          {"run_dir", run_dir.string()}};
}

FinetuneConfig FinetuneConfig::FromJson(const Json& j) {
  FinetuneConfig c;
  c.epochs = j.value("epochs", c.epochs);
  c.batch_size = j.value("batch_size", c.batch_size);
  c.learning_rate = j.value("learning_rate", c.learning_rate);
  c.clip_norm = j.value("clip_norm", c.clip_norm);
  if (j.contains("reward")) {
    const Json& r = j["reward"];
    c.reward.alpha = r.value("alpha", c.reward.alpha);
    c.reward.beta = r.value("beta", c.reward.beta);
    c.reward.delta = r.value("delta", c.reward.delta);
    c.reward.n_rollouts = r.value("n_rollouts", c.reward.n_rollouts);
    c.reward.gamma = r.value("gamma", c.reward.gamma);
    c.reward.sim_low = r.value("sim_low", c.reward.sim_low);
    c.reward.sim_high = r.value("sim_high", c.reward.sim_high);
  }
  if (j.contains("decode")) c.decode = DecodeConfig::FromJson(j["decode"]);
  c.use_adversary = j.value("use_adversary", c.use_adversary);
  if (j.contains("adversary")) c.adversary = AdversaryConfig::FromJson(j["adversary"]);
  c.adversary_batch_size = j.value("adversary_batch_size", c.adversary_batch_size);
  c.shuffle_seed = j.value("shuffle_seed", c.shuffle_seed);
  c.sampling_seed = j.value("sampling_seed", c.sampling_seed);
  c.dev_eval_limit = j.value("dev_eval_limit", c.dev_eval_limit);
  c.max_consecutive_failures =
      j.value("max_consecutive_failures", c.max_consecutive_failures);
  c.run_dir = j.value("run_dir", std::string());
  return c;
}

Json FinetuneEpochReport::ToJson() const {
  return {{"epoch", epoch},
          {"mean_f", mean_f},
          {"mean_r_l", mean_r_l},
          {"mean_p_l", mean_p_l},
          {"mean_r_s", mean_r_s},
          {"dev_ibleu", dev.ibleu},
          {"dev_bleu", dev.bleu},
          {"dev_diversity", dev.diversity},
          {"dev_consistency", dev.r_consistency.value_or(0.0)},
          {"harmonic_mean", dev.HarmonicMean()},
          {"adversary_loss", adversary_loss},
          {"adversary_dropped", adversary_dropped},
          {"restored_steps", restored_steps},
          {"scoring_failures", scoring_failures},
          {"decode_failures", decode_failures}};
}

FinetuneEpochReport FinetuneEpochReport::FromJson(const Json& j) {
  FinetuneEpochReport r;
  r.epoch = j.value("epoch", 0);
  r.mean_f = j.value("mean_f", 0.0);
  r.mean_r_l = j.value("mean_r_l", 0.0);
  r.mean_p_l = j.value("mean_p_l", 0.0);
  r.mean_r_s = j.value("mean_r_s", 0.0);
  r.dev.ibleu = j.value("dev_ibleu", 0.0);
  r.dev.bleu = j.value("dev_bleu", 0.0);
  r.dev.diversity = j.value("dev_diversity", 0.0);
  r.dev.r_consistency = j.value("dev_consistency", 0.0);
  r.adversary_loss = j.value("adversary_loss", 0.0);
  r.adversary_dropped = j.value("adversary_dropped", 0);
  r.restored_steps = j.value("restored_steps", 0);
  r.scoring_failures = j.value("scoring_failures", 0);
  r.decode_failures = j.value("decode_failures", 0);
  return r;
}

Finetuner::Finetuner(TransformerGenerator& generator, const NliBackend& oracle,
                     const SimilarityBackend& similarity, FinetuneConfig config)
    : generator_(generator),
      oracle_(oracle),
      similarity_(similarity),
      config_(std::move(config)) {
  config_.reward.Validate();
  config_.decode.Validate();
  if (config_.epochs < 0 || config_.batch_size < 1) {
    throw std::invalid_argument("epochs must be >= 0 and batch_size >= 1");
  }
  if (config_.use_adversary) {
    adversary_ = std::make_unique<HypothesisOnlyAdversary>(generator_.vocab(),
                                                           config_.adversary);
  }
  nn::AdamConfig adam;
  adam.learning_rate = config_.learning_rate;
  adam.clip_norm = config_.clip_norm;
  optimizer_ = std::make_unique<nn::Adam>(generator_.parameters(), adam);
}

Finetuner::~Finetuner() = default;

Trajectory Finetuner::Collect(const RelationAnnotatedPair& pair, Rng& rng,
                              int* decode_failures) {
  const std::vector<int> source =
      generator_.EncodeSource(pair.pair.x, pair.relation);
  const RolloutSet set =
      Rollout(generator_, source, config_.reward, config_.decode, rng);
  if (decode_failures != nullptr) *decode_failures += set.decode_failures;
  const ScorerSet scorers{&oracle_, &similarity_, adversary_.get()};
  return EstimateRewards(set, source, pair.pair.x, pair.relation,
                         generator_.vocab(), config_.reward, scorers);
}

FinetuneResult Finetuner::Run(
    std::span<const RelationAnnotatedPair> train,
    std::span<const RelationAnnotatedPair> dev,
    const std::function<void(const FinetuneEpochReport&)>& on_epoch) {
  for (const auto& p : train) {
    if (!IsControlRelation(p.relation)) {
      throw std::invalid_argument("fine-tuning pairs need EQ/FWD/REV relations");
    }
  }
  const auto dev_eval = Limit(dev, config_.dev_eval_limit);
  if (best_harmonic_ < 0.0) {
    best_params_ = generator_.parameters().Snapshot();
    best_harmonic_ = dev_eval.empty()
                         ? 0.0
                         : EvaluateGenerator(generator_, dev_eval, true,
                                             config_.decode, &oracle_)
                               .HarmonicMean();
    best_epoch_ = 0;
    if (!config_.run_dir.empty()) {
      generator_.Save(config_.run_dir / "epoch_0");
      generator_.Save(config_.run_dir / "best");
    }
  }

  for (int epoch = completed_epochs_ + 1; epoch <= config_.epochs; ++epoch) {
    const std::vector<nn::Matrix> epoch_start = generator_.parameters().Snapshot();
    FinetuneEpochReport report;
    report.epoch = epoch;
    try {
      std::vector<std::size_t> order(train.size());
      std::iota(order.begin(), order.end(), 0);
      Rng shuffle(config_.shuffle_seed + static_cast<std::uint64_t>(epoch));
      std::shuffle(order.begin(), order.end(), shuffle);
      Rng sampler(config_.sampling_seed + static_cast<std::uint64_t>(epoch));

      // Generator phase; the beam references form the adversary's pool.
      AdversaryBatch pool;
      std::vector<Tokens> pool_x;
      int consecutive_failures = 0;
      std::size_t counted = 0;
      for (std::size_t start = 0; start < order.size();
           start += static_cast<std::size_t>(config_.batch_size)) {
        const std::size_t end = std::min(
            order.size(), start + static_cast<std::size_t>(config_.batch_size));
        std::vector<Trajectory> batch;
        for (std::size_t i = start; i < end; ++i) {
          const auto& pair = train[order[i]];
          Trajectory t = Collect(pair, sampler, &report.decode_failures);
          report.scoring_failures += t.scoring_failures;
          if (t.scored_rollouts > 0 && t.scoring_failures == t.scored_rollouts) {
            if (++consecutive_failures >= config_.max_consecutive_failures) {
              throw BackendError("scoring backend failed on " +
                                 std::to_string(consecutive_failures) +
                                 " consecutive examples");
            }
          } else {
            consecutive_failures = 0;
          }
          report.mean_f += t.f.back();
          report.mean_r_l += t.final_scores.r_l;
          report.mean_p_l += t.final_scores.p_l;
          report.mean_r_s += t.final_scores.r_s;
          ++counted;
          pool.y_hats.push_back(generator_.vocab().Decode(t.actions));
          pool_x.push_back(pair.pair.x);
          batch.push_back(std::move(t));
        }
        const ReinforceResult step = ReinforceStep(generator_, *optimizer_, batch);
        if (step.restored) ++report.restored_steps;
      }
      if (counted > 0) {
        const double n = static_cast<double>(counted);
        report.mean_f /= n;
        report.mean_r_l /= n;
        report.mean_p_l /= n;
        report.mean_r_s /= n;
      }

      // Adversary phase over the same pool, targets from the oracle.
      if (adversary_ != nullptr) {
        AdversaryBatch kept;
        for (std::size_t i = 0; i < pool.y_hats.size(); ++i) {
          if (pool.y_hats[i].empty()) {
            ++report.adversary_dropped;
            continue;
          }
          const auto target = AdversaryTarget(
              ComputeOracleVerdict(pool_x[i], pool.y_hats[i], oracle_),
              config_.adversary.one_hot_targets);
          if (!target.has_value()) {
            ++report.adversary_dropped;
            continue;
          }
          kept.y_hats.push_back(pool.y_hats[i]);
          kept.targets.push_back(*target);
        }
        double loss = 0.0;
        int steps = 0;
        const auto bs = static_cast<std::size_t>(std::max(1, config_.adversary_batch_size));
        for (std::size_t s = 0; s < kept.y_hats.size(); s += bs) {
          const std::size_t e = std::min(kept.y_hats.size(), s + bs);
          AdversaryBatch mini;
          mini.y_hats.assign(kept.y_hats.begin() + static_cast<long>(s),
                             kept.y_hats.begin() + static_cast<long>(e));
          mini.targets.assign(kept.targets.begin() + static_cast<long>(s),
                              kept.targets.begin() + static_cast<long>(e));
          const AdversaryStepResult r = adversary_->TrainStep(mini);
          loss += r.loss;
          report.adversary_dropped += r.dropped;
          ++steps;
        }
        report.adversary_loss = steps == 0 ? 0.0 : loss / steps;
      }

      if (!dev_eval.empty()) {
        report.dev = EvaluateGenerator(generator_, dev_eval, true,
                                       config_.decode, &oracle_);
      }
    } catch (const BackendError&) {
      generator_.parameters().Restore(epoch_start);
      throw;
    }

    if (report.dev.HarmonicMean() > best_harmonic_) {
      best_harmonic_ = report.dev.HarmonicMean();
      best_epoch_ = epoch;
      best_params_ = generator_.parameters().Snapshot();
    }
    completed_epochs_ = epoch;
    history_.push_back(report);
    Checkpoint(epoch);
    if (on_epoch) on_epoch(report);
  }

  generator_.parameters().Restore(best_params_);
  FinetuneResult result;
  result.epochs = history_;
  result.best_epoch = best_epoch_;
  result.best_harmonic_mean = best_harmonic_;
  return result;
}

void Finetuner::Checkpoint(int epoch) const {
  if (config_.run_dir.empty()) return;
  const auto dir = config_.run_dir / ("epoch_" + std::to_string(epoch));
  generator_.Save(dir);
  if (adversary_ != nullptr) adversary_->Save(dir / "adversary");
  {
    std::ofstream out(dir / "optimizer.bin", std::ios::binary);
    optimizer_->Write(out);
    if (!out) throw std::runtime_error("cannot write optimizer state");
  }
  Json history = Json::array();
  for (const auto& r : history_) history.push_back(r.ToJson());
  WriteJson(dir / "state.json", {{"epoch", epoch},
                                 {"best_epoch", best_epoch_},
                                 {"best_harmonic_mean", best_harmonic_},
                                 {"history", history}});
  if (best_epoch_ == epoch) generator_.Save(config_.run_dir / "best");
  const auto report_path = config_.run_dir / "report.jsonl";
  std::ofstream report(report_path, std::ios::app);
  report << history_.back().ToJson().dump() << '\n';
}

void Finetuner::Resume(const std::filesystem::path& epoch_dir) {
  if (!std::filesystem::exists(epoch_dir / "state.json")) {
    throw MissingInputError("no checkpoint at " + epoch_dir.string());
  }
  const Json state = ReadJson(epoch_dir / "state.json");
  generator_.parameters().Load(epoch_dir / "generator.bin");
  if (adversary_ != nullptr && std::filesystem::exists(epoch_dir / "adversary")) {
    adversary_ = HypothesisOnlyAdversary::Load(epoch_dir / "adversary");
  }
  {
    std::ifstream in(epoch_dir / "optimizer.bin", std::ios::binary);
    if (!in) throw MissingInputError("missing optimizer state in " + epoch_dir.string());
    optimizer_->Read(in);
  }
  completed_epochs_ = state.at("epoch").get<int>();
  best_epoch_ = state.value("best_epoch", 0);
  best_harmonic_ = state.value("best_harmonic_mean", 0.0);
  history_.clear();
  for (const Json& h : state.value("history", Json::array())) {
    history_.push_back(FinetuneEpochReport::FromJson(h));
  }
  // The best parameters live in the checkpoint of the best epoch; best/ may
  // already reflect epochs past the one being resumed.
  const auto run_dir = epoch_dir.parent_path();
  const auto best_dir = run_dir / ("epoch_" + std::to_string(best_epoch_));
  if (!std::filesystem::exists(best_dir / "generator.bin")) {
    throw MissingInputError("missing best checkpoint " + best_dir.string());
  }
  const std::vector<nn::Matrix> current = generator_.parameters().Snapshot();
  generator_.parameters().Load(best_dir / "generator.bin");
  best_params_ = generator_.parameters().Snapshot();
  generator_.Save(run_dir / "best");
  generator_.parameters().Restore(current);

  // Drop report lines of epochs after the resumed one.
  std::ofstream report(run_dir / "report.jsonl", std::ios::trunc);
  for (const auto& h : history_) report << h.ToJson().dump() << '\n';
  config_.run_dir = epoch_dir.parent_path();
}

}  // namespace relpara
