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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>

#include "gtest/gtest.h"
#include "relpara/errors.h"
#include "relpara/nli_oracle.h"
#include "relpara/nn/adam.h"
#include "relpara/nn/graph.h"
#include "relpara/scorers.h"

namespace relpara {
namespace {

// ---------------------------------------------------------------------------
// Reward arithmetic.

TEST(RewardsTest, FirstDifferences) {
  const std::vector<double> f = {0.2, 0.5, 0.4};
  const auto r = RewardsFromScores(f);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_NEAR(r[0], 0.2, 1e-15);
  EXPECT_NEAR(r[1], 0.3, 1e-15);
  EXPECT_NEAR(r[2], -0.1, 1e-15);
}

TEST(RewardsTest, DiscountedReturnsHandExample) {
  const std::vector<double> r = {0.2, 0.3, -0.1};
  const auto q = DiscountedReturns(r, 0.99);
  EXPECT_NEAR(q[0], 0.39899, 1e-12);
  EXPECT_NEAR(q[1], 0.201, 1e-12);
  EXPECT_NEAR(q[2], -0.1, 1e-12);
}

TEST(RewardsTest, ConstantScoreTelescopes) {
  const std::vector<double> f(6, 0.37);
  const auto q = DiscountedReturns(RewardsFromScores(f), 0.99);
  EXPECT_NEAR(q[0], 0.37, 1e-12);
  for (std::size_t t = 1; t < q.size(); ++t) EXPECT_NEAR(q[t], 0.0, 1e-12);
}

TEST(RewardsTest, SumOfRewardsEqualsFinalScore) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-0.4, 1.0);
  std::uniform_int_distribution<int> len(1, 30);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> f(static_cast<std::size_t>(len(rng)));
    for (double& v : f) v = u(rng);
    const auto r = RewardsFromScores(f);
    double sum = 0.0;
    for (double v : r) sum += v;
    EXPECT_NEAR(sum, f.back(), 1e-12);
  }
}

TEST(RewardsTest, ReturnsMatchDoubleLoop) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0), g(0.5, 0.999);
  std::uniform_int_distribution<int> len(1, 40);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> r(static_cast<std::size_t>(len(rng)));
    for (double& v : r) v = u(rng);
    const double gamma = g(rng);
    const auto q = DiscountedReturns(r, gamma);
    for (std::size_t t = 0; t < r.size(); ++t) {
      double expected = 0.0;
      for (std::size_t tau = t; tau < r.size(); ++tau) {
        expected += std::pow(gamma, static_cast<double>(tau - t)) * r[tau];
      }
      ASSERT_NEAR(q[t], expected, 1e-9);
    }
  }
}

// ---------------------------------------------------------------------------
// REINFORCE on toy policies.

// Single-step softmax policy over k actions.
class BanditPolicy : public SequencePolicy {
 public:
  explicit BanditPolicy(int k) {
    std::mt19937_64 rng(0);
    logits_ = &params_.Add("logits", 1, k, nn::Init::kZeros, rng);
  }

  std::vector<double> Probs() const {
    const nn::Matrix ls = nn::LogSoftmaxRows(logits_->value);
    std::vector<double> p(static_cast<std::size_t>(ls.cols()));
    for (int j = 0; j < ls.cols(); ++j) p[static_cast<std::size_t>(j)] = std::exp(ls(0, j));
    return p;
  }

  double WeightedLogLikelihood(std::span<const int> source,
                               std::span<const int> actions,
                               std::span<const double> weights,
                               double grad_scale) override {
    const std::vector<double> p = Probs();
    double total = 0.0;
    for (std::size_t t = 0; t < actions.size(); ++t) {
      total += weights[t] * std::log(p[static_cast<std::size_t>(actions[t])]);
      for (std::size_t j = 0; j < p.size(); ++j) {
        const double indicator = static_cast<int>(j) == actions[t] ? 1.0 : 0.0;
        logits_->grad(0, static_cast<Eigen::Index>(j)) +=
            static_cast<float>(grad_scale * weights[t] * (indicator - p[j]));
      }
    }
    return total;
  }

  nn::ParameterSet& parameters() override { return params_; }
  nn::Parameter& logits() { return *logits_; }

 private:
  nn::ParameterSet params_;
  nn::Parameter* logits_ = nullptr;
};

Trajectory OneStep(int action, double q) {
  Trajectory t;
  t.actions = {action};
  t.q = {q};
  return t;
}

TEST(ReinforceTest, BanditConvergesToBestToken) {
  const std::vector<double> reward = {0.1, 0.3, 0.9, 0.2, 0.5, 0.05};
  BanditPolicy policy(static_cast<int>(reward.size()));
  nn::Adam adam(policy.parameters(), {.learning_rate = 0.05});
  std::mt19937_64 rng(7);
  int steps = 0;
  for (; steps < 2000; ++steps) {
    const std::vector<double> p = policy.Probs();
    if (p[2] > 0.9) break;
    std::discrete_distribution<int> draw(p.begin(), p.end());
    const int a = draw(rng);
    const Trajectory batch[] = {OneStep(a, reward[static_cast<std::size_t>(a)])};
    ReinforceStep(policy, adam, batch);
  }
  EXPECT_GT(policy.Probs()[2], 0.9) << "after " << steps << " steps";
}

TEST(ReinforceTest, OneParameterGradientSign) {
  // Two actions with logits (theta, 0): d/dtheta log P(a=0) = 1 - sigma(theta)
  // > 0 and d/dtheta log P(a=1) < 0. Ascending Q log P moves theta with
  // sign(Q) for action 0 and against it for action 1.
  for (const double q : {0.7, -0.7}) {
    for (const int action : {0, 1}) {
      BanditPolicy policy(2);
      policy.logits().value(0, 0) = 0.3f;
      nn::Adam adam(policy.parameters(), {.learning_rate = 0.01});
      const float before = policy.logits().value(0, 0);
      const Trajectory batch[] = {OneStep(action, q)};
      ASSERT_TRUE(ReinforceStep(policy, adam, batch).applied);
      const double analytic_sign = (action == 0 ? 1.0 : -1.0) * (q > 0 ? 1 : -1);
      const double moved = policy.logits().value(0, 0) - before;
      EXPECT_GT(moved * analytic_sign, 0.0) << "q=" << q << " action=" << action;
    }
  }
}

TEST(ReinforceTest, LossIsNegativeWeightedLogLikelihood) {
  BanditPolicy policy(4);
  nn::Adam adam(policy.parameters(), {.learning_rate = 0.01});
  const Trajectory batch[] = {OneStep(1, 0.5), OneStep(3, -0.2)};
  const ReinforceResult r = ReinforceStep(policy, adam, batch);
  EXPECT_NEAR(r.loss, -0.5 * (0.5 * std::log(0.25) - 0.2 * std::log(0.25)), 1e-6);
}

TEST(ReinforceTest, AllZeroReturnsLeaveParametersUnchanged) {
  BanditPolicy policy(3);
  policy.logits().value << 0.1f, -0.2f, 0.3f;
  nn::Adam adam(policy.parameters(), {.learning_rate = 0.1});
  const nn::Matrix before = policy.logits().value;
  const Trajectory batch[] = {OneStep(0, 0.0), OneStep(2, 0.0)};
  const ReinforceResult r = ReinforceStep(policy, adam, batch);
  EXPECT_FALSE(r.applied);
  EXPECT_EQ(policy.logits().value, before);
  EXPECT_EQ(adam.steps(), 0);
}

class NanPolicy : public BanditPolicy {
 public:
  NanPolicy() : BanditPolicy(2) {}
  double WeightedLogLikelihood(std::span<const int> s, std::span<const int> a,
                               std::span<const double> w, double g) override {
    BanditPolicy::WeightedLogLikelihood(s, a, w, g);
    logits().grad(0, 0) = std::nanf("");
    return std::nan("");
  }
};

TEST(ReinforceTest, NonFiniteLossRestoresParameters) {
  NanPolicy policy;
  nn::Adam adam(policy.parameters(), {.learning_rate = 0.1});
  const nn::Matrix before = policy.logits().value;
  const Trajectory batch[] = {OneStep(0, 1.0)};
  const ReinforceResult r = ReinforceStep(policy, adam, batch);
  EXPECT_TRUE(r.restored);
  EXPECT_FALSE(r.applied);
  EXPECT_EQ(policy.logits().value, before);
}

TEST(ReinforceTest, MismatchedTrajectoryIsRejected) {
  BanditPolicy policy(2);
  nn::Adam adam(policy.parameters(), {});
  Trajectory t = OneStep(0, 1.0);
  t.q.push_back(0.5);
  const Trajectory batch[] = {t};
  EXPECT_THROW(ReinforceStep(policy, adam, batch), std::invalid_argument);
  EXPECT_THROW(ReinforceStep(policy, adam, {}), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Transformer-backed pieces.

Vocabulary WordVocab() {
  const std::vector<Tokens> corpus = {
      Tokenize("a b c d e f g h eqq fww rvv")};
  return Vocabulary::Build(corpus);
}

GeneratorConfig Tiny() {
  GeneratorConfig c;
  c.layers = 1;
  c.d_model = 16;
  c.heads = 2;
  c.ffn_dim = 32;
  c.dropout = 0.0f;
  c.max_positions = 24;
  c.seed = 5;
  return c;
}

DecodeConfig ShortDecode() {
  DecodeConfig d;
  d.min_len = 2;
  d.max_len = 8;
  d.beam_width = 3;
  return d;
}

TEST(ReinforceTest, PositiveReturnRaisesTokenProbability) {
  TransformerGenerator gen(WordVocab(), Tiny());
  const auto source = gen.EncodeSource(Tokenize("a b c"), Relation::kEquivalence);
  Trajectory t;
  t.source = source;
  t.actions = {gen.vocab().Id("d"), gen.vocab().Id("e"), Vocabulary::kEos};
  t.q = {1.0, 1.0, 1.0};
  const std::vector<double> ones(3, 1.0);
  const double before = gen.WeightedLogLikelihood(source, t.actions, ones, 0.0);
  nn::Adam adam(gen.parameters(), {.learning_rate = 1e-3});
  const Trajectory batch[] = {t};
  ASSERT_TRUE(ReinforceStep(gen, adam, batch).applied);
  EXPECT_GT(gen.WeightedLogLikelihood(source, t.actions, ones, 0.0), before);
}

TEST(RolloutTest, StructureAndPrefixes) {
  TransformerGenerator gen(WordVocab(), Tiny());
  const auto source = gen.EncodeSource(Tokenize("a b c d"), Relation::kForward);
  RewardConfig reward;
  reward.n_rollouts = 3;
  const DecodeConfig decode = ShortDecode();
  Rng rng(1);
  const RolloutSet set = Rollout(gen, source, reward, decode, rng);
  const std::size_t T = set.reference.size();
  ASSERT_GE(T, 3u);
  EXPECT_EQ(set.reference.back(), Vocabulary::kEos);
  ASSERT_EQ(set.per_step.size(), T);
  for (std::size_t t = 1; t <= T; ++t) {
    ASSERT_EQ(set.per_step[t - 1].size(), 3u);
    for (const auto& s : set.per_step[t - 1]) {
      ASSERT_GE(s.size(), t);
      EXPECT_TRUE(std::equal(set.reference.begin(), set.reference.begin() + t,
                             s.begin()));
      EXPECT_EQ(s.back(), Vocabulary::kEos);
      EXPECT_GE(s.size() - 1, static_cast<std::size_t>(decode.min_len));
      EXPECT_LE(s.size() - 1, static_cast<std::size_t>(decode.max_len));
    }
  }
  for (const auto& s : set.per_step.back()) EXPECT_EQ(s, set.reference);
}

// Always produces the same sequence: rollouts cannot differ from the beam.
class FixedGenerator : public Generator {
 public:
  explicit FixedGenerator(std::vector<int> output)
      : vocab_(WordVocab()), output_(std::move(output)) {}
  const Vocabulary& vocab() const override { return vocab_; }
  std::vector<int> BeamSearch(std::span<const int>,
                              const DecodeConfig&) const override {
    return output_;
  }
  std::vector<int> Sample(std::span<const int>, std::span<const int> prefix,
                          const DecodeConfig&, Rng&) const override {
    if (!std::equal(prefix.begin(), prefix.end(), output_.begin())) {
      throw DecodeError("prefix is off the fixed path");
    }
    return output_;
  }
  double WeightedLogLikelihood(std::span<const int>, std::span<const int>,
                               std::span<const double>, double) override {
    return 0.0;
  }
  nn::ParameterSet& parameters() override { return params_; }

 private:
  Vocabulary vocab_;
  std::vector<int> output_;
  nn::ParameterSet params_;
};

TEST(RolloutTest, DeterministicModelRollsOutItsReference) {
  const Vocabulary v = WordVocab();
  const FixedGenerator gen({v.Id("a"), v.Id("b"), v.Id("d"), Vocabulary::kEos});
  Rng rng(3);
  const RolloutSet set = Rollout(gen, {}, RewardConfig{}, ShortDecode(), rng);
  EXPECT_EQ(set.decode_failures, 0);
  for (const auto& step : set.per_step) {
    for (const auto& s : step) EXPECT_EQ(s, set.reference);
  }
}

TEST(EstimateRewardsTest, ScoresEveryStepAndDifferences) {
  const Vocabulary v = WordVocab();
  const SyntheticWorldBackend oracle;
  const TokenF1Similarity sim;
  RewardConfig reward;
  reward.n_rollouts = 1;
  const Tokens x = Tokenize("a b c d");
  // Step 1 completes to a copy (zeroed); step 2 to a dropped word (FWD).
  RolloutSet set;
  set.reference = {v.Id("a"), v.Id("b"), v.Id("d"), Vocabulary::kEos};
  set.per_step = {{{v.Id("a"), v.Id("b"), v.Id("c"), v.Id("d"), Vocabulary::kEos}},
                  {set.reference},
                  {set.reference},
                  {set.reference}};
  const Trajectory t = EstimateRewards(set, {}, x, Relation::kForward, v, reward,
                                       {&oracle, &sim, nullptr});
  ASSERT_EQ(t.f.size(), 4u);
  EXPECT_DOUBLE_EQ(t.f[0], 0.0);
  // y = "a b d": F1 = 2 * 1 * 0.75 / 1.75; consistency 1; diversity from
  // unigrams 3/3, bigrams 1/2, trigrams 0/1 -> 1/2, no 4-grams.
  const double r_s = 2.0 * 0.75 / 1.75;
  const double r_d = 1.0 - std::pow(1.0 * 0.5 * 0.5 * 1.0, 0.25);
  const double f = 0.4 * 1.0 + 0.4 * r_s + 0.2 * r_d;
  EXPECT_NEAR(t.f[1], f, 1e-12);
  EXPECT_NEAR(t.r[1], f, 1e-12);
  EXPECT_NEAR(t.r[2], 0.0, 1e-12);
  EXPECT_NEAR(t.q[0], 0.99 * f, 1e-12);
  EXPECT_NEAR(t.final_scores.r_l, 1.0, 1e-12);
  EXPECT_EQ(t.actions, set.reference);
  EXPECT_NEAR(t.Breakdown().f, f, 1e-12);
}

// ---------------------------------------------------------------------------
// Pre-training.

std::vector<RelationAnnotatedPair> SuffixTask(int n, std::mt19937_64& rng) {
  // The relation fully determines a suffix token appended to the copy.
  static const Tokens kWords = Tokenize("a b c d e f g h");
  static const char* kSuffix[] = {"eqq", "fww", "rvv"};
  std::uniform_int_distribution<std::size_t> pick(0, kWords.size() - 1);
  std::uniform_int_distribution<int> len(2, 4);
  std::vector<RelationAnnotatedPair> out;
  for (int i = 0; i < n; ++i) {
    Tokens x(static_cast<std::size_t>(len(rng)));
    for (auto& w : x) w = kWords[pick(rng)];
    const Relation r = kControlRelations[static_cast<std::size_t>(i % 3)];
    Tokens y = x;
    y.push_back(kSuffix[i % 3]);
    out.push_back({{x, y}, r, LabelSource::kGold});
  }
  return out;
}

TEST(PretrainTest, InputValidation) {
  TransformerGenerator gen(WordVocab(), Tiny());
  PretrainConfig c;
  c.epochs = 1;
  EXPECT_THROW(Pretrain(gen, {}, {}, c, nullptr), std::invalid_argument);
  std::vector<RelationAnnotatedPair> bad = {
      {SentencePair::FromText("a b", "a"), Relation::kNeutral, LabelSource::kGold}};
  c.mode = TrainingMode::kAware;
  EXPECT_THROW(Pretrain(gen, bad, {}, c, nullptr), std::invalid_argument);
}

TEST(PretrainTest, AwareSuffixTaskFollowsControlToken) {
  std::mt19937_64 rng(4);
  const auto train = SuffixTask(300, rng);
  const auto dev = SuffixTask(30, rng);
  TransformerGenerator gen(WordVocab(), Tiny());
  PretrainConfig c;
  c.mode = TrainingMode::kAware;
  c.epochs = 25;
  c.learning_rate = 3e-3;
  c.label_smoothing = 0.0f;
  c.decode = ShortDecode();
  c.decode.min_len = 1;
  c.select_best = false;
  std::vector<double> dev_loss;
  Pretrain(gen, train, dev, c, nullptr,
           [&](const PretrainEpochReport& r) { dev_loss.push_back(r.dev_loss); });
  ASSERT_EQ(dev_loss.size(), 25u);
  EXPECT_LT(dev_loss.back(), dev_loss.front());

  const auto held_out = SuffixTask(60, rng);
  int hits = 0;
  int control_changes_output = 0;
  for (const auto& p : held_out) {
    const auto out = gen.vocab().Decode(
        gen.BeamSearch(gen.EncodeSource(p.pair.x, p.relation), c.decode));
    hits += !out.empty() && out.back() == p.pair.y.back() ? 1 : 0;
    const Relation other = p.relation == Relation::kEquivalence
                               ? Relation::kForward
                               : Relation::kEquivalence;
    const auto alt = gen.BeamSearch(gen.EncodeSource(p.pair.x, other), c.decode);
    control_changes_output +=
        alt != gen.BeamSearch(gen.EncodeSource(p.pair.x, p.relation), c.decode);
  }
  EXPECT_GT(hits / 60.0, 0.9);
  EXPECT_GT(control_changes_output / 60.0, 0.9);
}

// ---------------------------------------------------------------------------
// Fine-tuning loop.

class FinetuneTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::mt19937_64 rng(9);
    pairs_ = SuffixTask(12, rng);
    dev_ = SuffixTask(6, rng);
    run_dir_ = std::filesystem::temp_directory_path() /
               ("relpara_finetune_" +
                std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::remove_all(run_dir_);
  }
  void TearDown() override { std::filesystem::remove_all(run_dir_); }

  FinetuneConfig Config(int epochs) const {
    FinetuneConfig c;
    c.epochs = epochs;
    c.batch_size = 4;
    c.learning_rate = 1e-3;
    c.decode = ShortDecode();
    c.adversary_batch_size = 4;
    return c;
  }

  static std::string Bytes(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }

  std::vector<RelationAnnotatedPair> pairs_;
  std::vector<RelationAnnotatedPair> dev_;
  std::filesystem::path run_dir_;
  SyntheticWorldBackend oracle_;
  TokenF1Similarity sim_;
};

TEST_F(FinetuneTest, ZeroEpochsLeaveModelUnchanged) {
  TransformerGenerator gen(WordVocab(), Tiny());
  const auto before = gen.parameters().Snapshot();
  Finetuner ft(gen, oracle_, sim_, Config(0));
  const FinetuneResult r = ft.Run(pairs_, dev_);
  EXPECT_TRUE(r.epochs.empty());
  EXPECT_EQ(r.best_epoch, 0);
  const auto after = gen.parameters().Snapshot();
  for (std::size_t i = 0; i < before.size(); ++i) EXPECT_EQ(before[i], after[i]);
}

TEST_F(FinetuneTest, AdversaryAblationKeepsPenaltyZero) {
  TransformerGenerator gen(WordVocab(), Tiny());
  FinetuneConfig c = Config(2);
  c.use_adversary = false;
  Finetuner ft(gen, oracle_, sim_, c);
  const FinetuneResult r = ft.Run(pairs_, dev_);
  EXPECT_EQ(ft.adversary(), nullptr);
  ASSERT_EQ(r.epochs.size(), 2u);
  for (const auto& e : r.epochs) {
    EXPECT_EQ(e.mean_p_l, 0.0);
    EXPECT_EQ(e.adversary_loss, 0.0);
  }
}

TEST_F(FinetuneTest, NonControlPairsAreRejected) {
  TransformerGenerator gen(WordVocab(), Tiny());
  auto bad = pairs_;
  bad[0].relation = Relation::kInvalid;
  Finetuner ft(gen, oracle_, sim_, Config(1));
  EXPECT_THROW(ft.Run(bad, dev_), std::invalid_argument);
}

TEST_F(FinetuneTest, CheckpointsAndResumeMatchUninterruptedRun) {
  const auto full_dir = run_dir_ / "full";
  const auto split_dir = run_dir_ / "split";
  {
    TransformerGenerator gen(WordVocab(), Tiny());
    FinetuneConfig c = Config(2);
    c.run_dir = full_dir;
    Finetuner ft(gen, oracle_, sim_, c);
    ft.Run(pairs_, dev_);
  }
  {
    TransformerGenerator gen(WordVocab(), Tiny());
    FinetuneConfig c = Config(1);
    c.run_dir = split_dir;
    Finetuner ft(gen, oracle_, sim_, c);
    ft.Run(pairs_, dev_);
  }
  {
    TransformerGenerator gen(WordVocab(), Tiny());
    Finetuner ft(gen, oracle_, sim_, Config(2));
    ft.Resume(split_dir / "epoch_1");
    EXPECT_EQ(ft.completed_epochs(), 1);
    const FinetuneResult r = ft.Run(pairs_, dev_);
    EXPECT_EQ(r.epochs.size(), 2u);
  }
  for (const char* f : {"generator.bin", "optimizer.bin", "state.json",
                        "generator.json", "vocab.txt", "adversary/adversary.bin"}) {
    ASSERT_TRUE(std::filesystem::exists(full_dir / "epoch_2" / f)) << f;
  }
  EXPECT_EQ(Bytes(full_dir / "epoch_2" / "generator.bin"),
            Bytes(split_dir / "epoch_2" / "generator.bin"));
  EXPECT_EQ(Bytes(full_dir / "epoch_2" / "adversary" / "adversary.bin"),
            Bytes(split_dir / "epoch_2" / "adversary" / "adversary.bin"));
  EXPECT_TRUE(std::filesystem::exists(full_dir / "best" / "generator.bin"));

  std::ifstream report(full_dir / "report.jsonl");
  int lines = 0;
  for (std::string line; std::getline(report, line);) {
    const Json j = Json::parse(line);
    for (const char* k : {"epoch", "mean_f", "mean_r_l", "mean_p_l", "dev_ibleu",
                          "dev_consistency", "harmonic_mean"}) {
      EXPECT_TRUE(j.contains(k)) << k;
    }
    ++lines;
  }
  EXPECT_EQ(lines, 2);
}

TEST_F(FinetuneTest, MissingCheckpointIsReported) {
  TransformerGenerator gen(WordVocab(), Tiny());
  Finetuner ft(gen, oracle_, sim_, Config(1));
  EXPECT_THROW(ft.Resume(run_dir_ / "epoch_9"), MissingInputError);
}

class DownSimilarity : public SimilarityBackend {
 public:
  double Score(const Tokens&, const Tokens&) const override {
    throw BackendError("connection refused");
  }
  std::string Name() const override { return "down"; }
};

TEST_F(FinetuneTest, BackendOutageAbortsEpochAndRestores) {
  TransformerGenerator gen(WordVocab(), Tiny());
  const auto before = gen.parameters().Snapshot();
  const DownSimilarity down;
  FinetuneConfig c = Config(1);
  c.max_consecutive_failures = 3;
  Finetuner ft(gen, oracle_, down, c);
  EXPECT_THROW(ft.Run(pairs_, {}), BackendError);
  EXPECT_EQ(ft.completed_epochs(), 0);
  const auto after = gen.parameters().Snapshot();
  for (std::size_t i = 0; i < before.size(); ++i) EXPECT_EQ(before[i], after[i]);
}

TEST(ConfigJsonTest, RoundTrips) {
  FinetuneConfig f;
  f.epochs = 7;
  f.reward.gamma = 0.9;
  f.decode.top_p = 0.5;
  f.use_adversary = false;
  const FinetuneConfig g = FinetuneConfig::FromJson(f.ToJson());
  EXPECT_EQ(g.epochs, 7);
  EXPECT_DOUBLE_EQ(g.reward.gamma, 0.9);
  EXPECT_DOUBLE_EQ(g.decode.top_p, 0.5);
  EXPECT_FALSE(g.use_adversary);

  PretrainConfig p;
  p.mode = TrainingMode::kAware;
  p.label_smoothing = 0.2f;
  const PretrainConfig q = PretrainConfig::FromJson(p.ToJson());
  EXPECT_EQ(q.mode, TrainingMode::kAware);
  EXPECT_FLOAT_EQ(q.label_smoothing, 0.2f);
  EXPECT_EQ(ParseTrainingMode(TrainingModeName(TrainingMode::kUnaware)),
            TrainingMode::kUnaware);
}

}  // namespace
}  // namespace relpara
