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

// Acceptance suite: one PASS/FAIL line per criterion. Tolerances and time
// limits are fixed here. Criteria that need the SICK distribution read it
// from $RELPARA_SICK_DIR and fail when it is absent.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "relpara/adversary.h"
#include "relpara/augmentation.h"
#include "relpara/eval_metrics.h"
#include "relpara/generator.h"
#include "relpara/nli_oracle.h"
#include "relpara/nn/adam.h"
#include "relpara/nn/graph.h"
#include "relpara/rl_trainer.h"
#include "relpara/scorers.h"
#include "relpara/sick_recast.h"
#include "relpara/synthetic_world.h"

namespace relpara {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(double v, int precision = 2) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(precision) << v;
  return s.str();
}

// ---- 1: oracle case table -------------------------------------------------

Outcome OracleCaseTable() {
  using L = NliLabel;
  using R = Relation;
  const struct {
    L fwd, bwd;
    R want;
  } kCases[] = {
      {L::kEntailment, L::kEntailment, R::kEquivalence},
      {L::kEntailment, L::kNeutral, R::kForward},
      {L::kEntailment, L::kContradiction, R::kInvalid},
      {L::kNeutral, L::kEntailment, R::kReverse},
      {L::kNeutral, L::kNeutral, R::kNeutral},
      {L::kNeutral, L::kContradiction, R::kInvalid},
      {L::kContradiction, L::kEntailment, R::kInvalid},
      {L::kContradiction, L::kNeutral, R::kInvalid},
      {L::kContradiction, L::kContradiction, R::kContradiction},
  };
  int ok = 0;
  for (const auto& c : kCases) ok += DeriveRelation(c.fwd, c.bwd) == c.want ? 1 : 0;
  return {ok == 9, std::to_string(ok) + "/9 label combinations"};
}

// ---- 2-4: SICK ------------------------------------------------------------

std::optional<fs::path> SickFile() {
  const char* env = std::getenv("RELPARA_SICK_DIR");
  if (env == nullptr || *env == '\0') return std::nullopt;
  const fs::path dir(env);
  if (fs::exists(dir / "SICK.txt")) return dir / "SICK.txt";
  if (fs::is_regular_file(dir)) return dir;
  return std::nullopt;
}

const char* kNoSick = "SICK distribution not found; set RELPARA_SICK_DIR to the directory "
                      "holding SICK.txt";

Outcome SickCounts() {
  const auto file = SickFile();
  if (!file) return {false, kNoSick};
  const RecastDataset ds = Recast(ReadSickFile(*file));
  const RecastCounts want[3] = {{1344, 684, 684, 420}, {196, 63, 63, 43}, {1386, 814, 814, 494}};
  bool ok = true;
  std::string detail;
  for (Split s : kAllSplits) {
    const RecastCounts& got = ds.split(s).counts;
    const RecastCounts& w = want[static_cast<int>(s)];
    ok = ok && got.eq == w.eq && got.fwd == w.fwd && got.rev == w.rev && got.others == w.others;
    detail += std::string(SplitName(s)) + " " + std::to_string(got.eq) + "/" +
              std::to_string(got.fwd) + "/" + std::to_string(got.rev) + "/" +
              std::to_string(got.others) + " ";
  }
  return {ok, detail};
}

struct TestSubset {
  std::vector<std::string> x, y;
  std::vector<std::vector<std::string>> refs;
};

std::optional<TestSubset> SickTestSubset() {
  const auto file = SickFile();
  if (!file) return std::nullopt;
  const RecastDataset ds = Recast(ReadSickFile(*file));
  TestSubset t;
  for (const auto& p : ds.split(Split::kTest).pairs) {
    t.x.push_back(JoinTokens(p.pair.x));
    t.y.push_back(JoinTokens(p.pair.y));
    t.refs.push_back({t.y.back()});
  }
  return t;
}

Outcome CopyInputRow() {
  const auto t = SickTestSubset();
  if (!t) return {false, kNoSick};
  const double bleu = Bleu(t->x, t->refs);
  const double ibleu = IBleu(t->x, t->refs, t->x);
  const double div = DiversityMetric(t->x, t->x);
  const bool ok = std::abs(bleu - 51.42) <= 0.5 && std::abs(ibleu - 21.14) <= 0.1 && div == 0.0;
  return {ok, "BLEU " + Fmt(bleu) + " iBLEU " + Fmt(ibleu) + " Diversity " + Fmt(div)};
}

Outcome GoldDiversity() {
  const auto t = SickTestSubset();
  if (!t) return {false, kNoSick};
  const double div = DiversityMetric(t->y, t->x);
  return {std::abs(div - 48.58) <= 0.5, "Diversity " + Fmt(div)};
}

// ---- 5: label projection --------------------------------------------------

Outcome LabelProjection() {
  using V = Variant;
  using P = ProjectedLabel;
  const struct {
    V p, h;
    P from_e, from_ne;
  } kCells[] = {
      {V::kOrig, V::kEqPara, P::kEntails, P::kNotEntails},
      {V::kOrig, V::kRevPara, P::kUnknown, P::kUnknown},
      {V::kOrig, V::kFwdPara, P::kEntails, P::kUnknown},
      {V::kEqPara, V::kOrig, P::kEntails, P::kNotEntails},
      {V::kEqPara, V::kEqPara, P::kEntails, P::kNotEntails},
      {V::kEqPara, V::kRevPara, P::kUnknown, P::kUnknown},
      {V::kEqPara, V::kFwdPara, P::kEntails, P::kUnknown},
      {V::kRevPara, V::kOrig, P::kEntails, P::kNotEntails},
      {V::kRevPara, V::kEqPara, P::kEntails, P::kNotEntails},
      {V::kRevPara, V::kRevPara, P::kUnknown, P::kUnknown},
      {V::kRevPara, V::kFwdPara, P::kEntails, P::kUnknown},
      {V::kFwdPara, V::kOrig, P::kUnknown, P::kUnknown},
      {V::kFwdPara, V::kEqPara, P::kUnknown, P::kUnknown},
      {V::kFwdPara, V::kRevPara, P::kUnknown, P::kUnknown},
      {V::kFwdPara, V::kFwdPara, P::kUnknown, P::kUnknown},
  };
  int ok = 0;
  for (const auto& c : kCells) {
    ok += ProjectLabel(BinaryLabel::kEntails, c.p, c.h) == c.from_e ? 1 : 0;
    ok += ProjectLabel(BinaryLabel::kNotEntails, c.p, c.h) == c.from_ne ? 1 : 0;
  }
  return {ok == 30, std::to_string(ok) + "/30 cells"};
}

// ---- 6: reward math -------------------------------------------------------

Outcome RewardMath() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> len(1, 40);
  const double gamma = RewardConfig{}.gamma;
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> f(static_cast<std::size_t>(len(rng)));
    for (double& v : f) v = u(rng);
    const std::vector<double> r = RewardsFromScores(f);
    const std::vector<double> q = DiscountedReturns(r, gamma);
    for (std::size_t t = 0; t < f.size(); ++t) {
      // r_1 = f_1, r_t = f_t - f_{t-1}; Q_t = sum_{tau >= t} gamma^(tau-t) r_tau.
      double brute = 0.0;
      for (std::size_t tau = t; tau < f.size(); ++tau) {
        const double r_tau = tau == 0 ? f[0] : f[tau] - f[tau - 1];
        brute += std::pow(gamma, static_cast<double>(tau - t)) * r_tau;
      }
      worst = std::max(worst, std::abs(q[t] - brute));
    }
  }
  const RewardConfig cfg;
  const ScoreTuple raw_base{0.0, 0.5, 0.9, 0.2};
  bool thresholds_ok = true;
  for (const auto& [r_s, survives] :
       std::vector<std::pair<double, bool>>{{0.29, false}, {0.30, true}, {0.98, true}, {0.99, false}}) {
    ScoreTuple raw = raw_base;
    raw.r_s = r_s;
    const ScoreTuple th = ApplyThresholds(raw, cfg);
    const bool kept = th.r_s == r_s && th.r_d == 0.5 && th.r_l == 0.9 && th.p_l == 0.2;
    const bool zeroed = th.r_s == 0.0 && th.r_d == 0.0 && th.r_l == 0.0 && th.p_l == 0.0;
    thresholds_ok = thresholds_ok && (survives ? kept : zeroed);
  }
  // alpha (r_l - p_l) + beta r_s + delta r_d, worked by hand.
  const struct {
    ScoreTuple raw;
    double f;
  } kHand[] = {
      {{0.8, 0.5, 0.9, 0.2}, 0.4 * 0.7 + 0.4 * 0.8 + 0.2 * 0.5},  // 0.70
      {{0.3, 0.5, 0.9, 0.2}, 0.4 * 0.7 + 0.4 * 0.3 + 0.2 * 0.5},  // 0.50
      {{0.6, 0.0, 0.0, 0.0}, 0.24},
      {{0.99, 1.0, 1.0, 0.0}, 0.0},
      {{0.5, 0.2, 0.1, 0.9}, 0.4 * -0.8 + 0.4 * 0.5 + 0.2 * 0.2},  // -0.08
  };
  double f_err = 0.0;
  for (const auto& h : kHand) {
    f_err = std::max(f_err, std::abs(WeightedScore(ApplyThresholds(h.raw, cfg), cfg) - h.f));
  }
  const bool ok = worst <= 1e-9 && thresholds_ok && f_err <= 1e-12;
  std::ostringstream detail;
  detail << std::scientific << std::setprecision(2) << "max |Q - brute| " << worst
         << ", thresholds " << (thresholds_ok ? "ok" : "WRONG") << ", max f error " << f_err;
  return {ok, detail.str()};
}

// ---- 7: REINFORCE sanity --------------------------------------------------

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
  double WeightedLogLikelihood(std::span<const int>, std::span<const int> actions,
                               std::span<const double> weights, double grad_scale) override {
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

Outcome ReinforceSanity() {
  const std::vector<double> reward = {0.1, 0.3, 0.9, 0.2, 0.5, 0.05};
  BanditPolicy policy(static_cast<int>(reward.size()));
  nn::Adam adam(policy.parameters(), {.learning_rate = 0.05});
  std::mt19937_64 rng(7);
  int steps = 0;
  while (steps < 2000 && policy.Probs()[2] <= 0.9) {
    const std::vector<double> p = policy.Probs();
    std::discrete_distribution<int> draw(p.begin(), p.end());
    const int a = draw(rng);
    const Trajectory batch[] = {OneStep(a, reward[static_cast<std::size_t>(a)])};
    ReinforceStep(policy, adam, batch);
    ++steps;
  }
  const double p_best = policy.Probs()[2];

  // Logits (theta, 0): d/dtheta log P(0) = 1 - sigma(theta) > 0 and
  // d/dtheta log P(1) = -sigma(theta) < 0.
  int sign_ok = 0;
  for (const double q : {0.7, -0.7}) {
    for (const int action : {0, 1}) {
      BanditPolicy one(2);
      one.logits().value(0, 0) = 0.3f;
      nn::Adam opt(one.parameters(), {.learning_rate = 0.01});
      const Trajectory batch[] = {OneStep(action, q)};
      ReinforceStep(one, opt, batch);
      const double moved = one.logits().value(0, 0) - 0.3f;
      const double analytic = (action == 0 ? 1.0 : -1.0) * q;
      sign_ok += moved * analytic > 0.0 ? 1 : 0;
    }
  }
  return {p_best > 0.9 && sign_ok == 4, "P(best) " + Fmt(p_best, 4) + " after " +
                                             std::to_string(steps) + " steps, gradient sign " +
                                             std::to_string(sign_ok) + "/4"};
}

// ---- 8-9: synthetic world -------------------------------------------------

// Desk-scale settings for the synthetic end-to-end run.
constexpr int kCorpusSize = 3000;
constexpr int kDevPerRelation = 40;
constexpr int kRlPerRelation = 150;
constexpr int kModelDim = 64;
constexpr int kPretrainEpochs = 8;
constexpr double kPretrainLr = 1e-3;
constexpr int kFinetuneEpochs = 8;
constexpr double kFinetuneLr = 1e-4;

struct SyntheticSetup {
  SyntheticWorld world{SyntheticWorldConfig{}};
  SyntheticWorldBackend oracle{world.lexicon()};
  TokenF1Similarity similarity;
  std::vector<RelationAnnotatedPair> train, dev, rl_train;
  DecodeConfig decode;
  std::unique_ptr<TransformerGenerator> generator;
  fs::path pretrained_dir;
};

SyntheticSetup& Synthetic() {
  static std::unique_ptr<SyntheticSetup> setup;
  if (setup) return *setup;
  setup = std::make_unique<SyntheticSetup>();
  SyntheticSetup& s = *setup;
  std::mt19937_64 rng(1);
  const auto corpus = s.world.ParaphraseCorpus(kCorpusSize, rng);
  // The paraphrase corpus carries no relation labels; relation control is
  // learned only during fine-tuning.
  std::vector<Tokens> sentences;
  for (const auto& p : corpus) {
    sentences.push_back(p.x);
    sentences.push_back(p.y);
    s.train.push_back({p, Relation::kInvalid, LabelSource::kOracle});
  }
  s.dev = s.world.ControlSet(kDevPerRelation, rng);
  s.rl_train = s.world.ControlSet(kRlPerRelation, rng);

  GeneratorConfig gc;
  gc.layers = 2;
  gc.d_model = kModelDim;
  gc.heads = 4;
  gc.ffn_dim = 4 * kModelDim;
  gc.max_positions = 24;
  s.generator = std::make_unique<TransformerGenerator>(Vocabulary::Build(sentences), gc);
  PretrainConfig pc;
  pc.mode = TrainingMode::kUnaware;
  pc.epochs = kPretrainEpochs;
  pc.learning_rate = kPretrainLr;
  pc.batch_size = 16;
  pc.decode.min_len = 5;
  pc.decode.max_len = 12;
  pc.dev_eval_limit = 60;
  s.decode = pc.decode;
  Pretrain(*s.generator, s.train, s.dev, pc, &s.oracle);
  s.pretrained_dir = fs::temp_directory_path() / "relpara_acceptance_pretrained";
  s.generator->Save(s.pretrained_dir);
  return s;
}

Outcome SyntheticEndToEnd() {
  SyntheticSetup& s = Synthetic();
  const double before = *EvaluateGenerator(*s.generator, s.dev, true, s.decode, &s.oracle)
                             .r_consistency;
  const auto model = TransformerGenerator::Load(s.pretrained_dir);
  FinetuneConfig fc;
  fc.epochs = kFinetuneEpochs;
  fc.learning_rate = kFinetuneLr;
  fc.decode = s.decode;
  Finetuner finetuner(*model, s.oracle, s.similarity, fc);
  const FinetuneResult result = finetuner.Run(s.rl_train, s.dev);
  std::vector<EvalRow> rows;
  const double after =
      *EvaluateGenerator(*model, s.dev, true, s.decode, &s.oracle, &rows).r_consistency;
  double sim = 0.0;
  for (const EvalRow& r : rows) {
    const Tokens y = Tokenize(r.y_hat);
    const double raw = y.empty() ? 0.0 : Similarity(Tokenize(r.x), y, s.similarity);
    sim += ApplyThresholds({raw, 0.0, 0.0, 0.0}, fc.reward).r_s;
  }
  sim /= static_cast<double>(rows.size());
  std::string per_epoch;
  for (const auto& e : result.epochs) per_epoch += " " + Fmt(e.dev.r_consistency.value_or(0.0), 1);
  const bool ok = after - before >= 15.0 && sim > fc.reward.sim_low;
  return {ok, "R-Consistency " + Fmt(before, 1) + " -> " + Fmt(after, 1) + " (gain " +
                  Fmt(after - before, 1) + ", need >= 15; best epoch " +
                  std::to_string(result.best_epoch) + "; per-epoch dev" + per_epoch +
                  "), mean thresholded similarity " + Fmt(sim, 3)};
}

Outcome RerankMonotonicity() {
  SyntheticSetup& s = Synthetic();
  const auto model = TransformerGenerator::Load(s.pretrained_dir);
  const ScorerSet scorers{&s.oracle, &s.similarity, nullptr};
  std::vector<double> consistency;
  for (const int k : {1, 5, 20}) {
    std::vector<EvalRow> rows;
    for (std::size_t i = 0; i < s.dev.size(); ++i) {
      const auto& p = s.dev[i];
      const RerankResult r = Rerank(*model, p.pair.x, p.relation, k, true, s.decode,
                                    RewardConfig{}, scorers, 1000 + i);
      EvalRow row;
      row.x = JoinTokens(p.pair.x);
      row.y_hat = JoinTokens(r.best);
      row.references = {JoinTokens(p.pair.y)};
      row.relation = p.relation;
      rows.push_back(std::move(row));
    }
    consistency.push_back(RConsistency(rows, s.oracle).percent);
  }
  const bool ok = consistency[2] >= consistency[1] && consistency[1] >= consistency[0];
  return {ok, "R-Consistency k=1 " + Fmt(consistency[0], 1) + ", k=5 " +
                  Fmt(consistency[1], 1) + ", k=20 " + Fmt(consistency[2], 1)};
}

// ---- 10: adversary hygiene ------------------------------------------------

Outcome AdversaryHygiene() {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> word(0, 49), len(3, 7), label(0, 2);
  auto sentence = [&] {
    Tokens t(static_cast<std::size_t>(len(rng)));
    for (auto& w : t) w = "w" + std::to_string(word(rng));
    return t;
  };
  // Randomized targets: nothing to learn.
  std::vector<Tokens> corpus;
  AdversaryBatch train;
  std::vector<Tokens> held;
  std::vector<int> held_labels;
  for (int i = 0; i < 600; ++i) {
    Tokens y = sentence();
    const int l = label(rng);
    corpus.push_back(y);
    if (i < 450) {
      ControlDistribution t{};
      t[static_cast<std::size_t>(l)] = 1.0;
      train.y_hats.push_back(y);
      train.targets.push_back(t);
    } else {
      held.push_back(y);
      held_labels.push_back(l);
    }
  }
  HypothesisOnlyAdversary random_adv(Vocabulary::Build(corpus));
  for (int epoch = 0; epoch < 30; ++epoch) random_adv.TrainStep(train);
  int correct = 0;
  for (std::size_t i = 0; i < held.size(); ++i) {
    const ControlDistribution p = random_adv.Predict(held[i]);
    correct += (std::max_element(p.begin(), p.end()) - p.begin()) == held_labels[i] ? 1 : 0;
  }
  const double acc = static_cast<double>(correct) / static_cast<double>(held.size());

  // Artifact corpus: each relation's outputs carry their own marker word.
  const char* kMarker[] = {"art_eq", "art_fwd", "art_rev"};
  std::vector<Tokens> art_corpus;
  AdversaryBatch art;
  for (int i = 0; i < 300; ++i) {
    const int l = i % 3;
    Tokens y = sentence();
    y.insert(y.begin() + static_cast<long>(rng() % y.size()), kMarker[l]);
    ControlDistribution t{};
    t[static_cast<std::size_t>(l)] = 1.0;
    art_corpus.push_back(y);
    art.y_hats.push_back(y);
    art.targets.push_back(t);
  }
  HypothesisOnlyAdversary art_adv(Vocabulary::Build(art_corpus));
  for (int epoch = 0; epoch < 50; ++epoch) art_adv.TrainStep(art);
  int gate_checks = 0, gate_ok = 0, learned = 0;
  for (int i = 0; i < 90; ++i) {
    const int l = i % 3;
    Tokens y = sentence();
    y.push_back(kMarker[l]);
    const ControlDistribution p = art_adv.Predict(y);
    const int argmax = static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
    learned += argmax == l ? 1 : 0;
    for (int c = 0; c < 3; ++c) {
      const double penalty = AdversaryPenalty(y, kControlRelations[static_cast<std::size_t>(c)],
                                              &art_adv);
      const bool open = penalty > 0.0;
      ++gate_checks;
      gate_ok += open == (c == argmax) && (!open || penalty == p[static_cast<std::size_t>(c)]);
    }
  }
  const bool ok = std::abs(acc - 1.0 / 3.0) <= 0.1 && gate_ok == gate_checks && learned >= 81;
  return {ok, "random-target held-out accuracy " + Fmt(acc, 3) + ", gate " +
                  std::to_string(gate_ok) + "/" + std::to_string(gate_checks) +
                  ", artifact recovered " + std::to_string(learned) + "/90"};
}

}  // namespace
}  // namespace relpara

int main() {
  using relpara::Outcome;
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;  // <= 0: no limit
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "oracle case table", 1.0, relpara::OracleCaseTable},
      {2, "recast SICK counts", 60.0, relpara::SickCounts},
      {3, "copy-input row", 120.0, relpara::CopyInputRow},
      {4, "gold-reference diversity", 120.0, relpara::GoldDiversity},
      {5, "label projection", 1.0, relpara::LabelProjection},
      {6, "reward math", 0.0, relpara::RewardMath},
      {7, "REINFORCE sanity", 300.0, relpara::ReinforceSanity},
      {8, "synthetic end-to-end", 1800.0, relpara::SyntheticEndToEnd},
      {9, "re-ranking monotonicity", 0.0, relpara::RerankMonotonicity},
      {10, "adversary hygiene", 0.0, relpara::AdversaryHygiene},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0.0 && secs > c.limit_seconds) {
      o.pass = false;
      o.detail += "; over the " + relpara::Fmt(c.limit_seconds, 0) + " s limit";
    }
    failed += o.pass ? 0 : 1;
    std::cout << "CRITERION " << c.id << " " << (o.pass ? "PASS" : "FAIL") << " " << c.name
              << " (" << relpara::Fmt(secs, 2) << " s): " << o.detail << std::endl;
  }
  std::cout << (10 - failed) << "/10 criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
