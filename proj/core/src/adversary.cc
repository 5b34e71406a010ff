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

#include "relpara/adversary.h"

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <utility>

#include "relpara/nn/graph.h"
#include "relpara/records.h"

namespace relpara {

std::size_t ControlIndex(Relation r) {
  switch (r) {
    case Relation::kEquivalence:
      return 0;
    case Relation::kForward:
      return 1;
    case Relation::kReverse:
      return 2;
    default:
      throw std::invalid_argument("not a control relation: " +
                                  std::string(RelationName(r)));
  }
}

Json AdversaryConfig::ToJson() const {
  return {{"dim", dim},
          {"learning_rate", learning_rate},
          {"seed", seed},
          {"one_hot_targets", one_hot_targets}};
}

AdversaryConfig AdversaryConfig::FromJson(const Json& j) {
  AdversaryConfig c;
  c.dim = j.value("dim", c.dim);
  c.learning_rate = j.value("learning_rate", c.learning_rate);
  c.seed = j.value("seed", c.seed);
  c.one_hot_targets = j.value("one_hot_targets", c.one_hot_targets);
  return c;
}

std::optional<ControlDistribution> AdversaryTarget(const OracleVerdict& verdict,
                                                   bool one_hot) {
  if (!IsControlRelation(verdict.relation)) return std::nullopt;
  ControlDistribution t{};
  if (one_hot) {
    t[ControlIndex(verdict.relation)] = 1.0;
    return t;
  }
  double sum = 0.0;
  for (Relation r : kControlRelations) {
    t[ControlIndex(r)] = verdict.Likelihood(r);
    sum += t[ControlIndex(r)];
  }
  if (sum <= 0.0) return std::nullopt;
  for (double& v : t) v /= sum;
  return t;
}

HypothesisOnlyAdversary::HypothesisOnlyAdversary(Vocabulary vocab,
                                                 AdversaryConfig config)
    : vocab_(std::move(vocab)), config_(config) {
  if (config_.dim < 1) throw std::invalid_argument("adversary dim must be >= 1");
  std::mt19937_64 rng(config_.seed);
  embed_ = &params_.Add("adv.embed", vocab_.size(), config_.dim,
                        nn::Init::kNormal, rng, 0.1f);
  w_ = &params_.Add("adv.w", config_.dim, 3, nn::Init::kXavierUniform, rng);
  b_ = &params_.Add("adv.b", 1, 3, nn::Init::kZeros, rng);
  nn::AdamConfig adam;
  adam.learning_rate = config_.learning_rate;
  adam.beta2 = 0.999;
  adam_ = std::make_unique<nn::Adam>(params_, adam);
}

HypothesisOnlyAdversary::~HypothesisOnlyAdversary() = default;

ControlDistribution HypothesisOnlyAdversary::Predict(const Tokens& y_hat) const {
  if (!trained()) return {1.0 / 3, 1.0 / 3, 1.0 / 3};
  nn::RowVector h = nn::RowVector::Zero(config_.dim);
  const std::vector<int> ids = vocab_.Encode(y_hat);
  for (int id : ids) h += embed_->value.row(id);
  if (!ids.empty()) h /= static_cast<float>(ids.size());
  nn::Matrix logits = h * w_->value;
  logits += b_->value;
  const nn::Matrix logp = nn::LogSoftmaxRows(logits);
  return {std::exp(static_cast<double>(logp(0, 0))),
          std::exp(static_cast<double>(logp(0, 1))),
          std::exp(static_cast<double>(logp(0, 2)))};
}

AdversaryStepResult HypothesisOnlyAdversary::TrainStep(
    const AdversaryBatch& batch) {
  if (batch.y_hats.empty()) throw std::invalid_argument("empty adversary batch");
  if (batch.y_hats.size() != batch.targets.size()) {
    throw std::invalid_argument("adversary batch lists differ in length");
  }
  AdversaryStepResult result;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < batch.targets.size(); ++i) {
    const auto& t = batch.targets[i];
    if (t[0] + t[1] + t[2] > 0.0) {
      kept.push_back(i);
    } else {
      ++result.dropped;
    }
  }
  result.kept = static_cast<int>(kept.size());
  if (kept.empty()) return result;

  nn::Graph g;
  nn::Var embed = g.Param(*embed_);
  std::vector<nn::Var> rows;
  nn::Matrix targets(static_cast<Eigen::Index>(kept.size()), 3);
  for (std::size_t r = 0; r < kept.size(); ++r) {
    const std::size_t i = kept[r];
    const std::vector<int> ids = vocab_.Encode(batch.y_hats[i]);
    rows.push_back(ids.empty()
                       ? g.Constant(nn::Matrix::Zero(1, config_.dim))
                       : g.MeanRows(g.GatherRows(embed, ids)));
    double sum = batch.targets[i][0] + batch.targets[i][1] + batch.targets[i][2];
    for (int c = 0; c < 3; ++c) {
      targets(static_cast<Eigen::Index>(r), c) =
          static_cast<float>(batch.targets[i][c] / sum);
    }
  }
  nn::Var w = g.Param(*w_);
  nn::Var b = g.Param(*b_);
  nn::Var total{};
  for (std::size_t r = 0; r < rows.size(); ++r) {
    nn::Var logits = g.AddRow(g.MatMul(rows[r], w), b);
    nn::Var loss = g.SoftTargetCrossEntropy(
        logits, targets.row(static_cast<Eigen::Index>(r)));
    total = r == 0 ? loss : g.Add(total, loss);
  }
  const double n = static_cast<double>(rows.size());
  result.loss = g.scalar(total) / n;
  params_.ZeroGrad();
  g.Backward(total, static_cast<float>(1.0 / n));
  adam_->Step();
  ++steps_;
  return result;
}

void HypothesisOnlyAdversary::Save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  Json meta = config_.ToJson();
  meta["steps"] = steps_;
  WriteJson(dir / "adversary.json", meta);
  vocab_.Save(dir / "adversary.vocab.txt");
  params_.Save(dir / "adversary.bin");
  std::ofstream out(dir / "adversary.adam.bin", std::ios::binary);
  adam_->Write(out);
  if (!out) throw std::runtime_error("cannot write adversary optimizer state");
}

std::unique_ptr<HypothesisOnlyAdversary> HypothesisOnlyAdversary::Load(
    const std::filesystem::path& dir) {
  const Json meta = ReadJson(dir / "adversary.json");
  auto adv = std::make_unique<HypothesisOnlyAdversary>(
      Vocabulary::Load(dir / "adversary.vocab.txt"),
      AdversaryConfig::FromJson(meta));
  adv->params_.Load(dir / "adversary.bin");
  adv->steps_ = meta.value("steps", std::int64_t{0});
  if (std::ifstream in(dir / "adversary.adam.bin", std::ios::binary); in) {
    adv->adam_->Read(in);
  }
  return adv;
}

}  // namespace relpara
