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

#include "relpara/eval_metrics.h"

#include <stdexcept>

#include "relpara/bleu.h"
#include "relpara/errors.h"

namespace relpara {

double Bleu(std::span<const std::string> candidates,
            std::span<const std::vector<std::string>> references) {
  return CorpusBleu(candidates, references);
}

double IBleu(double bleu_vs_refs, double bleu_vs_source) {
  return kIBleuRefWeight * bleu_vs_refs - kIBleuSrcWeight * bleu_vs_source;
}

namespace {

std::vector<std::vector<std::string>> AsSingleRefs(
    std::span<const std::string> sources) {
  std::vector<std::vector<std::string>> refs;
  refs.reserve(sources.size());
  for (const auto& s : sources) refs.push_back({s});
  return refs;
}

}  // namespace

double IBleu(std::span<const std::string> candidates,
             std::span<const std::vector<std::string>> references,
             std::span<const std::string> sources) {
  const auto src_refs = AsSingleRefs(sources);
  return IBleu(Bleu(candidates, references), Bleu(candidates, src_refs));
}

double DiversityMetric(std::span<const std::string> candidates,
                       std::span<const std::string> sources) {
  if (candidates.size() != sources.size()) {
    throw std::invalid_argument("diversity candidate/source count mismatch");
  }
  BleuStats total;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const Tokens refs[] = {Tokenize13a(sources[i])};
    total += ComputeStats(Tokenize13a(candidates[i]), refs);
  }
  return 100.0 * (1.0 - NoPenaltyBleuFromStats(total));
}

EvalRow EvalRow::FromJson(const Json& j) {
  EvalRow row;
  row.x = j.at("x").get<std::string>();
  row.y_hat = j.at("y_hat").get<std::string>();
  if (j.contains("references")) {
    row.references = j["references"].get<std::vector<std::string>>();
  } else if (j.contains("reference")) {
    row.references.push_back(j["reference"].get<std::string>());
  }
  if (j.contains("relation") && !j["relation"].is_null()) {
    row.relation = ParseRelation(j["relation"].get<std::string>());
  }
  return row;
}

Json EvalRow::ToJson() const {
  Json j = {{"x", x}, {"y_hat", y_hat}, {"references", references}};
  if (relation.has_value()) j["relation"] = RelationName(*relation);
  if (!metrics.empty()) j["metrics"] = metrics;
  return j;
}

ConsistencyResult RConsistency(std::span<const EvalRow> rows,
                               const NliBackend& oracle) {
  ConsistencyResult r;
  for (const EvalRow& row : rows) {
    if (!row.relation.has_value() || !IsControlRelation(*row.relation)) {
      ++r.excluded;
      continue;
    }
    ++r.counted;
    const Tokens x = Tokenize(row.x);
    const Tokens y = Tokenize(row.y_hat);
    if (x.empty() || y.empty()) continue;
    if (ComputeOracleVerdict(x, y, oracle).relation == *row.relation) {
      ++r.consistent;
    }
  }
  r.percent = r.counted == 0 ? 0.0 : 100.0 * r.consistent / r.counted;
  return r;
}

double EvalMetrics::HarmonicMean() const {
  const double c = r_consistency.value_or(0.0);
  if (ibleu <= 0.0 || c <= 0.0) return 0.0;
  return 2.0 * ibleu * c / (ibleu + c);
}

Json EvalMetrics::ToJson() const {
  Json j = {{"bleu", bleu}, {"diversity", diversity}, {"ibleu", ibleu},
            {"n", n}};
  j["r_consistency"] = r_consistency.has_value() ? Json(*r_consistency) : Json();
  if (excluded > 0) j["excluded"] = excluded;
  return j;
}

EvalMetrics Evaluate(std::span<const EvalRow> rows, const NliBackend* oracle) {
  EvalMetrics m;
  m.n = static_cast<int>(rows.size());
  if (rows.empty()) return m;
  std::vector<std::string> cands;
  std::vector<std::string> sources;
  std::vector<std::vector<std::string>> refs;
  for (const EvalRow& row : rows) {
    if (row.references.empty()) {
      throw std::invalid_argument("evaluation row without references");
    }
    cands.push_back(row.y_hat);
    sources.push_back(row.x);
    refs.push_back(row.references);
  }
  m.bleu = Bleu(cands, refs);
  const auto src_refs = AsSingleRefs(sources);
  m.ibleu = IBleu(m.bleu, Bleu(cands, src_refs));
  m.diversity = DiversityMetric(cands, sources);
  if (oracle != nullptr) {
    const ConsistencyResult c = RConsistency(rows, *oracle);
    m.excluded = c.excluded;
    if (c.counted > 0) m.r_consistency = c.percent;
  }
  return m;
}

Tokens Generate(const Generator& generator, const Tokens& x,
                std::optional<Relation> control, DecodeMode mode,
                const DecodeConfig& config, Rng* rng) {
  const std::vector<int> source = generator.EncodeSource(x, control);
  std::vector<int> actions;
  if (mode == DecodeMode::kBeam) {
    actions = generator.BeamSearch(source, config);
  } else {
    if (rng == nullptr) throw std::invalid_argument("nucleus decoding needs an rng");
    actions = generator.Sample(source, {}, config, *rng);
  }
  return generator.vocab().Decode(actions);
}

EvalMetrics EvaluateGenerator(const Generator& generator,
                              std::span<const RelationAnnotatedPair> pairs,
                              bool aware, const DecodeConfig& config,
                              const NliBackend* oracle,
                              std::vector<EvalRow>* rows_out) {
  std::vector<EvalRow> rows;
  rows.reserve(pairs.size());
  for (const RelationAnnotatedPair& p : pairs) {
    EvalRow row;
    row.x = JoinTokens(p.pair.x);
    row.references = {JoinTokens(p.pair.y)};
    if (IsControlRelation(p.relation)) row.relation = p.relation;
    std::optional<Relation> control;
    if (aware) control = p.relation;
    row.y_hat = JoinTokens(
        Generate(generator, p.pair.x, control, DecodeMode::kBeam, config));
    rows.push_back(std::move(row));
  }
  EvalMetrics m = Evaluate(rows, oracle);
  if (rows_out != nullptr) *rows_out = std::move(rows);
  return m;
}

RerankResult Rerank(const Generator& generator, const Tokens& x,
                    Relation relation, int k, bool condition_on_relation,
                    const DecodeConfig& decode, const RewardConfig& reward,
                    const ScorerSet& scorers, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("rerank needs k >= 1");
  if (!IsControlRelation(relation)) {
    throw std::invalid_argument("rerank needs a control relation");
  }
  RewardConfig single = reward;
  single.n_rollouts = 1;
  std::optional<Relation> control;
  if (condition_on_relation) control = relation;
  const std::vector<int> source = generator.EncodeSource(x, control);
  RerankResult out;
  for (int i = 0; i < k; ++i) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i)};
    Rng rng(seq);
    Tokens y;
    try {
      y = generator.vocab().Decode(generator.Sample(source, {}, decode, rng));
    } catch (const DecodeError&) {
      ++out.failures;
      continue;
    }
    const Tokens rollout[] = {y};
    const double f =
        CombinedScore(x, relation, rollout, single, scorers).f;
    out.pool_f.push_back(f);
    if (out.best_index < 0 || f > out.best_f) {
      out.best_f = f;
      out.best = std::move(y);
      out.best_index = i;
    }
  }
  if (out.best_index < 0) throw DecodeError("rerank pool is empty");
  return out;
}

}  // namespace relpara
