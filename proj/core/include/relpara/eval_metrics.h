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

// Automatic paraphrase metrics and the sample-and-rerank baseline.

#ifndef RELPARA_EVAL_METRICS_H_
#define RELPARA_EVAL_METRICS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "relpara/generator.h"
#include "relpara/nli_oracle.h"
#include "relpara/records.h"
#include "relpara/scorers.h"
#include "relpara/types.h"

namespace relpara {

inline constexpr double kIBleuRefWeight = 0.8;
inline constexpr double kIBleuSrcWeight = 0.2;

// Corpus BLEU on a 0-100 scale with 13a tokenization.
double Bleu(std::span<const std::string> candidates,
            std::span<const std::vector<std::string>> references);

double IBleu(double bleu_vs_refs, double bleu_vs_source);
double IBleu(std::span<const std::string> candidates,
             std::span<const std::vector<std::string>> references,
             std::span<const std::string> sources);

// 100 * (1 - BLEU(candidates, sources)) with the brevity penalty fixed to 1,
// aggregated over the corpus.
double DiversityMetric(std::span<const std::string> candidates,
                       std::span<const std::string> sources);

struct EvalRow {
  std::string x;
  std::string y_hat;
  std::vector<std::string> references;
  std::optional<Relation> relation;
  std::map<std::string, double> metrics;

  // {"x", "y_hat", "references": [...], "relation"?}; a lone "reference"
  // string is accepted too.
  static EvalRow FromJson(const Json& j);
  Json ToJson() const;
};

struct ConsistencyResult {
  double percent = 0.0;
  int counted = 0;
  int consistent = 0;
  int excluded = 0;  // rows without a control relation
};

// Percentage of rows whose oracle relation for (x, y_hat) equals the row's
// relation. An empty y_hat counts as inconsistent.
ConsistencyResult RConsistency(std::span<const EvalRow> rows,
                               const NliBackend& oracle);

struct EvalMetrics {
  double bleu = 0.0;
  double diversity = 0.0;
  double ibleu = 0.0;
  std::optional<double> r_consistency;
  int n = 0;
  int excluded = 0;

  // Harmonic mean of iBLEU and R-Consistency; 0 if either is <= 0.
  double HarmonicMean() const;
  Json ToJson() const;
};

// Rows need at least one reference for BLEU. R-Consistency is computed when
// an oracle is given.
EvalMetrics Evaluate(std::span<const EvalRow> rows, const NliBackend* oracle);

// Decodes one paraphrase. Nucleus decoding needs an rng.
Tokens Generate(const Generator& generator, const Tokens& x,
                std::optional<Relation> control, DecodeMode mode,
                const DecodeConfig& config, Rng* rng = nullptr);

// Beam-decodes every pair (conditioned on its relation when `aware`) and
// scores the outputs against the pair's y as the reference.
EvalMetrics EvaluateGenerator(const Generator& generator,
                              std::span<const RelationAnnotatedPair> pairs,
                              bool aware, const DecodeConfig& config,
                              const NliBackend* oracle,
                              std::vector<EvalRow>* rows_out = nullptr);

struct RerankResult {
  Tokens best;
  double best_f = 0.0;
  int best_index = -1;
  std::vector<double> pool_f;  // per sample; failed samples are absent
  int failures = 0;
};

// Samples k outputs by nucleus sampling and returns the one with the highest
// single-sequence combined score; the earliest sample wins ties. Sample i
// draws from an rng seeded with seed_seq{low 32 bits of seed, high 32 bits,
// i}, so pools for growing k are nested.
RerankResult Rerank(const Generator& generator, const Tokens& x,
                    Relation relation, int k, bool condition_on_relation,
                    const DecodeConfig& decode, const RewardConfig& reward,
                    const ScorerSet& scorers, std::uint64_t seed);

}  // namespace relpara

#endif  // RELPARA_EVAL_METRICS_H_
