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

// Entailment relation oracle.
//
// A three-way NLI classifier is run in both directions over a pair (X, Y) and
// the two uni-directional labels are mapped onto an entailment relation:
//
//   forward  backward   relation
//   E        E          EQ
//   E        N          FWD
//   N        E          REV
//   C        C          CONTRA
//   N        N          NEUTRAL
//   otherwise           INVALID
//
// Soft likelihoods over the six relations are formed by treating the two
// directional distributions as independent.

#ifndef RELPARA_NLI_ORACLE_H_
#define RELPARA_NLI_ORACLE_H_

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "relpara/records.h"
#include "relpara/types.h"

namespace relpara {

struct NliDistribution {
  double entailment = 0.0;
  double neutral = 0.0;
  double contradiction = 0.0;

  double operator[](NliLabel l) const;
  // Ties resolve in E, N, C order.
  NliLabel Argmax() const;
  // Throws std::invalid_argument unless each entry is in [0, 1] and the
  // entries sum to 1 within 1e-6.
  void Validate() const;

  static NliDistribution OneHot(NliLabel l);
};

// Pluggable NLI classifier o(l | premise, hypothesis). Implementations must be
// safe for concurrent Classify calls.
class NliBackend {
 public:
  virtual ~NliBackend() = default;
  virtual NliDistribution Classify(const Tokens& premise,
                                   const Tokens& hypothesis) const = 0;
  virtual std::string Name() const = 0;
};

// Maps surface tokens onto canonical concepts (synonyms share a concept).
using ConceptLexicon = std::unordered_map<std::string, std::string>;

// Deterministic rule world over token multisets, used to make ground-truth
// relations computable without a trained classifier.
//
//  * If exactly one side contains the negation marker "not": C.
//  * Else if the hypothesis multiset is contained in the premise multiset: E.
//  * Else: N.
//
// With an optional lexicon, tokens are first mapped to their concepts, so
// swapping a word for a synonym preserves equivalence.
class SyntheticWorldBackend : public NliBackend {
 public:
  static constexpr const char* kNegationMarker = "not";

  SyntheticWorldBackend() = default;
  explicit SyntheticWorldBackend(ConceptLexicon lexicon)
      : lexicon_(std::move(lexicon)) {}

  NliDistribution Classify(const Tokens& premise,
                           const Tokens& hypothesis) const override;
  std::string Name() const override { return "synthetic"; }

 private:
  ConceptLexicon lexicon_;
};

// Adapter for an external learned classifier served over HTTP.
//
// Request:  POST <endpoint> {"premise": str, "hypothesis": str}
// Response: {"entailment": p, "neutral": p, "contradiction": p}
//
// Any transport failure, non-200 status or malformed body raises
// BackendError.
class HttpNliBackend : public NliBackend {
 public:
  // `endpoint` is "http://host:port/path".
  explicit HttpNliBackend(std::string endpoint, double timeout_seconds = 30.0);

  NliDistribution Classify(const Tokens& premise,
                           const Tokens& hypothesis) const override;
  std::string Name() const override { return "http:" + endpoint_; }

  // Environment variable that overrides a configured endpoint.
  static constexpr const char* kEndpointEnv = "RELPARA_NLI_ENDPOINT";

 private:
  std::string endpoint_;
  std::string host_;
  std::string path_;
  double timeout_seconds_;
};

// Validated call into a backend: rejects empty sequences and improper
// distributions.
NliDistribution Classify(const Tokens& premise, const Tokens& hypothesis,
                         const NliBackend& backend);

// The case table above; total over all nine label combinations.
Relation DeriveRelation(NliLabel forward, NliLabel backward);

struct OracleVerdict {
  Relation relation = Relation::kInvalid;
  std::array<double, kNumRelations> likelihoods{};

  double Likelihood(Relation r) const { return likelihoods[Index(r)]; }
};

// Independence composition of a forward <X,Y> and backward <Y,X> distribution.
OracleVerdict ComposeVerdict(const NliDistribution& forward,
                             const NliDistribution& backward);

OracleVerdict ComputeOracleVerdict(const Tokens& x, const Tokens& y,
                                   const NliBackend& backend);

struct DivergenceStats {
  int total = 0;
  int malformed = 0;
  std::array<int, kNumRelations> per_relation{};

  // Fraction of labeled pairs judged CONTRA, NEUTRAL or INVALID.
  double DivergentFraction() const;
  // {"total", "malformed", "divergent_fraction", "per_relation": {...}}
  Json ToJson() const;
};

struct WeakLabelResult {
  std::vector<RelationAnnotatedPair> pairs;
  DivergenceStats stats;
};

WeakLabelResult WeakLabelCorpus(std::span<const SentencePair> pairs,
                                const NliBackend& backend);
// JSONL-record variant: records without string "x"/"y" fields, or whose
// sentences tokenize to nothing, are skipped and counted as malformed.
WeakLabelResult WeakLabelRecords(std::span<const Json> records,
                                 const NliBackend& backend);

enum class BalanceMode { kUpsample, kDownsample };

// Equalizes EQ/FWD/REV counts. DOWNSAMPLE draws each class down to the
// smallest class size without replacement; UPSAMPLE keeps every pair and tops
// each class up to the largest class size by sampling with replacement.
// Output is grouped by relation (EQ, FWD, REV) and deterministic in `seed`.
// Throws std::invalid_argument if a non-control relation is present or any
// control class is empty.
std::vector<RelationAnnotatedPair> BalanceCorpus(
    std::span<const RelationAnnotatedPair> pairs, BalanceMode mode,
    std::uint64_t seed);

// Resolves the backend named by `spec`: "synthetic" or an http:// endpoint.
// The RELPARA_NLI_ENDPOINT environment variable, when set, wins.
std::unique_ptr<NliBackend> MakeNliBackend(const std::string& spec,
                                           ConceptLexicon lexicon = {});

}  // namespace relpara

#endif  // RELPARA_NLI_ORACLE_H_
