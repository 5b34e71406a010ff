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

// Shared domain vocabulary: NLI labels, entailment relations, sentence pairs,
// generation requests and reward configuration.

#ifndef RELPARA_TYPES_H_
#define RELPARA_TYPES_H_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace relpara {

// Uni-directional NLI label of a (premise, hypothesis) pair.
enum class NliLabel { kEntailment = 0, kNeutral = 1, kContradiction = 2 };

inline constexpr std::array<NliLabel, 3> kAllNliLabels = {
    NliLabel::kEntailment, NliLabel::kNeutral, NliLabel::kContradiction};

// Relation between a sentence X and a paraphrase Y. The declaration order is
// also the argmax tie-break order used by the oracle.
enum class Relation {
  kEquivalence = 0,  // X entails Y and Y entails X.
  kForward = 1,      // X entails Y only (Y generalizes X).
  kReverse = 2,      // Y entails X only (Y specializes X).
  kContradiction = 3,
  kNeutral = 4,
  kInvalid = 5,
};

inline constexpr std::size_t kNumRelations = 6;
inline constexpr std::size_t kNumControlRelations = 3;

inline constexpr std::array<Relation, kNumRelations> kAllRelations = {
    Relation::kEquivalence,   Relation::kForward, Relation::kReverse,
    Relation::kContradiction, Relation::kNeutral, Relation::kInvalid};

inline constexpr std::array<Relation, kNumControlRelations> kControlRelations =
    {Relation::kEquivalence, Relation::kForward, Relation::kReverse};

constexpr bool IsControlRelation(Relation r) {
  return r == Relation::kEquivalence || r == Relation::kForward ||
         r == Relation::kReverse;
}

constexpr std::size_t Index(Relation r) { return static_cast<std::size_t>(r); }
constexpr std::size_t Index(NliLabel l) { return static_cast<std::size_t>(l); }

// "EQ", "FWD", "REV", "CONTRA", "NEUTRAL", "INVALID".
std::string_view RelationName(Relation r);
// Inverse of RelationName; throws std::invalid_argument on unknown names.
Relation ParseRelation(std::string_view name);

// "E", "N", "C".
std::string_view NliLabelName(NliLabel l);
// Accepts E/N/C, the full words, and SICK's "A_entails_B" style values.
NliLabel ParseNliLabel(std::string_view name);

// Reserved vocabulary token that conditions the generator on `relation`.
// Throws std::invalid_argument for non-control relations.
std::string_view ControlToken(Relation relation);
// The relation whose control token is `token`, if any.
std::optional<Relation> RelationForControlToken(std::string_view token);

using Tokens = std::vector<std::string>;

// Whitespace split with ASCII lowercasing.
Tokens Tokenize(std::string_view text);
std::string JoinTokens(const Tokens& tokens);

struct SentencePair {
  Tokens x;
  Tokens y;

  // Tokenizes both sides; throws std::invalid_argument if either is empty.
  static SentencePair FromText(std::string_view x, std::string_view y);
};

enum class LabelSource { kGold, kOracle };

std::string_view LabelSourceName(LabelSource s);
LabelSource ParseLabelSource(std::string_view name);

struct RelationAnnotatedPair {
  SentencePair pair;
  Relation relation = Relation::kInvalid;
  LabelSource source = LabelSource::kGold;
};

enum class DecodeMode { kBeam, kNucleus };

struct GenerationRequest {
  Tokens x;
  Relation relation = Relation::kEquivalence;
  DecodeMode decode = DecodeMode::kBeam;
  int max_len = 40;
  int min_len = 5;

  // Throws std::invalid_argument unless relation is a control relation and
  // 1 <= min_len <= max_len.
  void Validate() const;
};

struct RewardConfig {
  double alpha = 0.4;  // consistency minus adversary penalty
  double beta = 0.4;   // similarity
  double delta = 0.2;  // diversity
  int n_rollouts = 2;
  double gamma = 0.99;
  double sim_low = 0.3;
  double sim_high = 0.98;

  void Validate() const;
};

struct RewardBreakdown {
  double r_s = 0.0;
  double r_d = 0.0;
  double r_l = 0.0;
  double p_l = 0.0;
  double f = 0.0;
  std::vector<double> per_step_r;
  std::vector<double> per_step_q;
};

}  // namespace relpara

#endif  // RELPARA_TYPES_H_
