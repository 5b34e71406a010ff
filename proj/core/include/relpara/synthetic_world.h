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

// A toy world whose entailment relations are computable: a sentence is a set
// of concepts, each with two interchangeable surface forms. Used to exercise
// the whole training loop without learned models.

#ifndef RELPARA_SYNTHETIC_WORLD_H_
#define RELPARA_SYNTHETIC_WORLD_H_

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "relpara/nli_oracle.h"
#include "relpara/types.h"

namespace relpara {

struct SyntheticWorldConfig {
  int concepts = 40;
  int min_concepts = 6;  // per sentence
  int max_concepts = 8;
  // Share of paraphrase-corpus pairs that are semantically divergent
  // (a concept swapped for another, or a negation added).
  double divergent_fraction = 0.15;
  std::uint64_t seed = 5;

  void Validate() const;
};

class SyntheticWorld {
 public:
  explicit SyntheticWorld(SyntheticWorldConfig config);

  const SyntheticWorldConfig& config() const { return config_; }
  // Surface form -> concept name, for SyntheticWorldBackend.
  const ConceptLexicon& lexicon() const { return lexicon_; }
  // Both surface forms of concept i.
  const std::string& Form(int concept_id, int variant) const;

  Tokens SampleSentence(std::mt19937_64& rng) const;

  // A pair whose oracle relation is `relation`: EQ swaps one word for its
  // synonym, FWD drops one word, REV inserts one new concept.
  SentencePair MakeParaphrase(const Tokens& x, Relation relation,
                              std::mt19937_64& rng) const;
  SentencePair MakeDivergent(const Tokens& x, std::mt19937_64& rng) const;

  // Unlabeled paraphrase pairs: EQ, FWD and REV edits in equal proportion
  // plus the configured share of divergent pairs.
  std::vector<SentencePair> ParaphraseCorpus(int n, std::mt19937_64& rng) const;

  // n_per_relation gold pairs for each control relation, grouped EQ, FWD, REV.
  std::vector<RelationAnnotatedPair> ControlSet(int n_per_relation,
                                                std::mt19937_64& rng) const;

 private:
  int ConceptOf(const std::string& token) const;

  SyntheticWorldConfig config_;
  std::vector<std::array<std::string, 2>> forms_;
  ConceptLexicon lexicon_;
};

}  // namespace relpara

#endif  // RELPARA_SYNTHETIC_WORLD_H_
