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

#include "relpara/synthetic_world.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace relpara {

namespace {

// Pronounceable, collision-free words: consonant-vowel syllables.
std::string Word(int index) {
  static constexpr const char* kOnsets = "bdfgklmnprstvz";
  static constexpr const char* kVowels = "aeiou";
  std::string w;
  // 70^3 syllable triples; a multiplier coprime to that spreads the words.
  int v = static_cast<int>((static_cast<long long>(index) * 7919) % 343000);
  for (int i = 0; i < 3; ++i) {
    w += kOnsets[v % 14];
    v /= 14;
    w += kVowels[v % 5];
    v /= 5;
  }
  return w;
}

}  // namespace

void SyntheticWorldConfig::Validate() const {
  if (min_concepts < 2 || max_concepts < min_concepts) {
    throw std::invalid_argument("need 2 <= min_concepts <= max_concepts");
  }
  if (concepts < max_concepts + 2) {
    throw std::invalid_argument("too few concepts for the sentence length");
  }
  if (divergent_fraction < 0.0 || divergent_fraction > 1.0) {
    throw std::invalid_argument("divergent_fraction must lie in [0, 1]");
  }
}

SyntheticWorld::SyntheticWorld(SyntheticWorldConfig config) : config_(config) {
  config_.Validate();
  // Spread the word indices so neighbouring concepts look unrelated.
  constexpr int kStride = 97;
  for (int c = 0; c < config_.concepts; ++c) {
    forms_.push_back({Word(2 * c * kStride + 1), Word((2 * c + 1) * kStride + 1)});
    const std::string name = "c" + std::to_string(c);
    lexicon_[forms_.back()[0]] = name;
    lexicon_[forms_.back()[1]] = name;
  }
  if (lexicon_.size() != 2 * forms_.size() ||
      lexicon_.contains(SyntheticWorldBackend::kNegationMarker)) {
    throw std::logic_error("synthetic word forms collide");
  }
}

const std::string& SyntheticWorld::Form(int concept_id, int variant) const {
  return forms_.at(concept_id).at(variant);
}

int SyntheticWorld::ConceptOf(const std::string& token) const {
  auto it = lexicon_.find(token);
  if (it == lexicon_.end()) return -1;
  return std::stoi(it->second.substr(1));
}

Tokens SyntheticWorld::SampleSentence(std::mt19937_64& rng) const {
  std::uniform_int_distribution<int> len(config_.min_concepts,
                                         config_.max_concepts);
  std::vector<int> ids(config_.concepts);
  std::iota(ids.begin(), ids.end(), 0);
  std::shuffle(ids.begin(), ids.end(), rng);
  const int n = len(rng);
  std::bernoulli_distribution variant(0.5);
  Tokens out;
  for (int i = 0; i < n; ++i) out.push_back(Form(ids[i], variant(rng) ? 1 : 0));
  return out;
}

SentencePair SyntheticWorld::MakeParaphrase(const Tokens& x, Relation relation,
                                            std::mt19937_64& rng) const {
  if (x.empty()) throw std::invalid_argument("empty sentence");
  std::uniform_int_distribution<std::size_t> pos(0, x.size() - 1);
  Tokens y = x;
  switch (relation) {
    case Relation::kEquivalence: {
      const std::size_t i = pos(rng);
      const int c = ConceptOf(y[i]);
      if (c < 0) throw std::invalid_argument("unknown word " + y[i]);
      y[i] = Form(c, Form(c, 0) == y[i] ? 1 : 0);
      break;
    }
    case Relation::kForward: {
      if (x.size() < 2) throw std::invalid_argument("sentence too short to drop");
      y.erase(y.begin() + static_cast<long>(pos(rng)));
      break;
    }
    case Relation::kReverse: {
      std::unordered_set<int> used;
      for (const auto& t : x) used.insert(ConceptOf(t));
      std::vector<int> fresh;
      for (int c = 0; c < config_.concepts; ++c) {
        if (!used.contains(c)) fresh.push_back(c);
      }
      if (fresh.empty()) throw std::invalid_argument("no concept left to add");
      std::uniform_int_distribution<std::size_t> pick(0, fresh.size() - 1);
      std::uniform_int_distribution<std::size_t> at(0, y.size());
      std::bernoulli_distribution variant(0.5);
      y.insert(y.begin() + static_cast<long>(at(rng)),
               Form(fresh[pick(rng)], variant(rng) ? 1 : 0));
      break;
    }
    default:
      throw std::invalid_argument("paraphrase relation must be EQ, FWD or REV");
  }
  return {x, y};
}

SentencePair SyntheticWorld::MakeDivergent(const Tokens& x,
                                           std::mt19937_64& rng) const {
  std::bernoulli_distribution negate(0.5);
  Tokens y = x;
  if (negate(rng)) {
    std::uniform_int_distribution<std::size_t> at(0, y.size());
    y.insert(y.begin() + static_cast<long>(at(rng)),
             SyntheticWorldBackend::kNegationMarker);
    return {x, y};
  }
  // Replace one concept with an unused one: neutral both ways.
  std::unordered_set<int> used;
  for (const auto& t : x) used.insert(ConceptOf(t));
  std::vector<int> fresh;
  for (int c = 0; c < config_.concepts; ++c) {
    if (!used.contains(c)) fresh.push_back(c);
  }
  std::uniform_int_distribution<std::size_t> pos(0, y.size() - 1);
  std::uniform_int_distribution<std::size_t> pick(0, fresh.size() - 1);
  y[pos(rng)] = Form(fresh[pick(rng)], 0);
  return {x, y};
}

std::vector<SentencePair> SyntheticWorld::ParaphraseCorpus(
    int n, std::mt19937_64& rng) const {
  std::bernoulli_distribution divergent(config_.divergent_fraction);
  std::uniform_int_distribution<std::size_t> rel(0, kControlRelations.size() - 1);
  std::vector<SentencePair> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    const Tokens x = SampleSentence(rng);
    if (divergent(rng)) {
      out.push_back(MakeDivergent(x, rng));
    } else {
      out.push_back(MakeParaphrase(x, kControlRelations[rel(rng)], rng));
    }
  }
  return out;
}

std::vector<RelationAnnotatedPair> SyntheticWorld::ControlSet(
    int n_per_relation, std::mt19937_64& rng) const {
  std::vector<RelationAnnotatedPair> out;
  for (Relation r : kControlRelations) {
    for (int i = 0; i < n_per_relation; ++i) {
      out.push_back({MakeParaphrase(SampleSentence(rng), r, rng), r,
                     LabelSource::kGold});
    }
  }
  return out;
}

}  // namespace relpara
