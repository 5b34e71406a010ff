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

#include "relpara/types.h"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace relpara {
namespace {

constexpr std::array<std::string_view, kNumRelations> kRelationNames = {
    "EQ", "FWD", "REV", "CONTRA", "NEUTRAL", "INVALID"};

constexpr std::array<std::string_view, kNumControlRelations> kControlTokens = {
    "<rel_eq>", "<rel_fwd>", "<rel_rev>"};

std::string Lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

}  // namespace

std::string_view RelationName(Relation r) { return kRelationNames[Index(r)]; }

Relation ParseRelation(std::string_view name) {
  for (Relation r : kAllRelations) {
    if (kRelationNames[Index(r)] == name) return r;
  }
  throw std::invalid_argument("unknown relation: " + std::string(name));
}

std::string_view NliLabelName(NliLabel l) {
  switch (l) {
    case NliLabel::kEntailment:
      return "E";
    case NliLabel::kNeutral:
      return "N";
    case NliLabel::kContradiction:
      return "C";
  }
  return "?";
}

NliLabel ParseNliLabel(std::string_view name) {
  const std::string s = Lower(name);
  if (s == "e" || s == "entailment" || s == "entails" ||
      s.find("_entails_") != std::string::npos) {
    return NliLabel::kEntailment;
  }
  if (s == "n" || s == "neutral" || s.find("_neutral_") != std::string::npos) {
    return NliLabel::kNeutral;
  }
  if (s == "c" || s == "contradiction" || s == "contradicts" ||
      s.find("_contradicts_") != std::string::npos) {
    return NliLabel::kContradiction;
  }
  throw std::invalid_argument("unknown NLI label: " + std::string(name));
}

std::string_view ControlToken(Relation relation) {
  if (!IsControlRelation(relation)) {
    throw std::invalid_argument("not a control relation: " +
                                std::string(RelationName(relation)));
  }
  return kControlTokens[Index(relation)];
}

std::optional<Relation> RelationForControlToken(std::string_view token) {
  for (Relation r : kControlRelations) {
    if (kControlTokens[Index(r)] == token) return r;
  }
  return std::nullopt;
}

Tokens Tokenize(std::string_view text) {
  Tokens tokens;
  std::istringstream in{Lower(text)};
  std::string tok;
  while (in >> tok) tokens.push_back(std::move(tok));
  return tokens;
}

std::string JoinTokens(const Tokens& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += ' ';
    out += tokens[i];
  }
  return out;
}

SentencePair SentencePair::FromText(std::string_view x, std::string_view y) {
  SentencePair pair{Tokenize(x), Tokenize(y)};
  if (pair.x.empty() || pair.y.empty()) {
    throw std::invalid_argument("sentence pair has an empty side");
  }
  return pair;
}

std::string_view LabelSourceName(LabelSource s) {
  return s == LabelSource::kGold ? "GOLD" : "ORACLE";
}

LabelSource ParseLabelSource(std::string_view name) {
  if (name == "GOLD") return LabelSource::kGold;
  if (name == "ORACLE") return LabelSource::kOracle;
  throw std::invalid_argument("unknown label source: " + std::string(name));
}

void GenerationRequest::Validate() const {
  if (!IsControlRelation(relation)) {
    throw std::invalid_argument("generation relation must be EQ, FWD or REV");
  }
  if (min_len < 1 || max_len < min_len) {
    throw std::invalid_argument("require 1 <= min_len <= max_len");
  }
}

void RewardConfig::Validate() const {
  if (alpha < 0 || beta < 0 || delta < 0) {
    throw std::invalid_argument("reward weights must be non-negative");
  }
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("gamma must lie in (0, 1)");
  }
  if (!(sim_low >= 0.0 && sim_low < sim_high && sim_high <= 1.0)) {
    throw std::invalid_argument("require 0 <= sim_low < sim_high <= 1");
  }
  if (n_rollouts < 1) throw std::invalid_argument("n_rollouts must be >= 1");
}

}  // namespace relpara
