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

#include "relpara/nli_oracle.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include "httplib.h"
#include "relpara/errors.h"

namespace relpara {

double NliDistribution::operator[](NliLabel l) const {
  switch (l) {
    case NliLabel::kEntailment:
      return entailment;
    case NliLabel::kNeutral:
      return neutral;
    case NliLabel::kContradiction:
      return contradiction;
  }
  return 0.0;
}

NliLabel NliDistribution::Argmax() const {
  NliLabel best = NliLabel::kEntailment;
  for (NliLabel l : kAllNliLabels) {
    if ((*this)[l] > (*this)[best]) best = l;
  }
  return best;
}

void NliDistribution::Validate() const {
  for (NliLabel l : kAllNliLabels) {
    const double p = (*this)[l];
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("NLI probability outside [0, 1]");
    }
  }
  if (std::abs(entailment + neutral + contradiction - 1.0) > 1e-6) {
    throw std::invalid_argument("NLI distribution does not sum to 1");
  }
}

NliDistribution NliDistribution::OneHot(NliLabel l) {
  NliDistribution d;
  switch (l) {
    case NliLabel::kEntailment:
      d.entailment = 1.0;
      break;
    case NliLabel::kNeutral:
      d.neutral = 1.0;
      break;
    case NliLabel::kContradiction:
      d.contradiction = 1.0;
      break;
  }
  return d;
}

NliDistribution SyntheticWorldBackend::Classify(const Tokens& premise,
                                                const Tokens& hypothesis) const {
  auto bag = [this](const Tokens& tokens, bool& negated) {
    std::map<std::string, int> counts;
    negated = false;
    for (const auto& tok : tokens) {
      if (tok == kNegationMarker) {
        negated = true;
        continue;
      }
      auto it = lexicon_.find(tok);
      ++counts[it == lexicon_.end() ? tok : it->second];
    }
    return counts;
  };
  bool premise_negated = false;
  bool hypothesis_negated = false;
  const auto p = bag(premise, premise_negated);
  const auto h = bag(hypothesis, hypothesis_negated);
  if (premise_negated != hypothesis_negated) {
    return NliDistribution::OneHot(NliLabel::kContradiction);
  }
  for (const auto& [concept_name, n] : h) {
    auto it = p.find(concept_name);
    if (it == p.end() || it->second < n) {
      return NliDistribution::OneHot(NliLabel::kNeutral);
    }
  }
  return NliDistribution::OneHot(NliLabel::kEntailment);
}

HttpNliBackend::HttpNliBackend(std::string endpoint, double timeout_seconds)
    : endpoint_(std::move(endpoint)), timeout_seconds_(timeout_seconds) {
  const std::string scheme = "http://";
  if (endpoint_.rfind(scheme, 0) != 0) {
    throw ConfigError("NLI endpoint must start with http://: " + endpoint_);
  }
  const std::size_t slash = endpoint_.find('/', scheme.size());
  host_ = endpoint_.substr(0, slash);
  path_ = slash == std::string::npos ? "/" : endpoint_.substr(slash);
}

NliDistribution HttpNliBackend::Classify(const Tokens& premise,
                                         const Tokens& hypothesis) const {
  httplib::Client client(host_);
  const auto secs = static_cast<time_t>(timeout_seconds_);
  client.set_connection_timeout(secs, 0);
  client.set_read_timeout(secs, 0);
  const Json request = {{"premise", JoinTokens(premise)},
                        {"hypothesis", JoinTokens(hypothesis)}};
  auto response = client.Post(path_, request.dump(), "application/json");
  if (!response) {
    throw BackendError("NLI backend unreachable at " + endpoint_ + ": " +
                       httplib::to_string(response.error()));
  }
  if (response->status != 200) {
    throw BackendError("NLI backend returned HTTP " +
                       std::to_string(response->status));
  }
  const Json body = Json::parse(response->body, nullptr, false);
  if (!body.is_object() || !body.contains("entailment") ||
      !body.contains("neutral") || !body.contains("contradiction")) {
    throw BackendError("malformed NLI backend response");
  }
  try {
    NliDistribution d{body["entailment"].get<double>(),
                      body["neutral"].get<double>(),
                      body["contradiction"].get<double>()};
    d.Validate();
    return d;
  } catch (const Json::exception& e) {
    throw BackendError(std::string("NLI backend: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw BackendError(std::string("NLI backend: ") + e.what());
  }
}

NliDistribution Classify(const Tokens& premise, const Tokens& hypothesis,
                         const NliBackend& backend) {
  if (premise.empty() || hypothesis.empty()) {
    throw std::invalid_argument("NLI input must be non-empty");
  }
  NliDistribution d = backend.Classify(premise, hypothesis);
  d.Validate();
  return d;
}

Relation DeriveRelation(NliLabel forward, NliLabel backward) {
  using L = NliLabel;
  if (forward == L::kEntailment && backward == L::kEntailment) {
    return Relation::kEquivalence;
  }
  if (forward == L::kEntailment && backward == L::kNeutral) {
    return Relation::kForward;
  }
  if (forward == L::kNeutral && backward == L::kEntailment) {
    return Relation::kReverse;
  }
  if (forward == L::kContradiction && backward == L::kContradiction) {
    return Relation::kContradiction;
  }
  if (forward == L::kNeutral && backward == L::kNeutral) {
    return Relation::kNeutral;
  }
  return Relation::kInvalid;
}

OracleVerdict ComposeVerdict(const NliDistribution& forward,
                             const NliDistribution& backward) {
  OracleVerdict v;
  double assigned = 0.0;
  for (NliLabel f : kAllNliLabels) {
    for (NliLabel b : kAllNliLabels) {
      const Relation r = DeriveRelation(f, b);
      if (r == Relation::kInvalid) continue;
      const double mass = forward[f] * backward[b];
      v.likelihoods[Index(r)] += mass;
      assigned += mass;
    }
  }
  v.likelihoods[Index(Relation::kInvalid)] = std::max(0.0, 1.0 - assigned);
  v.relation = Relation::kEquivalence;
  for (Relation r : kAllRelations) {
    if (v.Likelihood(r) > v.Likelihood(v.relation)) v.relation = r;
  }
  return v;
}

OracleVerdict ComputeOracleVerdict(const Tokens& x, const Tokens& y,
                                   const NliBackend& backend) {
  return ComposeVerdict(Classify(x, y, backend), Classify(y, x, backend));
}

double DivergenceStats::DivergentFraction() const {
  if (total == 0) return 0.0;
  const int divergent = per_relation[Index(Relation::kContradiction)] +
                        per_relation[Index(Relation::kNeutral)] +
                        per_relation[Index(Relation::kInvalid)];
  return static_cast<double>(divergent) / total;
}

Json DivergenceStats::ToJson() const {
  Json per = Json::object();
  for (Relation r : kAllRelations) {
    per[std::string(RelationName(r))] = per_relation[Index(r)];
  }
  return Json{{"total", total},
              {"malformed", malformed},
              {"divergent_fraction", DivergentFraction()},
              {"per_relation", per}};
}

WeakLabelResult WeakLabelCorpus(std::span<const SentencePair> pairs,
                                const NliBackend& backend) {
  WeakLabelResult out;
  out.pairs.reserve(pairs.size());
  for (const SentencePair& pair : pairs) {
    if (pair.x.empty() || pair.y.empty()) {
      ++out.stats.malformed;
      continue;
    }
    const OracleVerdict v = ComputeOracleVerdict(pair.x, pair.y, backend);
    out.pairs.push_back({pair, v.relation, LabelSource::kOracle});
    ++out.stats.per_relation[Index(v.relation)];
    ++out.stats.total;
  }
  return out;
}

WeakLabelResult WeakLabelRecords(std::span<const Json> records,
                                 const NliBackend& backend) {
  std::vector<SentencePair> pairs;
  int malformed = 0;
  for (const Json& j : records) {
    if (!j.is_object() || !j.contains("x") || !j.contains("y") ||
        !j["x"].is_string() || !j["y"].is_string()) {
      ++malformed;
      continue;
    }
    try {
      pairs.push_back(SentencePair::FromText(j["x"].get<std::string>(),
                                             j["y"].get<std::string>()));
    } catch (const std::invalid_argument&) {
      ++malformed;
    }
  }
  WeakLabelResult out = WeakLabelCorpus(pairs, backend);
  out.stats.malformed += malformed;
  return out;
}

std::vector<RelationAnnotatedPair> BalanceCorpus(
    std::span<const RelationAnnotatedPair> pairs, BalanceMode mode,
    std::uint64_t seed) {
  std::array<std::vector<std::size_t>, kNumControlRelations> by_class;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!IsControlRelation(pairs[i].relation)) {
      throw std::invalid_argument(
          "balance_corpus expects only EQ/FWD/REV pairs, found " +
          std::string(RelationName(pairs[i].relation)));
    }
    by_class[Index(pairs[i].relation)].push_back(i);
  }
  std::size_t min_count = pairs.size();
  std::size_t max_count = 0;
  for (Relation r : kControlRelations) {
    const std::size_t n = by_class[Index(r)].size();
    if (n == 0) {
      throw std::invalid_argument("cannot balance: no " +
                                  std::string(RelationName(r)) + " pairs");
    }
    min_count = std::min(min_count, n);
    max_count = std::max(max_count, n);
  }

  std::mt19937_64 rng(seed);
  std::vector<RelationAnnotatedPair> out;
  for (Relation r : kControlRelations) {
    std::vector<std::size_t>& members = by_class[Index(r)];
    if (mode == BalanceMode::kDownsample) {
      std::shuffle(members.begin(), members.end(), rng);
      members.resize(min_count);
      std::sort(members.begin(), members.end());
      for (std::size_t i : members) out.push_back(pairs[i]);
    } else {
      for (std::size_t i : members) out.push_back(pairs[i]);
      std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
      for (std::size_t k = members.size(); k < max_count; ++k) {
        out.push_back(pairs[members[pick(rng)]]);
      }
    }
  }
  return out;
}

std::unique_ptr<NliBackend> MakeNliBackend(const std::string& spec,
                                           ConceptLexicon lexicon) {
  if (const char* env = std::getenv(HttpNliBackend::kEndpointEnv);
      env != nullptr && *env != '\0') {
    return std::make_unique<HttpNliBackend>(env);
  }
  if (spec == "synthetic") {
    return std::make_unique<SyntheticWorldBackend>(std::move(lexicon));
  }
  if (spec.rfind("http://", 0) == 0) {
    return std::make_unique<HttpNliBackend>(spec);
  }
  throw ConfigError("unknown NLI backend: " + spec);
}

}  // namespace relpara
