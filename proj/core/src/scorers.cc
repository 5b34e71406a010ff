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

#include "relpara/scorers.h"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>

#include "httplib.h"
#include "relpara/bleu.h"
#include "relpara/errors.h"

namespace relpara {

namespace {

bool IsSpecialToken(const std::string& t) {
  return t == "<pad>" || t == "<unk>" || t == "<bos>" || t == "<eos>" ||
         RelationForControlToken(t).has_value();
}

std::unordered_map<std::string, int> ContentCounts(const Tokens& tokens,
                                                   int& total) {
  std::unordered_map<std::string, int> counts;
  total = 0;
  for (const auto& t : tokens) {
    if (IsSpecialToken(t)) continue;
    ++counts[t];
    ++total;
  }
  return counts;
}

}  // namespace

double TokenF1Similarity::Score(const Tokens& x, const Tokens& y) const {
  int nx = 0;
  int ny = 0;
  const auto cx = ContentCounts(x, nx);
  const auto cy = ContentCounts(y, ny);
  if (nx == 0 && ny == 0) return 1.0;
  if (nx == 0 || ny == 0) return 0.0;
  int overlap = 0;
  for (const auto& [tok, n] : cy) {
    auto it = cx.find(tok);
    if (it != cx.end()) overlap += std::min(n, it->second);
  }
  if (overlap == 0) return 0.0;
  const double precision = static_cast<double>(overlap) / ny;
  const double recall = static_cast<double>(overlap) / nx;
  return 2.0 * precision * recall / (precision + recall);
}

HttpSimilarityBackend::HttpSimilarityBackend(std::string endpoint,
                                             double timeout_seconds)
    : endpoint_(std::move(endpoint)), timeout_seconds_(timeout_seconds) {
  const std::string scheme = "http://";
  if (endpoint_.rfind(scheme, 0) != 0) {
    throw ConfigError("similarity endpoint must start with http://: " +
                      endpoint_);
  }
  const std::size_t slash = endpoint_.find('/', scheme.size());
  host_ = endpoint_.substr(0, slash);
  path_ = slash == std::string::npos ? "/" : endpoint_.substr(slash);
}

double HttpSimilarityBackend::Score(const Tokens& x, const Tokens& y) const {
  httplib::Client client(host_);
  const auto secs = static_cast<time_t>(timeout_seconds_);
  client.set_connection_timeout(secs, 0);
  client.set_read_timeout(secs, 0);
  const Json request = {{"x", JoinTokens(x)}, {"y", JoinTokens(y)}};
  auto response = client.Post(path_, request.dump(), "application/json");
  if (!response) {
    throw BackendError("similarity backend unreachable at " + endpoint_ +
                       ": " + httplib::to_string(response.error()));
  }
  if (response->status != 200) {
    throw BackendError("similarity backend returned HTTP " +
                       std::to_string(response->status));
  }
  const Json body = Json::parse(response->body, nullptr, false);
  if (!body.is_object() || !body.contains("score") ||
      !body["score"].is_number()) {
    throw BackendError("malformed similarity backend response");
  }
  return body["score"].get<double>();
}

std::unique_ptr<SimilarityBackend> MakeSimilarityBackend(const std::string& spec) {
  if (const char* env = std::getenv(HttpSimilarityBackend::kEndpointEnv);
      env != nullptr && *env != '\0') {
    return std::make_unique<HttpSimilarityBackend>(env);
  }
  if (spec == "token_f1") return std::make_unique<TokenF1Similarity>();
  if (spec.rfind("http://", 0) == 0) {
    return std::make_unique<HttpSimilarityBackend>(spec);
  }
  throw ConfigError("unknown similarity backend: " + spec);
}

double Similarity(const Tokens& x, const Tokens& y_hat,
                  const SimilarityBackend& backend) {
  const double s = backend.Score(x, y_hat);
  if (!(s >= 0.0 && s <= 1.0)) {
    throw BackendError("similarity score outside [0, 1]: " + std::to_string(s));
  }
  return s;
}

double Diversity(const Tokens& x, const Tokens& y_hat) {
  return 1.0 - NoPenaltyBleu(y_hat, x);
}

double Consistency(const Tokens& x, const Tokens& y_hat, Relation relation,
                   const NliBackend& oracle) {
  if (!IsControlRelation(relation)) {
    throw std::invalid_argument("consistency needs EQ, FWD or REV");
  }
  return ComputeOracleVerdict(x, y_hat, oracle).Likelihood(relation);
}

double AdversaryPenalty(const Tokens& y_hat, Relation relation,
                        const HypothesisOnlyAdversary* adversary) {
  if (adversary == nullptr || !adversary->trained()) return 0.0;
  const ControlDistribution a = adversary->Predict(y_hat);
  const std::size_t want = ControlIndex(relation);
  std::size_t best = 0;
  for (std::size_t i = 1; i < a.size(); ++i) {
    if (a[i] > a[best]) best = i;
  }
  return best == want ? a[want] : 0.0;
}

ScoreTuple ApplyThresholds(const ScoreTuple& raw, const RewardConfig& config) {
  if (raw.r_s < config.sim_low || raw.r_s > config.sim_high || raw.r_s <= 0.0) {
    return {};
  }
  return raw;
}

double WeightedScore(const ScoreTuple& s, const RewardConfig& config) {
  return config.alpha * (s.r_l - s.p_l) + config.beta * s.r_s +
         config.delta * s.r_d;
}

ScoreTuple ScoreRaw(const Tokens& x, const Tokens& y_hat, Relation relation,
                    const ScorerSet& scorers) {
  if (scorers.oracle == nullptr || scorers.similarity == nullptr) {
    throw std::invalid_argument("scorer set needs an oracle and a similarity");
  }
  ScoreTuple s;
  s.r_s = Similarity(x, y_hat, *scorers.similarity);
  s.r_d = Diversity(x, y_hat);
  s.r_l = Consistency(x, y_hat, relation, *scorers.oracle);
  s.p_l = AdversaryPenalty(y_hat, relation, scorers.adversary);
  return s;
}

ScoreTuple ScoreThresholded(const Tokens& x, const Tokens& y_hat,
                            Relation relation, const RewardConfig& config,
                            const ScorerSet& scorers) {
  if (scorers.oracle == nullptr || scorers.similarity == nullptr) {
    throw std::invalid_argument("scorer set needs an oracle and a similarity");
  }
  ScoreTuple s;
  s.r_s = Similarity(x, y_hat, *scorers.similarity);
  if (ApplyThresholds(s, config).r_s <= 0.0) return {};
  s.r_d = Diversity(x, y_hat);
  s.r_l = Consistency(x, y_hat, relation, *scorers.oracle);
  s.p_l = AdversaryPenalty(y_hat, relation, scorers.adversary);
  return s;
}

CombinedScoreResult CombinedScore(const Tokens& x, Relation relation,
                                  std::span<const Tokens> rollouts,
                                  const RewardConfig& config,
                                  const ScorerSet& scorers) {
  if (rollouts.empty()) throw std::invalid_argument("no rollouts to score");
  if (static_cast<int>(rollouts.size()) != config.n_rollouts) {
    throw std::invalid_argument("expected " + std::to_string(config.n_rollouts) +
                                " rollouts, got " +
                                std::to_string(rollouts.size()));
  }
  CombinedScoreResult out;
  for (const Tokens& y : rollouts) {
    if (y.empty()) continue;  // nothing to score; contributes 0
    ScoreTuple s;
    try {
      s = ScoreThresholded(x, y, relation, config, scorers);
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {
      ++out.failures;
      continue;
    }
    out.f += WeightedScore(s, config);
    out.mean.r_s += s.r_s;
    out.mean.r_d += s.r_d;
    out.mean.r_l += s.r_l;
    out.mean.p_l += s.p_l;
  }
  const double n = static_cast<double>(rollouts.size());
  out.f /= n;
  out.mean.r_s /= n;
  out.mean.r_d /= n;
  out.mean.r_l /= n;
  out.mean.p_l /= n;
  return out;
}

}  // namespace relpara
