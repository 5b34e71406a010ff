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

// Structured run configuration for the command-line tool: one JSON document
// with a block per consumer, layered as defaults < config file < --set
// overrides.

#ifndef RELPARA_TOOLS_RUN_CONFIG_H_
#define RELPARA_TOOLS_RUN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "relpara/adversary.h"
#include "relpara/generator.h"
#include "relpara/nli_oracle.h"
#include "relpara/records.h"
#include "relpara/rl_trainer.h"
#include "relpara/synthetic_world.h"

namespace relpara::cli {

// Seeds are split per consumer so stages reproduce independently. They take
// precedence over the seed fields of the module blocks.
struct Seeds {
  std::uint64_t init = 1;       // generator parameter initialization
  std::uint64_t shuffle = 11;   // data order
  std::uint64_t sampling = 13;  // nucleus sampling and rollouts
  std::uint64_t balance = 17;   // up/downsampling
};

struct Backends {
  std::string nli = "synthetic";
  std::string similarity = "token_f1";
  std::string lexicon;  // JSON {surface form: concept} for the synthetic oracle
};

struct SyntheticData {
  SyntheticWorldConfig world;
  int corpus_size = 3000;
  int dev_per_relation = 40;
  int test_per_relation = 40;
};

struct RunConfig {
  Seeds seeds;
  Backends backends;
  GeneratorConfig generator;
  PretrainConfig pretrain;
  FinetuneConfig finetune;
  DecodeConfig decode;  // generate, rerank, evaluate and augment
  RewardConfig reward;  // rerank and score; finetune has its own copy
  int rerank_k = 20;
  std::set<Relation> augment_relations = {Relation::kEquivalence, Relation::kForward,
                                          Relation::kReverse};
  TrainingMode augment_mode = TrainingMode::kAware;
  std::string weak_label_balance = "none";  // none, upsample or downsample
  SyntheticData synthetic;

  Json ToJson() const;
};

// Defaults as a JSON document; every accepted key appears here.
Json DefaultConfigJson();

// Resolves a config: defaults, then the file (if non-empty), then each
// "dotted.key=value" override, whose value is parsed as JSON and otherwise
// taken as a string. Unknown keys, type mismatches and invalid values raise
// ConfigError; a missing file raises MissingInputError.
RunConfig LoadRunConfig(const std::filesystem::path& file,
                        const std::vector<std::string>& overrides);

RunConfig RunConfigFromJson(const Json& j);

ConceptLexicon LoadLexicon(const std::filesystem::path& path);
void SaveLexicon(const std::filesystem::path& path, const ConceptLexicon& lexicon);

}  // namespace relpara::cli

#endif  // RELPARA_TOOLS_RUN_CONFIG_H_
