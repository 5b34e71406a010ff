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

#include "run_config.h"

#include <fstream>
#include <map>
#include <stdexcept>

#include "relpara/errors.h"

namespace relpara::cli {
namespace {

Json RewardToJson(const RewardConfig& r) {
  return {{"alpha", r.alpha},   {"beta", r.beta},       {"delta", r.delta},
          {"n_rollouts", r.n_rollouts}, {"gamma", r.gamma},
          {"sim_low", r.sim_low}, {"sim_high", r.sim_high}};
}

RewardConfig RewardFromJson(const Json& j) {
  RewardConfig r;
  r.alpha = j.at("alpha").get<double>();
  r.beta = j.at("beta").get<double>();
  r.delta = j.at("delta").get<double>();
  r.n_rollouts = j.at("n_rollouts").get<int>();
  r.gamma = j.at("gamma").get<double>();
  r.sim_low = j.at("sim_low").get<double>();
  r.sim_high = j.at("sim_high").get<double>();
  return r;
}

// Seed fields owned by the "seeds" block are dropped from module blocks.
void DropKeys(Json& j, std::initializer_list<const char*> keys) {
  for (const char* k : keys) j.erase(k);
}

void CheckKnownKeys(const Json& given, const Json& known, const std::string& prefix) {
  if (!given.is_object()) return;
  for (const auto& [key, value] : given.items()) {
    const std::string path = prefix.empty() ? key : prefix + "." + key;
    if (!known.is_object() || !known.contains(key)) {
      throw ConfigError("unknown config key " + path);
    }
    CheckKnownKeys(value, known[key], path);
  }
}

void ApplyOverride(Json& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("override must look like key.path=value: " + assignment);
  }
  const std::string key = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  Json value = Json::parse(raw, nullptr, /*allow_exceptions=*/false);
  if (value.is_discarded()) value = raw;
  Json::json_pointer ptr;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    ptr /= key.substr(start, dot - start);
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  Json patch;
  patch[ptr] = value;
  config.merge_patch(patch);
}

}  // namespace

Json RunConfig::ToJson() const {
  Json gen = generator.ToJson();
  DropKeys(gen, {"seed"});
  Json pre = pretrain.ToJson();
  DropKeys(pre, {"shuffle_seed"});
  Json fine = finetune.ToJson();
  DropKeys(fine, {"shuffle_seed", "sampling_seed", "run_dir"});
  fine["adversary"].erase("seed");
  Json relations = Json::array();
  for (Relation r : augment_relations) relations.push_back(RelationName(r));
  return {
      {"seeds",
       {{"init", seeds.init},
        {"shuffle", seeds.shuffle},
        {"sampling", seeds.sampling},
        {"balance", seeds.balance}}},
      {"backends",
       {{"nli", backends.nli},
        {"similarity", backends.similarity},
        {"lexicon", backends.lexicon}}},
      {"generator", gen},
      {"pretrain", pre},
      {"finetune", fine},
      {"decode", decode.ToJson()},
      {"reward", RewardToJson(reward)},
      {"rerank", {{"k", rerank_k}}},
      {"augment", {{"relations", relations}, {"mode", TrainingModeName(augment_mode)}}},
      {"weak_label", {{"balance", weak_label_balance}}},
      {"synthetic",
       {{"concepts", synthetic.world.concepts},
        {"min_concepts", synthetic.world.min_concepts},
        {"max_concepts", synthetic.world.max_concepts},
        {"divergent_fraction", synthetic.world.divergent_fraction},
        {"corpus_size", synthetic.corpus_size},
        {"dev_per_relation", synthetic.dev_per_relation},
        {"test_per_relation", synthetic.test_per_relation}}},
  };
}

Json DefaultConfigJson() { return RunConfig{}.ToJson(); }

RunConfig RunConfigFromJson(const Json& j) {
  RunConfig c;
  try {
    const Json& s = j.at("seeds");
    c.seeds.init = s.at("init").get<std::uint64_t>();
    c.seeds.shuffle = s.at("shuffle").get<std::uint64_t>();
    c.seeds.sampling = s.at("sampling").get<std::uint64_t>();
    c.seeds.balance = s.at("balance").get<std::uint64_t>();
    const Json& b = j.at("backends");
    c.backends.nli = b.at("nli").get<std::string>();
    c.backends.similarity = b.at("similarity").get<std::string>();
    c.backends.lexicon = b.at("lexicon").get<std::string>();

    c.generator = GeneratorConfig::FromJson(j.at("generator"));
    c.generator.seed = c.seeds.init;
    c.pretrain = PretrainConfig::FromJson(j.at("pretrain"));
    c.pretrain.shuffle_seed = c.seeds.shuffle;
    c.finetune = FinetuneConfig::FromJson(j.at("finetune"));
    c.finetune.shuffle_seed = c.seeds.shuffle;
    c.finetune.sampling_seed = c.seeds.sampling;
    c.finetune.adversary.seed = c.seeds.init;
    c.decode = DecodeConfig::FromJson(j.at("decode"));
    c.reward = RewardFromJson(j.at("reward"));
    c.rerank_k = j.at("rerank").at("k").get<int>();
    c.augment_relations.clear();
    for (const auto& r : j.at("augment").at("relations")) {
      c.augment_relations.insert(ParseRelation(r.get<std::string>()));
    }
    c.augment_mode = ParseTrainingMode(j.at("augment").at("mode").get<std::string>());
    c.weak_label_balance = j.at("weak_label").at("balance").get<std::string>();
    const Json& syn = j.at("synthetic");
    c.synthetic.world.concepts = syn.at("concepts").get<int>();
    c.synthetic.world.min_concepts = syn.at("min_concepts").get<int>();
    c.synthetic.world.max_concepts = syn.at("max_concepts").get<int>();
    c.synthetic.world.divergent_fraction = syn.at("divergent_fraction").get<double>();
    c.synthetic.world.seed = c.seeds.init;
    c.synthetic.corpus_size = syn.at("corpus_size").get<int>();
    c.synthetic.dev_per_relation = syn.at("dev_per_relation").get<int>();
    c.synthetic.test_per_relation = syn.at("test_per_relation").get<int>();

    c.generator.Validate();
    c.decode.Validate();
    c.pretrain.decode.Validate();
    c.finetune.decode.Validate();
    c.reward.Validate();
    c.finetune.reward.Validate();
    c.synthetic.world.Validate();
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
  if (c.rerank_k < 1) throw ConfigError("rerank.k must be >= 1");
  if (c.weak_label_balance != "none" && c.weak_label_balance != "upsample" &&
      c.weak_label_balance != "downsample") {
    throw ConfigError("weak_label.balance must be none, upsample or downsample");
  }
  if (c.synthetic.corpus_size < 1 || c.synthetic.dev_per_relation < 1 ||
      c.synthetic.test_per_relation < 1) {
    throw ConfigError("synthetic sizes must be positive");
  }
  return c;
}

RunConfig LoadRunConfig(const std::filesystem::path& file,
                        const std::vector<std::string>& overrides) {
  const Json defaults = DefaultConfigJson();
  Json config = defaults;
  if (!file.empty()) {
    if (!std::filesystem::exists(file)) {
      throw MissingInputError("config file not found: " + file.string());
    }
    std::ifstream in(file);
    const Json given = Json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (given.is_discarded() || !given.is_object()) {
      throw ConfigError("config file is not a JSON object: " + file.string());
    }
    CheckKnownKeys(given, defaults, "");
    config.merge_patch(given);
  }
  for (const std::string& o : overrides) {
    Json patched = config;
    ApplyOverride(patched, o);
    Json probe;
    ApplyOverride(probe, o);
    CheckKnownKeys(probe, defaults, "");
    config = std::move(patched);
  }
  return RunConfigFromJson(config);
}

ConceptLexicon LoadLexicon(const std::filesystem::path& path) {
  const Json j = ReadJson(path);
  if (!j.is_object()) throw ConfigError("lexicon must be a JSON object");
  ConceptLexicon lexicon;
  for (const auto& [form, concept_name] : j.items()) {
    lexicon[form] = concept_name.get<std::string>();
  }
  return lexicon;
}

void SaveLexicon(const std::filesystem::path& path, const ConceptLexicon& lexicon) {
  // Sorted for byte-stable output.
  const std::map<std::string, std::string> sorted(lexicon.begin(), lexicon.end());
  WriteJson(path, Json(sorted));
}

}  // namespace relpara::cli
