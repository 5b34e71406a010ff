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

#include "relpara/records.h"

#include <fstream>
#include <stdexcept>
#include <string>

#include "relpara/errors.h"

namespace relpara {

Json ToJson(const RelationAnnotatedPair& pair) {
  return Json{{"x", JoinTokens(pair.pair.x)},
              {"y", JoinTokens(pair.pair.y)},
              {"relation", std::string(RelationName(pair.relation))},
              {"source", std::string(LabelSourceName(pair.source))}};
}

RelationAnnotatedPair AnnotatedPairFromJson(const Json& j) {
  if (!j.is_object() || !j.contains("x") || !j.contains("y") ||
      !j.contains("relation") || !j["x"].is_string() || !j["y"].is_string() ||
      !j["relation"].is_string()) {
    throw std::invalid_argument("record lacks x/y/relation string fields");
  }
  RelationAnnotatedPair out;
  out.pair = SentencePair::FromText(j["x"].get<std::string>(),
                                    j["y"].get<std::string>());
  out.relation = ParseRelation(j["relation"].get<std::string>());
  out.source = j.contains("source")
                   ? ParseLabelSource(j["source"].get<std::string>())
                   : LabelSource::kGold;
  return out;
}

JsonlContents ReadJsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingInputError("cannot open " + path.string());
  JsonlContents out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json j = Json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) {
      ++out.malformed;
      continue;
    }
    out.records.push_back(std::move(j));
  }
  return out;
}

void WriteJsonl(const std::filesystem::path& path, std::span<const Json> rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (const Json& row : rows) out << row.dump() << '\n';
}

void WriteJson(const std::filesystem::path& path, const Json& value) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << value.dump(2) << '\n';
}

Json ReadJson(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingInputError("cannot open " + path.string());
  Json j = Json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw ConfigError("malformed JSON in " + path.string());
  return j;
}

std::vector<RelationAnnotatedPair> ReadAnnotatedPairs(
    const std::filesystem::path& path) {
  JsonlContents contents = ReadJsonl(path);
  std::vector<RelationAnnotatedPair> pairs;
  pairs.reserve(contents.records.size());
  for (const Json& j : contents.records) {
    pairs.push_back(AnnotatedPairFromJson(j));
  }
  return pairs;
}

void WriteAnnotatedPairs(const std::filesystem::path& path,
                         std::span<const RelationAnnotatedPair> pairs) {
  std::vector<Json> rows;
  rows.reserve(pairs.size());
  for (const auto& p : pairs) rows.push_back(ToJson(p));
  WriteJsonl(path, rows);
}

}  // namespace relpara
