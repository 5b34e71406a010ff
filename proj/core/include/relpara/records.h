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

// JSONL serialization of the shared record types.

#ifndef RELPARA_RECORDS_H_
#define RELPARA_RECORDS_H_

#include <filesystem>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "relpara/types.h"

namespace relpara {

using Json = nlohmann::json;

// {"x": str, "y": str, "relation": "EQ|...", "source": "GOLD|ORACLE"}
Json ToJson(const RelationAnnotatedPair& pair);
// Throws std::invalid_argument on missing fields, unknown enum values or
// sentences that tokenize to nothing.
RelationAnnotatedPair AnnotatedPairFromJson(const Json& j);

struct JsonlContents {
  std::vector<Json> records;
  int malformed = 0;  // lines that failed to parse as JSON
};

// Throws MissingInputError if the file cannot be opened. Blank lines are
// ignored.
JsonlContents ReadJsonl(const std::filesystem::path& path);
void WriteJsonl(const std::filesystem::path& path, std::span<const Json> rows);
void WriteJson(const std::filesystem::path& path, const Json& value);
Json ReadJson(const std::filesystem::path& path);

std::vector<RelationAnnotatedPair> ReadAnnotatedPairs(
    const std::filesystem::path& path);
void WriteAnnotatedPairs(const std::filesystem::path& path,
                         std::span<const RelationAnnotatedPair> pairs);

}  // namespace relpara

#endif  // RELPARA_RECORDS_H_
