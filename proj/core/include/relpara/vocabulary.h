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

#ifndef RELPARA_VOCABULARY_H_
#define RELPARA_VOCABULARY_H_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "relpara/types.h"

namespace relpara {

// Token <-> id mapping. Layout: <pad> <unk> <bos> <eos>, corpus tokens, then
// the three control tokens appended last.
class Vocabulary {
 public:
  static constexpr int kPad = 0;
  static constexpr int kUnk = 1;
  static constexpr int kBos = 2;
  static constexpr int kEos = 3;

  Vocabulary();

  // Corpus tokens are ordered by descending frequency, then lexicographically.
  // Tokens that collide with a reserved token are dropped, so reserved ids
  // never alias corpus text.
  static Vocabulary Build(std::span<const Tokens> corpus, int min_count = 1);

  int size() const { return static_cast<int>(tokens_.size()); }
  int Id(std::string_view token) const;  // kUnk if absent
  const std::string& Token(int id) const;
  int ControlId(Relation relation) const;
  bool IsReserved(int id) const;

  std::vector<int> Encode(const Tokens& tokens) const;
  // Stops at the first kEos; skips pad/bos.
  Tokens Decode(std::span<const int> ids) const;

  void Save(const std::filesystem::path& path) const;
  static Vocabulary Load(const std::filesystem::path& path);

  bool operator==(const Vocabulary& other) const {
    return tokens_ == other.tokens_;
  }

 private:
  explicit Vocabulary(std::vector<std::string> tokens);
  void Index();

  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> ids_;
};

}  // namespace relpara

#endif  // RELPARA_VOCABULARY_H_
