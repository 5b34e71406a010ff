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

#include "relpara/vocabulary.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <stdexcept>

#include "relpara/errors.h"

namespace relpara {
namespace {

const std::vector<std::string>& SpecialTokens() {
  static const std::vector<std::string> kSpecial = {"<pad>", "<unk>", "<bos>",
                                                    "<eos>"};
  return kSpecial;
}

bool IsReservedText(const std::string& token) {
  const auto& special = SpecialTokens();
  return std::find(special.begin(), special.end(), token) != special.end() ||
         RelationForControlToken(token).has_value();
}

}  // namespace

Vocabulary::Vocabulary() : Vocabulary(std::vector<std::string>{}) {}

Vocabulary::Vocabulary(std::vector<std::string> corpus_tokens) {
  tokens_ = SpecialTokens();
  for (auto& t : corpus_tokens) tokens_.push_back(std::move(t));
  for (Relation r : kControlRelations) {
    tokens_.emplace_back(ControlToken(r));
  }
  Index();
}

void Vocabulary::Index() {
  ids_.clear();
  for (int i = 0; i < static_cast<int>(tokens_.size()); ++i) {
    ids_.emplace(tokens_[i], i);
  }
}

Vocabulary Vocabulary::Build(std::span<const Tokens> corpus, int min_count) {
  std::map<std::string, int> counts;
  for (const Tokens& sentence : corpus) {
    for (const std::string& tok : sentence) ++counts[tok];
  }
  std::vector<std::pair<std::string, int>> entries;
  for (auto& [tok, n] : counts) {
    if (n >= min_count && !IsReservedText(tok)) entries.emplace_back(tok, n);
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> tokens;
  tokens.reserve(entries.size());
  for (auto& [tok, n] : entries) tokens.push_back(tok);
  return Vocabulary(std::move(tokens));
}

int Vocabulary::Id(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  return it == ids_.end() ? kUnk : it->second;
}

const std::string& Vocabulary::Token(int id) const {
  if (id < 0 || id >= size()) throw std::out_of_range("token id out of range");
  return tokens_[id];
}

int Vocabulary::ControlId(Relation relation) const {
  return Id(ControlToken(relation));
}

bool Vocabulary::IsReserved(int id) const {
  return id < static_cast<int>(SpecialTokens().size()) ||
         id >= size() - static_cast<int>(kNumControlRelations);
}

std::vector<int> Vocabulary::Encode(const Tokens& tokens) const {
  std::vector<int> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) ids.push_back(Id(t));
  return ids;
}

Tokens Vocabulary::Decode(std::span<const int> ids) const {
  Tokens out;
  for (int id : ids) {
    if (id == kEos) break;
    if (id == kPad || id == kBos) continue;
    out.push_back(Token(id));
  }
  return out;
}

void Vocabulary::Save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  // Only corpus tokens are stored; reserved tokens are implied by the layout.
  for (int i = static_cast<int>(SpecialTokens().size());
       i < size() - static_cast<int>(kNumControlRelations); ++i) {
    out << tokens_[i] << '\n';
  }
}

Vocabulary Vocabulary::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingInputError("cannot read vocabulary " + path.string());
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) tokens.push_back(line);
  }
  return Vocabulary(std::move(tokens));
}

}  // namespace relpara
