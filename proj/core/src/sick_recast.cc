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

#include "relpara/sick_recast.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>

#include "relpara/errors.h"
#include "relpara/nli_oracle.h"

namespace relpara {
namespace {

std::vector<std::string> SplitTabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  if (!fields.empty() && !fields.back().empty() && fields.back().back() == '\r') {
    fields.back().pop_back();
  }
  return fields;
}

RelationAnnotatedPair MakePair(const Tokens& x, const Tokens& y, Relation r) {
  return {SentencePair{x, y}, r, LabelSource::kGold};
}

}  // namespace

std::string_view SplitName(Split s) {
  switch (s) {
    case Split::kTrain:
      return "train";
    case Split::kDev:
      return "dev";
    case Split::kTest:
      return "test";
  }
  return "?";
}

Split ParseSplit(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (s == "train") return Split::kTrain;
  if (s == "dev" || s == "trial" || s == "validation") return Split::kDev;
  if (s == "test") return Split::kTest;
  throw std::invalid_argument("unknown split: " + std::string(name));
}

std::vector<SickRecord> ReadSickFile(const std::filesystem::path& path,
                                     const SickColumns& columns) {
  std::ifstream in(path);
  if (!in) throw MissingInputError("cannot open SICK file " + path.string());
  std::string line;
  if (!std::getline(in, line)) {
    throw ConfigError("SICK file is empty: " + path.string());
  }
  const std::vector<std::string> header = SplitTabs(line);
  auto column = [&](const std::string& name) -> std::size_t {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      throw ConfigError("SICK file lacks column '" + name + "'");
    }
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t id_col = column(columns.pair_id);
  const std::size_t a_col = column(columns.sentence_a);
  const std::size_t b_col = column(columns.sentence_b);
  const std::size_t ab_col = column(columns.label_ab);
  const std::size_t ba_col = column(columns.label_ba);
  const std::size_t split_col = column(columns.split);
  const std::size_t group_col = column(columns.group);
  const std::size_t needed =
      1 + std::max({id_col, a_col, b_col, ab_col, ba_col, split_col, group_col});

  std::vector<SickRecord> records;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> f = SplitTabs(line);
    if (f.size() < needed) {
      throw ConfigError("SICK line " + std::to_string(line_no) +
                        " has too few columns");
    }
    try {
      records.push_back({f[id_col], f[a_col], f[b_col], ParseNliLabel(f[ab_col]),
                         ParseNliLabel(f[ba_col]), f[group_col],
                         ParseSplit(f[split_col])});
    } catch (const std::invalid_argument& e) {
      throw ConfigError("SICK line " + std::to_string(line_no) + ": " +
                        e.what());
    }
  }
  return records;
}

bool IsKnownSickGroup(std::string_view group) {
  static const std::regex kGroupPattern("S[0-9][a-z]?S[0-9][a-z]?");
  return std::regex_match(group.begin(), group.end(), kGroupPattern);
}

Json RecastDataset::CountsJson() const {
  Json out = Json::object();
  for (Split s : kAllSplits) {
    const RecastCounts& c = split(s).counts;
    out[std::string(SplitName(s))] = {
        {"EQ", c.eq}, {"FWD", c.fwd}, {"REV", c.rev}, {"Others", c.others}};
  }
  out["rejects"] = rejects.size();
  out["filtered_groups"] = filtered_groups;
  out["contradictions"] = contradictions;
  return out;
}

RecastDataset Recast(std::span<const SickRecord> records) {
  RecastDataset out;
  for (const SickRecord& rec : records) {
    const bool preserving =
        std::find(kMeaningPreservingGroups.begin(),
                  kMeaningPreservingGroups.end(),
                  rec.transformation_group) != kMeaningPreservingGroups.end();
    if (!preserving) {
      if (IsKnownSickGroup(rec.transformation_group)) {
        ++out.filtered_groups;
      } else {
        out.rejects.push_back(rec);
      }
      continue;
    }
    const Tokens p = Tokenize(rec.sentence_a);
    const Tokens h = Tokenize(rec.sentence_b);
    if (p.empty() || h.empty()) {
      out.rejects.push_back(rec);
      continue;
    }
    RecastSplit& split = out.splits[static_cast<int>(rec.split)];
    switch (DeriveRelation(rec.label_ab, rec.label_ba)) {
      case Relation::kEquivalence:
        split.pairs.push_back(MakePair(p, h, Relation::kEquivalence));
        split.pairs.push_back(MakePair(h, p, Relation::kEquivalence));
        split.counts.eq += 2;
        break;
      case Relation::kForward:
        split.pairs.push_back(MakePair(p, h, Relation::kForward));
        split.pairs.push_back(MakePair(h, p, Relation::kReverse));
        ++split.counts.fwd;
        ++split.counts.rev;
        break;
      case Relation::kReverse:
        // B entails A only: (a, b) is a reverse pair, (b, a) its forward twin.
        split.pairs.push_back(MakePair(p, h, Relation::kReverse));
        split.pairs.push_back(MakePair(h, p, Relation::kForward));
        ++split.counts.fwd;
        ++split.counts.rev;
        break;
      case Relation::kContradiction:
        ++out.contradictions;
        break;
      case Relation::kNeutral:
        split.others.push_back(MakePair(p, h, Relation::kNeutral));
        ++split.counts.others;
        break;
      case Relation::kInvalid:
        split.others.push_back(MakePair(p, h, Relation::kInvalid));
        ++split.counts.others;
        break;
    }
  }
  return out;
}

std::vector<RelationAnnotatedPair> FilterForTraining(const RecastSplit& split,
                                                     std::uint64_t seed) {
  return BalanceCorpus(split.pairs, BalanceMode::kUpsample, seed);
}

std::vector<std::pair<std::string, std::string>> FindSplitLeaks(
    const RecastDataset& dataset) {
  // Unordered surface pair -> set of splits it appears in.
  std::map<std::pair<std::string, std::string>, std::set<int>> seen;
  for (Split s : kAllSplits) {
    const RecastSplit& split = dataset.split(s);
    for (const auto* bucket : {&split.pairs, &split.others}) {
      for (const auto& p : *bucket) {
        std::string a = JoinTokens(p.pair.x);
        std::string b = JoinTokens(p.pair.y);
        if (b < a) std::swap(a, b);
        seen[{a, b}].insert(static_cast<int>(s));
      }
    }
  }
  std::vector<std::pair<std::string, std::string>> leaks;
  for (const auto& [key, splits] : seen) {
    if (splits.size() > 1) leaks.push_back(key);
  }
  return leaks;
}

}  // namespace relpara
