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

// Recasts the SICK NLI corpus (bi-directional gold labels) into paraphrase
// pairs annotated with entailment relations.

#ifndef RELPARA_SICK_RECAST_H_
#define RELPARA_SICK_RECAST_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "relpara/records.h"
#include "relpara/types.h"

namespace relpara {

enum class Split { kTrain = 0, kDev = 1, kTest = 2 };
inline constexpr std::array<Split, 3> kAllSplits = {Split::kTrain, Split::kDev,
                                                    Split::kTest};

std::string_view SplitName(Split s);  // "train", "dev", "test"
// Accepts train/dev/test and SICK's TRAIN/TRIAL/TEST.
Split ParseSplit(std::string_view name);

struct SickRecord {
  std::string pair_id;
  std::string sentence_a;
  std::string sentence_b;
  NliLabel label_ab = NliLabel::kNeutral;
  NliLabel label_ba = NliLabel::kNeutral;
  std::string transformation_group;
  Split split = Split::kTrain;
};

// Sentence-pair construction groups that preserve meaning.
inline constexpr std::array<std::string_view, 5> kMeaningPreservingGroups = {
    "S1aS2a", "S1aS2b", "S1bS2a", "S1bS2b", "S1aS1b"};

struct SickColumns {
  std::string pair_id = "pair_ID";
  std::string sentence_a = "sentence_A";
  std::string sentence_b = "sentence_B";
  std::string label_ab = "entailment_AB";
  std::string label_ba = "entailment_BA";
  std::string split = "SemEval_set";
  std::string group = "transformation_group";
};

// Reads a tab-separated SICK distribution file, looking columns up by header
// name. Throws MissingInputError if the file is absent and ConfigError if a
// required column is missing or a row is malformed.
std::vector<SickRecord> ReadSickFile(const std::filesystem::path& path,
                                     const SickColumns& columns = {});

struct RecastCounts {
  int eq = 0;
  int fwd = 0;
  int rev = 0;
  int others = 0;
};

struct RecastSplit {
  // EQ/FWD/REV pairs including reversal twins, ordered by source record with
  // each original followed by its reversed twin.
  std::vector<RelationAnnotatedPair> pairs;
  // NEUTRAL and INVALID pairs.
  std::vector<RelationAnnotatedPair> others;
  RecastCounts counts;
};

struct RecastDataset {
  std::array<RecastSplit, 3> splits;
  std::vector<SickRecord> rejects;  // unknown transformation group
  int filtered_groups = 0;          // known but not meaning-preserving
  int contradictions = 0;           // CONTRA pairs, excluded

  const RecastSplit& split(Split s) const {
    return splits[static_cast<int>(s)];
  }
  // {"train": {"EQ":.., "FWD":.., "REV":.., "Others":..}, "dev": ..., ...}
  Json CountsJson() const;
};

// Known construction groups that are not meaning-preserving; anything else is
// rejected.
bool IsKnownSickGroup(std::string_view group);

RecastDataset Recast(std::span<const SickRecord> records);

// Drops the Others bucket and upsamples minority relations.
std::vector<RelationAnnotatedPair> FilterForTraining(const RecastSplit& split,
                                                     std::uint64_t seed);

// Pairs whose (x, y) or (y, x) surface form occurs in more than one split.
std::vector<std::pair<std::string, std::string>> FindSplitLeaks(
    const RecastDataset& dataset);

}  // namespace relpara

#endif  // RELPARA_SICK_RECAST_H_
