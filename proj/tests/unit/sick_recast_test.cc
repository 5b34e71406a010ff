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

#include <filesystem>
#include <fstream>

#include "gtest/gtest.h"
#include "relpara/errors.h"

namespace relpara {
namespace {

constexpr NliLabel E = NliLabel::kEntailment;
constexpr NliLabel N = NliLabel::kNeutral;
constexpr NliLabel C = NliLabel::kContradiction;

SickRecord Rec(const std::string& id, NliLabel ab, NliLabel ba,
               const std::string& group = "S1aS2a", Split split = Split::kTrain) {
  return {id, "premise " + id, "hypothesis " + id, ab, ba, group, split};
}

TEST(RecastTest, EquivalenceAddsBothDirections) {
  const std::vector<SickRecord> recs = {Rec("1", E, E)};
  const RecastDataset d = Recast(recs);
  const RecastSplit& s = d.split(Split::kTrain);
  ASSERT_EQ(s.pairs.size(), 2u);
  EXPECT_EQ(s.counts.eq, 2);
  EXPECT_EQ(JoinTokens(s.pairs[0].pair.x), "premise 1");
  EXPECT_EQ(JoinTokens(s.pairs[1].pair.x), "hypothesis 1");
  for (const auto& p : s.pairs) {
    EXPECT_EQ(p.relation, Relation::kEquivalence);
    EXPECT_EQ(p.source, LabelSource::kGold);
  }
}

TEST(RecastTest, ForwardPairGetsReverseTwin) {
  const std::vector<SickRecord> recs = {Rec("1", E, N), Rec("2", N, E)};
  const RecastDataset d = Recast(recs);
  const RecastSplit& s = d.split(Split::kTrain);
  ASSERT_EQ(s.pairs.size(), 4u);
  EXPECT_EQ(s.pairs[0].relation, Relation::kForward);
  EXPECT_EQ(s.pairs[1].relation, Relation::kReverse);
  EXPECT_EQ(s.pairs[1].pair.x, s.pairs[0].pair.y);
  EXPECT_EQ(s.pairs[2].relation, Relation::kReverse);
  EXPECT_EQ(s.pairs[3].relation, Relation::kForward);
  EXPECT_EQ(s.counts.fwd, 2);
  EXPECT_EQ(s.counts.rev, 2);
}

TEST(RecastTest, OthersContradictionsAndGroups) {
  const std::vector<SickRecord> recs = {
      Rec("1", N, N), Rec("2", E, C), Rec("3", C, C),
      Rec("4", E, E, "S2aS2b"),  // known but not meaning-preserving
      Rec("5", E, E, "weird"),   // unknown group
      Rec("6", E, E, "S1aS1b", Split::kDev), Rec("7", E, N, "S1bS2b", Split::kTest)};
  const RecastDataset d = Recast(recs);
  EXPECT_EQ(d.split(Split::kTrain).counts.others, 2);
  EXPECT_EQ(d.split(Split::kTrain).others[0].relation, Relation::kNeutral);
  EXPECT_EQ(d.split(Split::kTrain).others[1].relation, Relation::kInvalid);
  EXPECT_EQ(d.contradictions, 1);
  EXPECT_EQ(d.filtered_groups, 1);
  ASSERT_EQ(d.rejects.size(), 1u);
  EXPECT_EQ(d.rejects[0].pair_id, "5");
  EXPECT_EQ(d.split(Split::kDev).counts.eq, 2);
  EXPECT_EQ(d.split(Split::kTest).counts.fwd, 1);
  const Json counts = d.CountsJson();
  EXPECT_EQ(counts["train"]["Others"], 2);
  EXPECT_EQ(counts["test"]["REV"], 1);
}

TEST(RecastTest, CountsMatchPairsForAnyLabelMix) {
  std::vector<SickRecord> recs;
  int i = 0;
  for (NliLabel ab : kAllNliLabels) {
    for (NliLabel ba : kAllNliLabels) {
      for (int k = 0; k < 3; ++k) recs.push_back(Rec(std::to_string(i++), ab, ba));
    }
  }
  const RecastDataset d = Recast(recs);
  const RecastSplit& s = d.split(Split::kTrain);
  EXPECT_EQ(static_cast<int>(s.pairs.size()), s.counts.eq + s.counts.fwd + s.counts.rev);
  EXPECT_EQ(s.counts.fwd, s.counts.rev);
  EXPECT_EQ(s.counts.eq, 6);
  EXPECT_EQ(s.counts.fwd, 6);
  EXPECT_EQ(s.counts.others, 15);
  EXPECT_EQ(d.contradictions, 3);
}

TEST(RecastTest, GroupPattern) {
  EXPECT_TRUE(IsKnownSickGroup("S1aS2b"));
  EXPECT_TRUE(IsKnownSickGroup("S3S4"));
  EXPECT_FALSE(IsKnownSickGroup("S1aS2bX"));
  EXPECT_FALSE(IsKnownSickGroup(""));
}

TEST(RecastTest, FilterForTrainingBalancesControlPairs) {
  const std::vector<SickRecord> recs = {Rec("1", E, E), Rec("2", E, E),
                                        Rec("3", E, N), Rec("4", N, N)};
  const auto train = FilterForTraining(Recast(recs).split(Split::kTrain), 5);
  std::array<int, 3> c{};
  for (const auto& p : train) ++c[Index(p.relation)];
  EXPECT_EQ(c, (std::array<int, 3>{4, 4, 4}));
}

TEST(RecastTest, SplitLeaksAreDetected) {
  std::vector<SickRecord> recs = {Rec("1", E, E), Rec("2", E, N)};
  recs.push_back(recs[0]);
  recs.back().split = Split::kTest;
  const auto leaks = FindSplitLeaks(Recast(recs));
  ASSERT_EQ(leaks.size(), 1u);
  EXPECT_EQ(leaks[0].first, "hypothesis 1");
}

class SickFileTest : public ::testing::Test {
 protected:
  void SetUp() override {
    path_ = std::filesystem::temp_directory_path() / "relpara_sick_test.txt";
  }
  void TearDown() override { std::filesystem::remove(path_); }
  void Write(const std::string& body) { std::ofstream(path_) << body; }
  std::filesystem::path path_;
};

TEST_F(SickFileTest, ReadsConfiguredColumns) {
  Write(
      "pair_ID\tsentence_A\tsentence_B\tentailment_AB\tentailment_BA\t"
      "SemEval_set\tgroup\n"
      "1\tA man runs\tA person runs\tA_entails_B\tB_neutral_A\tTRAIN\tS1aS2a\n"
      "2\tX\tY\tA_contradicts_B\tB_contradicts_A\tTRIAL\tS1aS2b\n");
  SickColumns cols;
  cols.group = "group";
  const auto recs = ReadSickFile(path_, cols);
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].label_ab, E);
  EXPECT_EQ(recs[0].label_ba, N);
  EXPECT_EQ(recs[1].split, Split::kDev);
  EXPECT_EQ(Recast(recs).split(Split::kTrain).pairs[0].relation,
            Relation::kForward);
  // The default column name is absent from this file.
  EXPECT_THROW(ReadSickFile(path_), ConfigError);
}

TEST_F(SickFileTest, MissingFileIsReported) {
  EXPECT_THROW(ReadSickFile(path_), MissingInputError);
}

}  // namespace
}  // namespace relpara
