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

// Paraphrastic augmentation of binary entailment data with labels projected
// through entailment composition, plus an export of suspicious augmentations
// for human review.

#ifndef RELPARA_AUGMENTATION_H_
#define RELPARA_AUGMENTATION_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "relpara/generator.h"
#include "relpara/nli_oracle.h"
#include "relpara/records.h"
#include "relpara/rl_trainer.h"
#include "relpara/types.h"

namespace relpara {

enum class BinaryLabel { kEntails, kNotEntails };
enum class ProjectedLabel { kEntails, kNotEntails, kUnknown };
enum class Variant { kOrig, kEqPara, kRevPara, kFwdPara };

std::string_view BinaryLabelName(BinaryLabel l);  // "E" / "NE"
BinaryLabel ParseBinaryLabel(std::string_view s);
std::string_view ProjectedLabelName(ProjectedLabel l);  // "E" / "NE" / "U"
std::string_view VariantName(Variant v);  // ORIG, EQ_PARA, REV_PARA, FWD_PARA
Variant ParseVariant(std::string_view s);
// EQ_PARA for EQ and so on; ORIG has no relation.
Relation VariantRelation(Variant v);
Variant VariantFor(Relation r);

// Label of (premise variant, hypothesis variant) given the original label.
// Total over all 16 cells.
ProjectedLabel ProjectLabel(BinaryLabel original, Variant premise,
                            Variant hypothesis);

struct Provenance {
  Variant premise_variant = Variant::kOrig;
  Variant hypothesis_variant = Variant::kOrig;
  BinaryLabel projected_from = BinaryLabel::kEntails;
  std::string original_premise;
  std::string original_hypothesis;
};

struct EntailmentRow {
  std::string premise;
  std::string hypothesis;
  BinaryLabel label = BinaryLabel::kEntails;
  std::optional<Provenance> provenance;

  static EntailmentRow FromJson(const Json& j);
  Json ToJson() const;
};

// Source of relation-specific paraphrases. Throws on failure.
class Paraphraser {
 public:
  virtual ~Paraphraser() = default;
  virtual Tokens Paraphrase(const Tokens& sentence, Relation relation) = 0;
};

// Beam-decodes with a generator; conditions on the relation when aware.
class GeneratorParaphraser : public Paraphraser {
 public:
  GeneratorParaphraser(const Generator& generator, DecodeConfig decode,
                       bool aware)
      : generator_(generator), decode_(decode), aware_(aware) {}
  Tokens Paraphrase(const Tokens& sentence, Relation relation) override;

 private:
  const Generator& generator_;
  DecodeConfig decode_;
  bool aware_;
};

struct AugmentationResult {
  std::vector<EntailmentRow> rows;  // never labeled U
  int generated = 0;                // emitted + dropped_unknown
  int dropped_unknown = 0;
  int paraphrase_failures = 0;      // sentences whose paraphrase failed
  std::map<std::string, int> per_cell;  // "EQ_PARA/ORIG" -> emitted rows

  Json StatsJson() const;
};

// For every row and every (premise, hypothesis) variant combination drawn from
// {ORIG} plus the requested relations, other than (ORIG, ORIG), emits the
// projected row. UNAWARE mode asks for EQ paraphrases only and treats them as
// equivalent.
AugmentationResult GenerateAugmentations(std::span<const EntailmentRow> rows,
                                         Paraphraser& paraphraser,
                                         const std::set<Relation>& relations,
                                         TrainingMode mode);

struct AdversarialCandidate {
  int row = 0;
  std::string side;  // "premise" or "hypothesis"
  std::string original;
  std::string paraphrase;
  Relation assumed = Relation::kEquivalence;
  Relation oracle = Relation::kInvalid;
  std::string premise;
  std::string hypothesis;
  std::string label;
};

// Rows where the oracle's relation between an original sentence and its
// paraphrase differs from the relation the variant assumes.
std::vector<AdversarialCandidate> FindAdversarialCandidates(
    std::span<const EntailmentRow> augmented, const NliBackend& oracle);

// CSV with a header and an empty annotator_label column.
void WriteAdversarialCsv(const std::filesystem::path& path,
                         std::span<const AdversarialCandidate> candidates);

// Toy binary entailment classifier for exercising augmented data: logistic
// regression over hashed bag features of the pair.
class ToyEntailmentClassifier {
 public:
  explicit ToyEntailmentClassifier(int buckets = 4096, std::uint64_t seed = 3);
  void Train(std::span<const EntailmentRow> rows, int epochs = 10,
             double learning_rate = 0.1);
  double ProbEntails(const EntailmentRow& row) const;
  double Accuracy(std::span<const EntailmentRow> rows) const;

 private:
  std::vector<int> Features(const EntailmentRow& row) const;

  int buckets_;
  std::uint64_t seed_;
  std::vector<double> weights_;
  double bias_ = 0.0;
};

}  // namespace relpara

#endif  // RELPARA_AUGMENTATION_H_
