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

#include "relpara/augmentation.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "relpara/errors.h"
#include "relpara/eval_metrics.h"

namespace relpara {

std::string_view BinaryLabelName(BinaryLabel l) {
  return l == BinaryLabel::kEntails ? "E" : "NE";
}

BinaryLabel ParseBinaryLabel(std::string_view s) {
  if (s == "E" || s == "entails" || s == "ENTAILMENT") return BinaryLabel::kEntails;
  if (s == "NE" || s == "not_entails" || s == "NON_ENTAILMENT") {
    return BinaryLabel::kNotEntails;
  }
  throw std::invalid_argument("unknown binary label: " + std::string(s));
}

std::string_view ProjectedLabelName(ProjectedLabel l) {
  switch (l) {
    case ProjectedLabel::kEntails:
      return "E";
    case ProjectedLabel::kNotEntails:
      return "NE";
    case ProjectedLabel::kUnknown:
      return "U";
  }
  return "U";
}

std::string_view VariantName(Variant v) {
  switch (v) {
    case Variant::kOrig:
      return "ORIG";
    case Variant::kEqPara:
      return "EQ_PARA";
    case Variant::kRevPara:
      return "REV_PARA";
    case Variant::kFwdPara:
      return "FWD_PARA";
  }
  return "ORIG";
}

Variant ParseVariant(std::string_view s) {
  for (Variant v : {Variant::kOrig, Variant::kEqPara, Variant::kRevPara,
                    Variant::kFwdPara}) {
    if (VariantName(v) == s) return v;
  }
  throw std::invalid_argument("unknown variant: " + std::string(s));
}

Relation VariantRelation(Variant v) {
  switch (v) {
    case Variant::kEqPara:
      return Relation::kEquivalence;
    case Variant::kRevPara:
      return Relation::kReverse;
    case Variant::kFwdPara:
      return Relation::kForward;
    case Variant::kOrig:
      break;
  }
  throw std::invalid_argument("ORIG has no paraphrase relation");
}

Variant VariantFor(Relation r) {
  switch (r) {
    case Relation::kEquivalence:
      return Variant::kEqPara;
    case Relation::kForward:
      return Variant::kFwdPara;
    case Relation::kReverse:
      return Variant::kRevPara;
    default:
      throw std::invalid_argument("no paraphrase variant for " +
                                  std::string(RelationName(r)));
  }
}

ProjectedLabel ProjectLabel(BinaryLabel original, Variant premise,
                            Variant hypothesis) {
  using V = Variant;
  const bool preserves =
      (premise == V::kOrig || premise == V::kEqPara || premise == V::kRevPara) &&
      (hypothesis == V::kOrig || hypothesis == V::kEqPara);
  if (preserves) {
    return original == BinaryLabel::kEntails ? ProjectedLabel::kEntails
                                             : ProjectedLabel::kNotEntails;
  }
  // A forward-entailed hypothesis keeps entailment but loses non-entailment.
  const bool entails_only =
      (premise == V::kOrig || premise == V::kEqPara || premise == V::kRevPara) &&
      hypothesis == V::kFwdPara;
  if (entails_only && original == BinaryLabel::kEntails) {
    return ProjectedLabel::kEntails;
  }
  return ProjectedLabel::kUnknown;
}

EntailmentRow EntailmentRow::FromJson(const Json& j) {
  EntailmentRow row;
  row.premise = j.at("premise").get<std::string>();
  row.hypothesis = j.at("hypothesis").get<std::string>();
  row.label = ParseBinaryLabel(j.at("label").get<std::string>());
  if (j.contains("provenance") && j["provenance"].is_object()) {
    const Json& p = j["provenance"];
    Provenance prov;
    prov.premise_variant = ParseVariant(p.value("premise_variant", "ORIG"));
    prov.hypothesis_variant = ParseVariant(p.value("hypothesis_variant", "ORIG"));
    prov.projected_from = ParseBinaryLabel(p.value("projected_from", "E"));
    prov.original_premise = p.value("original_premise", row.premise);
    prov.original_hypothesis = p.value("original_hypothesis", row.hypothesis);
    row.provenance = prov;
  }
  return row;
}

Json EntailmentRow::ToJson() const {
  Json j = {{"premise", premise},
            {"hypothesis", hypothesis},
            {"label", BinaryLabelName(label)}};
  if (provenance.has_value()) {
    j["provenance"] = {
        {"premise_variant", VariantName(provenance->premise_variant)},
        {"hypothesis_variant", VariantName(provenance->hypothesis_variant)},
        {"projected_from", BinaryLabelName(provenance->projected_from)},
        {"original_premise", provenance->original_premise},
        {"original_hypothesis", provenance->original_hypothesis}};
  }
  return j;
}

Tokens GeneratorParaphraser::Paraphrase(const Tokens& sentence,
                                        Relation relation) {
  std::optional<Relation> control;
  if (aware_) control = relation;
  Tokens out = Generate(generator_, sentence, control, DecodeMode::kBeam, decode_);
  if (out.empty()) throw DecodeError("empty paraphrase");
  return out;
}

Json AugmentationResult::StatsJson() const {
  return {{"emitted", rows.size()},
          {"generated", generated},
          {"dropped_unknown", dropped_unknown},
          {"paraphrase_failures", paraphrase_failures},
          {"per_cell", per_cell}};
}

AugmentationResult GenerateAugmentations(std::span<const EntailmentRow> rows,
                                         Paraphraser& paraphraser,
                                         const std::set<Relation>& relations,
                                         TrainingMode mode) {
  std::vector<Variant> variants = {Variant::kOrig};
  if (mode == TrainingMode::kUnaware) {
    variants.push_back(Variant::kEqPara);
  } else {
    if (relations.empty()) throw std::invalid_argument("no relations requested");
    for (Relation r : relations) variants.push_back(VariantFor(r));
  }

  // One paraphrase per (sentence, relation); failures are remembered.
  std::map<std::pair<std::string, Relation>, std::optional<std::string>> cache;
  AugmentationResult result;
  auto paraphrase = [&](const std::string& s, Variant v) -> std::optional<std::string> {
    if (v == Variant::kOrig) return s;
    const auto key = std::make_pair(s, VariantRelation(v));
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::optional<std::string> out;
    try {
      out = JoinTokens(paraphraser.Paraphrase(Tokenize(s), key.second));
    } catch (const std::exception&) {
      ++result.paraphrase_failures;
    }
    cache.emplace(key, out);
    return out;
  };

  for (const EntailmentRow& row : rows) {
    for (Variant vp : variants) {
      for (Variant vh : variants) {
        if (vp == Variant::kOrig && vh == Variant::kOrig) continue;
        const auto p = paraphrase(row.premise, vp);
        const auto h = paraphrase(row.hypothesis, vh);
        if (!p.has_value() || !h.has_value()) continue;
        ++result.generated;
        const ProjectedLabel label = ProjectLabel(row.label, vp, vh);
        if (label == ProjectedLabel::kUnknown) {
          ++result.dropped_unknown;
          continue;
        }
        EntailmentRow out;
        out.premise = *p;
        out.hypothesis = *h;
        out.label = label == ProjectedLabel::kEntails ? BinaryLabel::kEntails
                                                      : BinaryLabel::kNotEntails;
        out.provenance = Provenance{vp, vh, row.label, row.premise, row.hypothesis};
        ++result.per_cell[std::string(VariantName(vp)) + "/" +
                          std::string(VariantName(vh))];
        result.rows.push_back(std::move(out));
      }
    }
  }
  return result;
}

std::vector<AdversarialCandidate> FindAdversarialCandidates(
    std::span<const EntailmentRow> augmented, const NliBackend& oracle) {
  std::vector<AdversarialCandidate> out;
  for (std::size_t i = 0; i < augmented.size(); ++i) {
    const EntailmentRow& row = augmented[i];
    if (!row.provenance.has_value()) continue;
    const Provenance& prov = *row.provenance;
    const struct {
      const char* side;
      Variant variant;
      const std::string& original;
      const std::string& paraphrase;
    } sides[] = {
        {"premise", prov.premise_variant, prov.original_premise, row.premise},
        {"hypothesis", prov.hypothesis_variant, prov.original_hypothesis,
         row.hypothesis},
    };
    for (const auto& s : sides) {
      if (s.variant == Variant::kOrig) continue;
      const Relation assumed = VariantRelation(s.variant);
      const Relation judged =
          ComputeOracleVerdict(Tokenize(s.original), Tokenize(s.paraphrase), oracle)
              .relation;
      if (judged == assumed) continue;
      out.push_back({static_cast<int>(i), s.side, s.original, s.paraphrase,
                     assumed, judged, row.premise, row.hypothesis,
                     std::string(BinaryLabelName(row.label))});
    }
  }
  return out;
}

namespace {

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

void WriteAdversarialCsv(const std::filesystem::path& path,
                         std::span<const AdversarialCandidate> candidates) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "row,side,original,paraphrase,assumed_relation,oracle_relation,"
         "premise,hypothesis,projected_label,annotator_label\n";
  for (const auto& c : candidates) {
    out << c.row << ',' << c.side << ',' << CsvField(c.original) << ','
        << CsvField(c.paraphrase) << ',' << RelationName(c.assumed) << ','
        << RelationName(c.oracle) << ',' << CsvField(c.premise) << ','
        << CsvField(c.hypothesis) << ',' << c.label << ",\n";
  }
}

ToyEntailmentClassifier::ToyEntailmentClassifier(int buckets, std::uint64_t seed)
    : buckets_(buckets), seed_(seed), weights_(static_cast<std::size_t>(buckets)) {
  if (buckets < 1) throw std::invalid_argument("need at least one bucket");
}

std::vector<int> ToyEntailmentClassifier::Features(const EntailmentRow& row) const {
  const Tokens p = Tokenize(row.premise);
  const Tokens h = Tokenize(row.hypothesis);
  const std::unordered_set<std::string> in_premise(p.begin(), p.end());
  std::vector<std::string> names;
  int novel = 0;
  for (const auto& t : h) {
    const bool seen = in_premise.contains(t);
    novel += seen ? 0 : 1;
    names.push_back((seen ? "in:" : "out:") + t);
  }
  names.push_back("novel:" + std::to_string(std::min(novel, 5)));
  const bool neg_p = in_premise.contains("not");
  const bool neg_h = std::find(h.begin(), h.end(), "not") != h.end();
  names.push_back(neg_p == neg_h ? "neg:same" : "neg:diff");
  std::vector<int> ids;
  ids.reserve(names.size());
  for (const auto& n : names) {
    const std::size_t hash = std::hash<std::string>{}(n) ^ (seed_ * 0x9e3779b97f4a7c15ULL);
    ids.push_back(static_cast<int>(hash % static_cast<std::size_t>(buckets_)));
  }
  return ids;
}

double ToyEntailmentClassifier::ProbEntails(const EntailmentRow& row) const {
  double z = bias_;
  for (int f : Features(row)) z += weights_[static_cast<std::size_t>(f)];
  return 1.0 / (1.0 + std::exp(-z));
}

void ToyEntailmentClassifier::Train(std::span<const EntailmentRow> rows,
                                    int epochs, double learning_rate) {
  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed_);
  for (int e = 0; e < epochs; ++e) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i : order) {
      const double y = rows[i].label == BinaryLabel::kEntails ? 1.0 : 0.0;
      const double g = ProbEntails(rows[i]) - y;
      for (int f : Features(rows[i])) {
        weights_[static_cast<std::size_t>(f)] -= learning_rate * g;
      }
      bias_ -= learning_rate * g;
    }
  }
}

double ToyEntailmentClassifier::Accuracy(std::span<const EntailmentRow> rows) const {
  if (rows.empty()) return 0.0;
  int correct = 0;
  for (const auto& r : rows) {
    const bool predicted = ProbEntails(r) >= 0.5;
    correct += predicted == (r.label == BinaryLabel::kEntails) ? 1 : 0;
  }
  return static_cast<double>(correct) / static_cast<double>(rows.size());
}

}  // namespace relpara
