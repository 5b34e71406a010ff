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

#include "commands.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "manifest.h"
#include "relpara/adversary.h"
#include "relpara/augmentation.h"
#include "relpara/errors.h"
#include "relpara/eval_metrics.h"
#include "relpara/generator.h"
#include "relpara/nli_oracle.h"
#include "relpara/records.h"
#include "relpara/rl_trainer.h"
#include "relpara/scorers.h"
#include "relpara/sick_recast.h"
#include "relpara/synthetic_world.h"
#include "run_config.h"

namespace relpara::cli {
namespace {

namespace fs = std::filesystem;

struct Options {
  std::string config_file;
  std::vector<std::string> sets;
  std::string out;
  std::string sick_dir;
  std::string sick_file;
  std::string group_column;
  std::string input;
  std::string train;
  std::string dev;
  std::string model;
  std::string resume;
  std::string pred;
  std::string refs;
  std::string adversary;
  std::string x;
  std::string y;
  std::string relation;
  std::string decode_mode = "beam";
  std::string relations;
  int k = 0;
  bool aware = false;
  bool no_condition = false;
  bool no_consistency = false;
};

struct Context {
  const Options& opt;
  const RunConfig& config;
  fs::path run_dir;               // empty when the command has none
  Manifest* manifest = nullptr;   // null when run_dir is empty
  std::ostream& out;
  std::ostream& err;

  void Input(const std::string& role, const fs::path& path) const {
    if (!fs::exists(path)) throw MissingInputError(role + " not found: " + path.string());
    if (manifest != nullptr) manifest->AddInput(role, path);
  }
  fs::path Output(const std::string& name) const {
    const fs::path p = run_dir / name;
    if (manifest != nullptr) manifest->AddOutput(p);
    return p;
  }
};

void Require(const std::string& value, const char* flag) {
  if (value.empty()) throw ConfigError(std::string(flag) + " is required");
}

std::unique_ptr<NliBackend> MakeOracle(const Context& ctx) {
  ConceptLexicon lexicon;
  if (!ctx.config.backends.lexicon.empty()) {
    ctx.Input("lexicon", ctx.config.backends.lexicon);
    lexicon = LoadLexicon(ctx.config.backends.lexicon);
  }
  return MakeNliBackend(ctx.config.backends.nli, std::move(lexicon));
}

std::unique_ptr<TransformerGenerator> LoadModel(const Context& ctx, const std::string& dir) {
  Require(dir, "--model");
  ctx.Input("model", dir);
  return TransformerGenerator::Load(dir);
}

// Pairs with optional "y" and "relation" fields; missing ones become empty
// and INVALID.
std::vector<RelationAnnotatedPair> ReadPairs(const Context& ctx, const fs::path& path,
                                             const std::string& role) {
  ctx.Input(role, path);
  const JsonlContents contents = ReadJsonl(path);
  if (contents.malformed > 0) {
    ctx.err << "warning: " << contents.malformed << " unparsable lines in " << path.string()
            << "\n";
  }
  std::vector<RelationAnnotatedPair> pairs;
  pairs.reserve(contents.records.size());
  for (const Json& j : contents.records) {
    if (j.contains("y") && j.contains("relation")) {
      pairs.push_back(AnnotatedPairFromJson(j));
      continue;
    }
    if (!j.contains("x") || !j["x"].is_string()) {
      throw std::invalid_argument("record without a string \"x\" in " + path.string());
    }
    RelationAnnotatedPair p;
    p.pair.x = Tokenize(j["x"].get<std::string>());
    if (p.pair.x.empty()) throw std::invalid_argument("empty source sentence in " + path.string());
    if (j.contains("y")) p.pair.y = Tokenize(j["y"].get<std::string>());
    if (j.contains("relation")) p.relation = ParseRelation(j["relation"].get<std::string>());
    pairs.push_back(std::move(p));
  }
  return pairs;
}

void WriteRows(const fs::path& path, const std::vector<EvalRow>& rows) {
  std::vector<Json> json;
  json.reserve(rows.size());
  for (const EvalRow& r : rows) json.push_back(r.ToJson());
  WriteJsonl(path, json);
}

EvalRow RowFor(const RelationAnnotatedPair& p, const Tokens& y_hat) {
  EvalRow row;
  row.x = JoinTokens(p.pair.x);
  row.y_hat = JoinTokens(y_hat);
  if (!p.pair.y.empty()) row.references = {JoinTokens(p.pair.y)};
  if (IsControlRelation(p.relation)) row.relation = p.relation;
  return row;
}

fs::path FindSickFile(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw MissingInputError("SICK directory not found: " + dir.string());
  if (fs::exists(dir / "SICK.txt")) return dir / "SICK.txt";
  std::vector<fs::path> candidates;
  for (const auto& e : fs::directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    if (e.is_regular_file() && name.find("SICK") != std::string::npos &&
        e.path().extension() == ".txt") {
      candidates.push_back(e.path());
    }
  }
  if (candidates.empty()) throw MissingInputError("no SICK*.txt in " + dir.string());
  std::sort(candidates.begin(), candidates.end());
  return candidates.front();
}

// ---- commands -------------------------------------------------------------

void CmdRecast(const Context& ctx) {
  fs::path file;
  if (!ctx.opt.sick_file.empty()) {
    file = ctx.opt.sick_file;
  } else {
    std::string dir = ctx.opt.sick_dir;
    if (dir.empty()) {
      const char* env = std::getenv(kSickDirEnv);
      if (env != nullptr) dir = env;
    }
    if (dir.empty()) {
      throw ConfigError(std::string("no SICK input: pass --sick-dir or set ") + kSickDirEnv);
    }
    file = FindSickFile(dir);
  }
  ctx.Input("sick", file);
  SickColumns columns;
  if (!ctx.opt.group_column.empty()) columns.group = ctx.opt.group_column;
  const RecastDataset ds = Recast(ReadSickFile(file, columns));
  for (Split s : kAllSplits) {
    const std::string name(SplitName(s));
    WriteAnnotatedPairs(ctx.Output(name + ".jsonl"), ds.split(s).pairs);
    WriteAnnotatedPairs(ctx.Output(name + "_others.jsonl"), ds.split(s).others);
  }
  WriteAnnotatedPairs(ctx.Output("train_filtered.jsonl"),
                      FilterForTraining(ds.split(Split::kTrain), ctx.config.seeds.balance));
  const Json counts = ds.CountsJson();
  WriteJson(ctx.Output("counts.json"), counts);
  WriteJson(ctx.Output("summary.json"),
            {{"counts", counts},
             {"rejects", ds.rejects.size()},
             {"filtered_groups", ds.filtered_groups},
             {"contradictions", ds.contradictions},
             {"split_leaks", FindSplitLeaks(ds).size()}});
  ctx.out << counts.dump() << "\n";
}

void CmdWeakLabel(const Context& ctx) {
  Require(ctx.opt.input, "--input");
  ctx.Input("input", ctx.opt.input);
  const JsonlContents contents = ReadJsonl(ctx.opt.input);
  const auto oracle = MakeOracle(ctx);
  WeakLabelResult result = WeakLabelRecords(contents.records, *oracle);
  WriteAnnotatedPairs(ctx.Output("labeled.jsonl"), result.pairs);
  Json stats = result.stats.ToJson();
  stats["unparsable_lines"] = contents.malformed;
  const std::string& balance = ctx.config.weak_label_balance;
  if (balance != "none") {
    std::vector<RelationAnnotatedPair> control;
    for (const auto& p : result.pairs) {
      if (IsControlRelation(p.relation)) control.push_back(p);
    }
    const auto balanced = BalanceCorpus(
        control, balance == "upsample" ? BalanceMode::kUpsample : BalanceMode::kDownsample,
        ctx.config.seeds.balance);
    WriteAnnotatedPairs(ctx.Output("balanced.jsonl"), balanced);
    stats["balanced"] = balanced.size();
  }
  WriteJson(ctx.Output("stats.json"), stats);
  ctx.out << stats.dump() << "\n";
}

void CmdSynth(const Context& ctx) {
  const SyntheticData& cfg = ctx.config.synthetic;
  const SyntheticWorld world(cfg.world);
  std::seed_seq corpus_seq{static_cast<std::uint32_t>(ctx.config.seeds.init), 1u};
  std::seed_seq dev_seq{static_cast<std::uint32_t>(ctx.config.seeds.init), 2u};
  std::seed_seq test_seq{static_cast<std::uint32_t>(ctx.config.seeds.init), 3u};
  std::mt19937_64 corpus_rng(corpus_seq), dev_rng(dev_seq), test_rng(test_seq);
  std::vector<Json> corpus;
  for (const SentencePair& p : world.ParaphraseCorpus(cfg.corpus_size, corpus_rng)) {
    corpus.push_back({{"x", JoinTokens(p.x)}, {"y", JoinTokens(p.y)}});
  }
  WriteJsonl(ctx.Output("corpus.jsonl"), corpus);
  WriteAnnotatedPairs(ctx.Output("dev.jsonl"), world.ControlSet(cfg.dev_per_relation, dev_rng));
  WriteAnnotatedPairs(ctx.Output("test.jsonl"),
                      world.ControlSet(cfg.test_per_relation, test_rng));
  SaveLexicon(ctx.Output("lexicon.json"), world.lexicon());
  ctx.out << Json{{"corpus", corpus.size()},
                  {"dev", 3 * cfg.dev_per_relation},
                  {"test", 3 * cfg.test_per_relation}}
                 .dump()
          << "\n";
}

void CmdPretrain(const Context& ctx) {
  Require(ctx.opt.train, "--train");
  Require(ctx.opt.dev, "--dev");
  const auto train = ReadPairs(ctx, ctx.opt.train, "train");
  const auto dev = ReadPairs(ctx, ctx.opt.dev, "dev");
  std::vector<Tokens> sentences;
  for (const auto& p : train) {
    sentences.push_back(p.pair.x);
    sentences.push_back(p.pair.y);
  }
  TransformerGenerator generator(Vocabulary::Build(sentences), ctx.config.generator);
  std::unique_ptr<NliBackend> oracle;
  if (ctx.config.pretrain.mode == TrainingMode::kAware) oracle = MakeOracle(ctx);
  const fs::path report = ctx.Output("report.jsonl");
  std::ofstream report_out(report);
  const PretrainResult result = Pretrain(
      generator, train, dev, ctx.config.pretrain, oracle.get(),
      [&](const PretrainEpochReport& r) {
        report_out << r.ToJson().dump() << "\n" << std::flush;
        ctx.err << "epoch " << r.epoch << " train_loss " << r.train_loss << " dev_loss "
                << r.dev_loss << " ibleu " << r.dev.ibleu << "\n";
      });
  generator.Save(ctx.Output("model"));
  const Json summary = {{"best_epoch", result.best_epoch},
                        {"epochs", result.epochs.size()},
                        {"vocab_size", generator.vocab().size()}};
  WriteJson(ctx.Output("result.json"), summary);
  ctx.out << summary.dump() << "\n";
}

void CmdFinetune(const Context& ctx) {
  Require(ctx.opt.train, "--train");
  Require(ctx.opt.dev, "--dev");
  std::unique_ptr<TransformerGenerator> generator;
  if (!ctx.opt.resume.empty()) {
    ctx.Input("resume", ctx.opt.resume);
    generator = TransformerGenerator::Load(ctx.opt.resume);
  } else {
    generator = LoadModel(ctx, ctx.opt.model);
  }
  const auto train = ReadPairs(ctx, ctx.opt.train, "train");
  const auto dev = ReadPairs(ctx, ctx.opt.dev, "dev");
  const auto oracle = MakeOracle(ctx);
  const auto similarity = MakeSimilarityBackend(ctx.config.backends.similarity);
  FinetuneConfig config = ctx.config.finetune;
  config.run_dir = ctx.run_dir;
  Finetuner finetuner(*generator, *oracle, *similarity, config);
  if (!ctx.opt.resume.empty()) finetuner.Resume(ctx.opt.resume);
  const FinetuneResult result =
      finetuner.Run(train, dev, [&](const FinetuneEpochReport& r) {
        ctx.err << "epoch " << r.epoch << " mean_f " << r.mean_f << " dev_consistency "
                << r.dev.r_consistency.value_or(0.0) << " dev_ibleu " << r.dev.ibleu << "\n";
      });
  Json epochs = Json::array();
  for (const auto& e : result.epochs) epochs.push_back(e.ToJson());
  const Json summary = {{"best_epoch", result.best_epoch},
                        {"best_harmonic_mean", result.best_harmonic_mean},
                        {"epochs", epochs}};
  WriteJson(ctx.Output("result.json"), summary);
  ctx.out << Json{{"best_epoch", result.best_epoch},
                  {"best_harmonic_mean", result.best_harmonic_mean}}
                 .dump()
          << "\n";
}

void CmdGenerate(const Context& ctx) {
  Require(ctx.opt.input, "--input");
  const auto generator = LoadModel(ctx, ctx.opt.model);
  const auto pairs = ReadPairs(ctx, ctx.opt.input, "input");
  DecodeMode mode;
  if (ctx.opt.decode_mode == "beam") {
    mode = DecodeMode::kBeam;
  } else if (ctx.opt.decode_mode == "nucleus") {
    mode = DecodeMode::kNucleus;
  } else {
    throw ConfigError("--decode must be beam or nucleus");
  }
  Rng rng(ctx.config.seeds.sampling);
  std::vector<EvalRow> rows;
  for (const auto& p : pairs) {
    std::optional<Relation> control;
    if (ctx.opt.aware) {
      if (!IsControlRelation(p.relation)) {
        throw std::invalid_argument("aware generation needs EQ, FWD or REV on every row");
      }
      control = p.relation;
    }
    rows.push_back(RowFor(p, Generate(*generator, p.pair.x, control, mode,
                                      ctx.config.decode, &rng)));
  }
  WriteRows(ctx.Output("predictions.jsonl"), rows);
  ctx.out << Json{{"rows", rows.size()}}.dump() << "\n";
}

void CmdRerank(const Context& ctx) {
  Require(ctx.opt.input, "--input");
  const auto generator = LoadModel(ctx, ctx.opt.model);
  const auto pairs = ReadPairs(ctx, ctx.opt.input, "input");
  const int k = ctx.opt.k > 0 ? ctx.opt.k : ctx.config.rerank_k;
  const auto oracle = MakeOracle(ctx);
  const auto similarity = MakeSimilarityBackend(ctx.config.backends.similarity);
  std::unique_ptr<HypothesisOnlyAdversary> adversary;
  if (!ctx.opt.adversary.empty()) {
    ctx.Input("adversary", ctx.opt.adversary);
    adversary = HypothesisOnlyAdversary::Load(ctx.opt.adversary);
  }
  const ScorerSet scorers{oracle.get(), similarity.get(), adversary.get()};
  std::vector<EvalRow> rows;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& p = pairs[i];
    const RerankResult r =
        Rerank(*generator, p.pair.x, p.relation, k, !ctx.opt.no_condition, ctx.config.decode,
               ctx.config.reward, scorers, ctx.config.seeds.sampling + i);
    EvalRow row = RowFor(p, r.best);
    row.metrics = {{"best_f", r.best_f},
                   {"best_index", r.best_index},
                   {"k", k},
                   {"failures", r.failures}};
    rows.push_back(std::move(row));
  }
  WriteRows(ctx.Output("predictions.jsonl"), rows);
  const EvalMetrics m = Evaluate(rows, oracle.get());
  WriteJson(ctx.Output("metrics.json"), m.ToJson());
  ctx.out << m.ToJson().dump() << "\n";
}

void CmdEvaluate(const Context& ctx) {
  Require(ctx.opt.pred, "--pred");
  ctx.Input("pred", ctx.opt.pred);
  const JsonlContents pred = ReadJsonl(ctx.opt.pred);
  if (pred.malformed > 0) throw std::invalid_argument("unparsable lines in --pred");
  std::vector<EvalRow> rows;
  if (ctx.opt.refs.empty()) {
    for (const Json& j : pred.records) rows.push_back(EvalRow::FromJson(j));
  } else {
    const auto refs = ReadPairs(ctx, ctx.opt.refs, "refs");
    if (refs.size() != pred.records.size()) {
      throw std::invalid_argument("--pred and --refs differ in length");
    }
    for (std::size_t i = 0; i < refs.size(); ++i) {
      const Json& j = pred.records[i];
      const std::string y_hat =
          j.is_string() ? j.get<std::string>() : j.at("y_hat").get<std::string>();
      rows.push_back(RowFor(refs[i], Tokenize(y_hat)));
      rows.back().y_hat = y_hat;
    }
  }
  std::unique_ptr<NliBackend> oracle;
  if (!ctx.opt.no_consistency) oracle = MakeOracle(ctx);
  const Json metrics = Evaluate(rows, oracle.get()).ToJson();
  if (ctx.manifest != nullptr) WriteJson(ctx.Output("metrics.json"), metrics);
  ctx.out << metrics.dump() << "\n";
}

std::set<Relation> RelationsFrom(const Context& ctx) {
  if (ctx.opt.relations.empty()) return ctx.config.augment_relations;
  std::set<Relation> out;
  std::stringstream ss(ctx.opt.relations);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const Relation r = ParseRelation(item);
    if (!IsControlRelation(r)) throw ConfigError("--relations takes EQ, FWD and REV only");
    out.insert(r);
  }
  return out;
}

void CmdAugment(const Context& ctx) {
  Require(ctx.opt.input, "--input");
  const auto generator = LoadModel(ctx, ctx.opt.model);
  ctx.Input("input", ctx.opt.input);
  const JsonlContents contents = ReadJsonl(ctx.opt.input);
  std::vector<EntailmentRow> rows;
  for (const Json& j : contents.records) rows.push_back(EntailmentRow::FromJson(j));
  const TrainingMode mode = ctx.config.augment_mode;
  GeneratorParaphraser paraphraser(*generator, ctx.config.decode,
                                   mode == TrainingMode::kAware);
  const AugmentationResult result =
      GenerateAugmentations(rows, paraphraser, RelationsFrom(ctx), mode);
  std::vector<Json> out;
  for (const auto& r : result.rows) out.push_back(r.ToJson());
  WriteJsonl(ctx.Output("augmented.jsonl"), out);
  WriteJson(ctx.Output("stats.json"), result.StatsJson());
  ctx.out << result.StatsJson().dump() << "\n";
}

void CmdExportAdversarial(const Context& ctx) {
  Require(ctx.opt.input, "--input");
  ctx.Input("input", ctx.opt.input);
  const JsonlContents contents = ReadJsonl(ctx.opt.input);
  std::vector<EntailmentRow> rows;
  for (const Json& j : contents.records) rows.push_back(EntailmentRow::FromJson(j));
  const auto oracle = MakeOracle(ctx);
  const auto candidates = FindAdversarialCandidates(rows, *oracle);
  WriteAdversarialCsv(ctx.Output("adversarial.csv"), candidates);
  ctx.out << Json{{"rows", rows.size()}, {"candidates", candidates.size()}}.dump() << "\n";
}

Json TupleJson(const ScoreTuple& t) {
  return {{"r_s", t.r_s}, {"r_d", t.r_d}, {"r_l", t.r_l}, {"p_l", t.p_l}};
}

void CmdScore(const Context& ctx) {
  Require(ctx.opt.x, "--x");
  Require(ctx.opt.y, "--y");
  Require(ctx.opt.relation, "--relation");
  const Relation relation = ParseRelation(ctx.opt.relation);
  const Tokens x = Tokenize(ctx.opt.x);
  const Tokens y = Tokenize(ctx.opt.y);
  const auto oracle = MakeOracle(ctx);
  const auto similarity = MakeSimilarityBackend(ctx.config.backends.similarity);
  std::unique_ptr<HypothesisOnlyAdversary> adversary;
  if (!ctx.opt.adversary.empty()) {
    ctx.Input("adversary", ctx.opt.adversary);
    adversary = HypothesisOnlyAdversary::Load(ctx.opt.adversary);
  }
  const ScoreTuple raw = ScoreRaw(x, y, relation, {oracle.get(), similarity.get(), adversary.get()});
  const ScoreTuple th = ApplyThresholds(raw, ctx.config.reward);
  const Json result = {{"raw", TupleJson(raw)},
                       {"thresholded", TupleJson(th)},
                       {"f", WeightedScore(th, ctx.config.reward)},
                       {"oracle_relation", RelationName(ComputeOracleVerdict(x, y, *oracle).relation)}};
  if (ctx.manifest != nullptr) WriteJson(ctx.Output("score.json"), result);
  ctx.out << result.dump() << "\n";
}

struct Command {
  const char* name;
  const char* help;
  bool needs_run_dir;
  std::function<void(const Context&)> run;
};

const std::vector<Command>& Commands() {
  static const std::vector<Command> kCommands = {
      {"recast", "Recast SICK into relation-annotated paraphrase pairs", true, CmdRecast},
      {"weak-label", "Label paraphrase pairs with the NLI oracle", true, CmdWeakLabel},
      {"synth", "Write a synthetic-world corpus, dev/test sets and lexicon", true, CmdSynth},
      {"pretrain", "Supervised pre-training of a generator", true, CmdPretrain},
      {"finetune", "Reinforcement fine-tuning with the adversary", true, CmdFinetune},
      {"generate", "Decode paraphrases", true, CmdGenerate},
      {"rerank", "Sample k paraphrases and keep the best-scored one", true, CmdRerank},
      {"evaluate", "BLEU, Diversity, iBLEU and R-Consistency of predictions", false,
       CmdEvaluate},
      {"augment", "Paraphrastic augmentation of binary entailment data", true, CmdAugment},
      {"export-adversarial", "CSV of augmentations whose relation looks wrong", true,
       CmdExportAdversarial},
      {"score", "Raw and thresholded reward components for one pair", false, CmdScore},
  };
  return kCommands;
}

void AddOptions(CLI::App& sub, Options& o, const std::string& name) {
  sub.add_option("-c,--config", o.config_file, "JSON run config");
  sub.add_option("--set", o.sets, "Override a config key: key.path=value")->take_all();
  sub.add_option("-o,--out", o.out, "Run directory");
  if (name == "recast") {
    sub.add_option("--sick-dir", o.sick_dir, "SICK distribution directory");
    sub.add_option("--sick-file", o.sick_file, "SICK tab-separated file");
    sub.add_option("--group-column", o.group_column, "Transformation-group column name");
  }
  if (name == "weak-label" || name == "generate" || name == "rerank" || name == "augment" ||
      name == "export-adversarial") {
    sub.add_option("-i,--input", o.input, "Input JSONL");
  }
  if (name == "pretrain" || name == "finetune") {
    sub.add_option("--train", o.train, "Training pairs JSONL");
    sub.add_option("--dev", o.dev, "Dev pairs JSONL");
  }
  if (name == "finetune" || name == "generate" || name == "rerank" || name == "augment") {
    sub.add_option("-m,--model", o.model, "Generator directory");
  }
  if (name == "finetune") {
    sub.add_option("--resume", o.resume, "Resume from a run_dir/epoch_k checkpoint");
  }
  if (name == "generate") {
    sub.add_option("--decode", o.decode_mode, "beam or nucleus");
    sub.add_flag("--aware", o.aware, "Condition on each row's relation");
  }
  if (name == "rerank") {
    sub.add_option("-k,--k", o.k, "Pool size (default: rerank.k)");
    sub.add_flag("--no-condition", o.no_condition, "Do not prepend the control token");
  }
  if (name == "rerank" || name == "score") {
    sub.add_option("--adversary", o.adversary, "Adversary directory");
  }
  if (name == "evaluate") {
    sub.add_option("--pred", o.pred, "Predictions JSONL (EvalRows, or y_hat rows with --refs)");
    sub.add_option("--refs", o.refs, "Reference pairs JSONL aligned with --pred");
    sub.add_flag("--no-consistency", o.no_consistency, "Skip R-Consistency");
  }
  if (name == "augment") {
    sub.add_option("--relations", o.relations, "Comma-separated subset of EQ,FWD,REV");
  }
  if (name == "score") {
    sub.add_option("--x", o.x, "Source sentence");
    sub.add_option("--y", o.y, "Paraphrase");
    sub.add_option("--relation", o.relation, "EQ, FWD or REV");
  }
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"relpara: relation-aware paraphrase generation"};
  app.require_subcommand(1, 1);
  Options options;
  std::map<std::string, CLI::App*> subs;
  for (const Command& c : Commands()) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    AddOptions(*sub, options, c.name);
    subs[c.name] = sub;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: ConfigError: " << e.what() << "\n";
    return kExitConfig;
  }
  const Command* command = nullptr;
  for (const Command& c : Commands()) {
    if (subs[c.name]->parsed()) command = &c;
  }

  std::vector<std::string> args(argv, argv + argc);
  std::unique_ptr<Manifest> manifest;
  const auto fail = [&](const char* type, const std::exception& e, int code) {
    err << "error: " << type << ": " << e.what() << "\n";
    if (manifest != nullptr) manifest->Fail(type, e.what());
    return code;
  };
  try {
    const RunConfig config = LoadRunConfig(options.config_file, options.sets);
    fs::path run_dir = options.out;
    if (command->name == std::string("finetune") && !options.resume.empty()) {
      // Checkpoints continue in the run directory that holds epoch_k.
      const fs::path parent = fs::path(options.resume).parent_path();
      if (!run_dir.empty() && fs::weakly_canonical(run_dir) != fs::weakly_canonical(parent)) {
        throw ConfigError("--out must be the run directory of the --resume checkpoint");
      }
      run_dir = parent;
    }
    if (run_dir.empty() && command->needs_run_dir) {
      throw ConfigError(std::string(command->name) + " needs --out");
    }
    if (!run_dir.empty()) {
      manifest = std::make_unique<Manifest>(run_dir, command->name, args, config.ToJson());
    }
    const Context ctx{options, config, run_dir, manifest.get(), out, err};
    command->run(ctx);
    if (manifest != nullptr) manifest->Finish();
    return kExitOk;
  } catch (const ConfigError& e) {
    return fail("ConfigError", e, kExitConfig);
  } catch (const std::invalid_argument& e) {
    return fail("ConfigError", e, kExitConfig);
  } catch (const MissingInputError& e) {
    return fail("MissingInputError", e, kExitMissingInput);
  } catch (const BackendError& e) {
    return fail("BackendError", e, kExitBackend);
  } catch (const DecodeError& e) {
    return fail("DecodeError", e, kExitOther);
  } catch (const std::exception& e) {
    return fail("Error", e, kExitOther);
  }
}

}  // namespace relpara::cli
