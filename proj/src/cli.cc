/*
 * Copyright 2026 The fakescope Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "fakescope/cli.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "fakescope/corpus.h"
#include "fakescope/cost.h"
#include "fakescope/csv.h"
#include "fakescope/features.h"
#include "fakescope/learn.h"
#include "fakescope/metrics.h"
#include "fakescope/random.h"
#include "fakescope/resample.h"
#include "fakescope/rules.h"
#include "fakescope/sensitivity.h"
#include "fakescope/synth.h"
#include "fakescope/validation.h"
#include "json.hpp"

namespace fakescope::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kManifestName = "manifest.json";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string Hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Options every command accepts.
struct Common {
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "csv";
  int jobs = 1;
};

// Options of commands that read a corpus directory.
struct CorpusFlags {
  std::string dir;
  std::string input_format = "auto";
  std::string reference_time;
};

struct ParamFlags {
  learn::TrainParams params;
  std::string prune = "none";
};

std::uint64_t ResolveSeed(const Common& c) {
  if (c.seed) return *c.seed;
  const char* env = std::getenv("FAKESCOPE_SEED");
  if (env == nullptr || *env == '\0') return 0;
  std::uint64_t v = 0;
  const std::string_view s(env);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw UsageError("FAKESCOPE_SEED must be an unsigned integer, got '" + std::string(s) + "'");
  }
  return v;
}

// Collects the artifacts of one command run and writes its manifest.
class Session {
 public:
  Session(std::string command, std::vector<std::string> argv, const Common& common,
          std::ostream& out)
      : command_(std::move(command)),
        argv_(std::move(argv)),
        out_dir_(common.out),
        out_(out) {}

  bool has_out() const { return !out_dir_.empty(); }
  json& parameters() { return parameters_; }

  void AddInput(const fs::path& path) {
    inputs_.push_back({{"path", path.generic_string()}, {"fnv1a64", FileDigest(path)}});
  }

  // Writes `content` to <out>/<name>. Without --out the primary artifact
  // goes to stdout and the others are dropped.
  void Emit(const std::string& name, const std::string& content, bool primary) {
    if (!has_out()) {
      if (primary) out_ << content;
      return;
    }
    const fs::path path = fs::path(out_dir_) / name;
    WriteArtifact(path, content);
    outputs_.push_back({{"path", name}, {"fnv1a64", Hex64(HashString(content))}});
  }

  // Records files some library call already wrote under --out.
  void RecordOutput(const fs::path& path) {
    outputs_.push_back({{"path", fs::relative(path, out_dir_).generic_string()},
                        {"fnv1a64", FileDigest(path)}});
  }

  void Finish(std::uint64_t seed) {
    if (!has_out()) return;
    json manifest = {{"tool", "fakescope"},
                     {"version", FAKESCOPE_VERSION},
                     {"command", command_},
                     {"argv", argv_},
                     {"parameters", parameters_},
                     {"seed", seed},
                     {"inputs", inputs_},
                     {"outputs", outputs_}};
    WriteArtifact(fs::path(out_dir_) / kManifestName, manifest.dump(2) + "\n");
  }

 private:
  static void WriteArtifact(const fs::path& path, const std::string& content) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw DataError("cannot write '" + path.string() + "'");
    f << content;
    if (!f) throw DataError("failed writing '" + path.string() + "'");
  }

  std::string command_;
  std::vector<std::string> argv_;
  std::string out_dir_;
  std::ostream& out_;
  json parameters_ = json::object();
  json inputs_ = json::array();
  json outputs_ = json::array();
};

corpus::Format InputFormat(const fs::path& dir, const std::string& flag) {
  if (flag == "auto") {
    return fs::exists(dir / "users.jsonl") ? corpus::Format::kJson : corpus::Format::kCsv;
  }
  return corpus::ParseFormat(flag);
}

corpus::Dataset LoadCorpus(Session& session, const CorpusFlags& flags, bool validate = true) {
  const fs::path dir(flags.dir);
  if (!fs::is_directory(dir)) {
    throw DataError("corpus directory '" + flags.dir + "' does not exist");
  }
  const corpus::Format format = InputFormat(dir, flags.input_format);
  const corpus::CorpusPaths paths = corpus::CorpusPaths::InDirectory(dir, format);
  if (!fs::exists(paths.users)) {
    throw DataError("missing users file '" + paths.users.string() + "'");
  }
  session.AddInput(paths.users);
  for (const auto& p : {paths.tweets, paths.edges, paths.neighbors, paths.meta}) {
    if (p) session.AddInput(*p);
  }
  corpus::LoadOptions options;
  options.validate = validate;
  if (!flags.reference_time.empty()) {
    try {
      options.reference_time = ParseTimestamp(flags.reference_time);
    } catch (const std::invalid_argument& e) {
      throw UsageError("--reference-time: " + std::string(e.what()));
    }
  }
  return corpus::LoadDataset(paths, format, options);
}

std::vector<features::FeatureSpec> ResolveFeatures(const std::string& text) {
  try {
    return features::NamedFeatureSet(text);
  } catch (const std::invalid_argument&) {
  }
  std::vector<features::FeatureSpec> specs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = Trim(item);
    if (!item.empty()) specs.push_back(features::FindFeature(item));
  }
  if (specs.empty()) throw UsageError("--features: no features given");
  return specs;
}

std::vector<std::string> FeatureIds(const std::vector<features::FeatureSpec>& specs) {
  std::vector<std::string> ids;
  for (const auto& s : specs) ids.push_back(s.id);
  return ids;
}

std::string Ext(const Common& c) { return c.format == "json" ? ".json" : ".csv"; }

void AddCommon(CLI::App* cmd, Common& c, bool out_required) {
  cmd->add_option("--seed", c.seed, "Master seed (default: $FAKESCOPE_SEED, else 0)");
  CLI::Option* out = cmd->add_option("--out", c.out, "Output directory");
  if (out_required) out->required();
  cmd->add_option("--format", c.format, "Report format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--jobs", c.jobs, "Worker threads; results do not depend on it")
      ->check(CLI::PositiveNumber);
}

void AddCorpus(CLI::App* cmd, CorpusFlags& f, const std::string& name = "corpus") {
  cmd->add_option(name, f.dir, "Corpus directory")->required();
  cmd->add_option("--input-format", f.input_format, "Corpus format (auto picks json when users.jsonl exists)")
      ->check(CLI::IsMember({"auto", "csv", "json"}));
  cmd->add_option("--reference-time", f.reference_time,
                  "Reference time for account ages (ISO-8601)");
}

void AddParams(CLI::App* cmd, ParamFlags& f) {
  learn::TrainParams& p = f.params;
  cmd->add_option("--min-leaf", p.min_leaf, "Tree: minimum samples per leaf")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-depth", p.max_depth, "Tree: depth limit, 0 for none")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--prune", f.prune, "Tree pruning")
      ->check(CLI::IsMember({"none", "reduced-error", "subtree-raising"}));
  cmd->add_option("--prune-folds", p.prune.folds, "Reduced-error pruning: 1/folds held out")
      ->check(CLI::Range(2, 100));
  cmd->add_option("--confidence", p.prune.confidence, "Subtree raising: confidence factor")
      ->check(CLI::Range(1e-6, 0.5));
  cmd->add_option("--trees", p.trees, "Forest size")->check(CLI::PositiveNumber);
  cmd->add_option("--forest-min-leaf", p.forest_min_leaf, "Forest: minimum samples per leaf")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--mtry", p.mtry, "Forest: features per split, 0 for sqrt")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--rounds", p.rounds, "AdaBoost rounds")->check(CLI::PositiveNumber);
  cmd->add_option("--base-depth", p.base_depth, "AdaBoost: weak learner depth")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--neighbors", p.k, "k-NN: neighbors")->check(CLI::PositiveNumber);
  cmd->add_option("--lambda", p.lambda, "Logistic regression: L2 penalty")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--max-iterations", p.max_iterations, "Logistic regression: iteration cap")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tolerance", p.tolerance, "Logistic regression: gradient tolerance")
      ->check(CLI::PositiveNumber);
}

learn::TrainParams ResolveParams(const ParamFlags& f, const Common& c) {
  learn::TrainParams p = f.params;
  p.prune.strategy = learn::ParsePruneStrategy(f.prune);
  p.jobs = c.jobs;
  return p;
}

std::string MetricsLine(const metrics::MetricsReport& m) {
  std::ostringstream s;
  s << "accuracy=" << FormatDouble(m.accuracy) << " precision=" << FormatDouble(m.precision)
    << " recall=" << FormatDouble(m.recall) << " f_measure=" << FormatDouble(m.f_measure)
    << " mcc=" << FormatDouble(m.mcc);
  if (m.auc) s << " auc=" << FormatDouble(*m.auc);
  return s.str();
}

json MetricsJson(const metrics::MetricsReport& m) {
  json j = {{"accuracy", m.accuracy},
            {"precision", m.precision},
            {"recall", m.recall},
            {"f_measure", m.f_measure},
            {"mcc", m.mcc}};
  j["auc"] = m.auc ? json(*m.auc) : json(nullptr);
  return j;
}

// ---------------------------------------------------------------------------
// Commands. Each returns an exit code and may throw DataError or UsageError.

int CmdIngest(Session& s, const Common& c, const CorpusFlags& in, std::ostream& out) {
  std::error_code ec;
  if (fs::weakly_canonical(c.out, ec) == fs::weakly_canonical(in.dir, ec)) {
    throw UsageError("--out must differ from the input corpus directory");
  }
  const corpus::Dataset d = LoadCorpus(s, in);
  s.parameters()["input_format"] = in.input_format;
  s.parameters()["format"] = c.format;
  const corpus::Format format =
      c.format == "json" ? corpus::Format::kJson : corpus::Format::kCsv;
  for (const fs::path& p : corpus::SaveDataset(d, c.out, format)) s.RecordOutput(p);
  out << "ingested " << d.size() << " accounts (" << d.CountLabel(Label::kHuman)
      << " human, " << d.CountLabel(Label::kFake) << " fake), " << d.tweet_count()
      << " tweets, " << d.graph().edges().size() << " edges\n";
  return kExitOk;
}

int CmdValidate(Session& s, const Common& c, const CorpusFlags& in, std::ostream& out) {
  const corpus::Dataset d = LoadCorpus(s, in, /*validate=*/false);
  const corpus::ValidationReport report = corpus::Validate(d);
  std::ostringstream file;
  if (c.format == "json") {
    json v = json::array();
    for (const auto& x : report.violations) v.push_back({{"code", x.code}, {"message", x.message}});
    file << json({{"ok", report.ok()}, {"accounts", d.size()}, {"violations", v}}).dump(2)
         << "\n";
  } else {
    WriteCsvRow(file, {"code", "message"});
    for (const auto& x : report.violations) WriteCsvRow(file, {x.code, x.message});
  }
  s.Emit("validation" + Ext(c), file.str(), false);
  if (report.ok()) {
    out << "ok: " << d.size() << " accounts, " << d.tweet_count() << " tweets, "
        << d.graph().edges().size() << " edges\n";
    return kExitOk;
  }
  for (const auto& x : report.violations) out << x.code << ": " << x.message << "\n";
  out << report.violations.size() << " violation(s)\n";
  return kExitData;
}

int CmdSynth(Session& s, const Common& c, std::uint64_t seed, const std::string& preset,
             std::optional<std::size_t> humans, std::optional<std::size_t> fakes,
             std::ostream& out) {
  corpus::SynthConfig config;
  try {
    config = corpus::PresetConfig(preset, seed);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (humans) config.n_humans = *humans;
  if (fakes) config.n_fakes = *fakes;
  s.parameters()["preset"] = preset;
  s.parameters()["humans"] = config.n_humans;
  s.parameters()["fakes"] = config.n_fakes;
  s.parameters()["format"] = c.format;
  const corpus::Dataset d = corpus::Synthesize(config);
  const corpus::Format format =
      c.format == "json" ? corpus::Format::kJson : corpus::Format::kCsv;
  for (const fs::path& p : corpus::SaveDataset(d, c.out, format)) s.RecordOutput(p);
  out << "synthesized " << d.size() << " accounts (" << config.n_humans << " human, "
      << config.n_fakes << " fake), " << d.tweet_count() << " tweets, "
      << d.graph().edges().size() << " edges\n";
  return kExitOk;
}

json RuleReportJson(const std::vector<rules::RuleReportRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"rule", r.rule.id.Name()},
                   {"description", r.rule.description},
                   {"metrics", MetricsJson(r.metrics)},
                   {"i_gain", r.i_gain},
                   {"i_gain_star", r.i_gain_star},
                   {"pcc", r.pcc},
                   {"pcc_star", r.pcc_star},
                   {"degenerate", r.degenerate}});
  }
  return out;
}

std::string VerdictsCsv(const rules::VerdictTable& t) {
  std::ostringstream s;
  std::vector<std::string> header = {"id", "label"};
  for (const auto& r : t.rules) header.push_back(r.id.Name());
  if (!t.cc.empty()) {
    for (const char* h : {"human_points", "bot_points", "score", "verdict"}) header.push_back(h);
  }
  WriteCsvRow(s, header);
  for (std::size_t a = 0; a < t.ids.size(); ++a) {
    std::vector<std::string> row = {std::to_string(t.ids[a]), std::string(LabelName(t.labels[a]))};
    for (const auto& o : t.outcomes[a]) row.push_back(o.satisfied ? "1" : "0");
    if (!t.cc.empty()) {
      const rules::CcScore& cc = t.cc[a];
      row.push_back(std::to_string(cc.human_points));
      row.push_back(std::to_string(cc.bot_points));
      row.push_back(std::to_string(cc.score));
      row.push_back(std::string(rules::VerdictName(rules::VerdictForScore(cc.score))));
    }
    WriteCsvRow(s, row);
  }
  return s.str();
}

std::string VerdictsJson(const rules::VerdictTable& t) {
  json accounts = json::array();
  for (std::size_t a = 0; a < t.ids.size(); ++a) {
    json satisfied = json::object();
    for (std::size_t r = 0; r < t.rules.size(); ++r) {
      satisfied[t.rules[r].id.Name()] = t.outcomes[a][r].satisfied;
    }
    json j = {{"id", t.ids[a]}, {"label", LabelName(t.labels[a])}, {"rules", satisfied}};
    if (!t.cc.empty()) {
      const rules::CcScore& cc = t.cc[a];
      j["human_points"] = cc.human_points;
      j["bot_points"] = cc.bot_points;
      j["score"] = cc.score;
      j["verdict"] = rules::VerdictName(rules::VerdictForScore(cc.score));
    }
    accounts.push_back(j);
  }
  return json({{"ruleset", rules::RuleSetName(t.set)}, {"accounts", accounts}}).dump(2) + "\n";
}

int CmdRules(Session& s, const Common& c, const CorpusFlags& in, const std::string& ruleset,
             bool report, std::ostream& out) {
  const corpus::Dataset d = LoadCorpus(s, in);
  s.parameters()["ruleset"] = ruleset;
  s.parameters()["report"] = report;
  std::optional<rules::RuleSet> only;
  if (ruleset != "all") only = rules::ParseRuleSet(ruleset);
  if (report) {
    const auto rows = rules::RuleReport(d, {}, c.jobs, only);
    std::ostringstream file;
    if (c.format == "json") {
      file << RuleReportJson(rows).dump(2) << "\n";
    } else {
      rules::WriteRuleReportCsv(file, rows);
    }
    s.Emit("rule_report" + Ext(c), file.str(), false);
    rules::WriteRuleReportTable(out, rows);
    return kExitOk;
  }
  std::vector<rules::RuleSet> sets;
  if (only) {
    sets.push_back(*only);
  } else {
    sets = {rules::RuleSet::kCC, rules::RuleSet::kSOS, rules::RuleSet::kSB};
  }
  for (const rules::RuleSet set : sets) {
    const rules::VerdictTable t = rules::RunRuleset(set, d, {}, c.jobs);
    const std::string name = "verdicts_" + std::string(rules::RuleSetName(set)) + Ext(c);
    s.Emit(name, c.format == "json" ? VerdictsJson(t) : VerdictsCsv(t), false);
    if (!t.cc.empty()) {
      std::size_t n[3] = {0, 0, 0};
      for (const auto& cc : t.cc) ++n[static_cast<int>(rules::VerdictForScore(cc.score))];
      out << "cc: human=" << n[0] << " neutral=" << n[1] << " bot=" << n[2] << "\n";
    } else {
      std::size_t fired = 0;
      for (const auto& row : t.outcomes) {
        for (std::size_t r = 0; r < row.size(); ++r) {
          const bool fake_side = t.rules[r].direction == rules::Direction::kSatisfiedMeansFake;
          if (row[r].satisfied == fake_side) {
            ++fired;
            break;
          }
        }
      }
      out << rules::RuleSetName(set) << ": " << fired << " of " << t.ids.size()
          << " accounts flagged by at least one rule\n";
    }
  }
  return kExitOk;
}

int CmdFeatures(Session& s, const Common& c, const CorpusFlags& in,
                const std::string& feature_class, const std::string& set, std::ostream& out) {
  if (!feature_class.empty() && !set.empty()) {
    throw UsageError("--class and --features are mutually exclusive");
  }
  std::vector<features::FeatureSpec> specs;
  if (!feature_class.empty()) {
    specs = features::NamedFeatureSet(feature_class == "all" ? "all" : "class-" + feature_class);
  } else {
    specs = ResolveFeatures(set.empty() ? "all" : set);
  }
  const corpus::Dataset d = LoadCorpus(s, in);
  s.parameters()["features"] = FeatureIds(specs);
  features::ExtractOptions options;
  options.jobs = c.jobs;
  const features::FeatureMatrix m = features::Extract(d, specs, options);
  std::ostringstream file;
  if (c.format == "json") {
    features::WriteMatrixJsonl(file, m);
    s.Emit("features.jsonl", file.str(), true);
  } else {
    features::WriteMatrixCsv(file, m);
    s.Emit("features.csv", file.str(), true);
  }
  if (s.has_out()) {
    out << "extracted " << m.cols() << " features for " << m.rows() << " accounts\n";
  }
  return kExitOk;
}

features::FeatureMatrix ExtractFor(const corpus::Dataset& d,
                                   const std::vector<features::FeatureSpec>& specs, int jobs) {
  features::ExtractOptions options;
  options.jobs = jobs;
  return features::Extract(d, specs, options);
}

int CmdTrain(Session& s, const Common& c, std::uint64_t seed, const CorpusFlags& in,
             const std::string& algo, const std::string& feature_set, const ParamFlags& pf,
             std::ostream& out) {
  const learn::Algorithm algorithm = learn::ParseAlgorithm(algo);
  const auto specs = ResolveFeatures(feature_set);
  const learn::TrainParams params = ResolveParams(pf, c);
  const corpus::Dataset d = LoadCorpus(s, in);
  s.parameters()["algorithm"] = algo;
  s.parameters()["features"] = FeatureIds(specs);
  s.parameters()["params"] = json::parse(learn::TrainParamsJson(params));
  const features::FeatureMatrix m = ExtractFor(d, specs, c.jobs);
  const learn::TrainedModel model = learn::Train(algorithm, m, params, seed);
  s.Emit("model.json", model.ToJson(), true);
  if (s.has_out()) {
    out << "trained " << algo << " on " << m.rows() << " accounts, " << m.cols()
        << " features\n";
    if (algorithm == learn::Algorithm::kDT) {
      const learn::TreeStats st = learn::ComputeTreeStats(model.tree());
      out << "tree: " << st.nodes << " nodes, " << st.leaves << " leaves, height "
          << st.height << "\n";
    }
  }
  return kExitOk;
}

int CmdPredict(Session& s, const Common& c, const CorpusFlags& in, const std::string& model_path,
               std::ostream& out) {
  s.AddInput(model_path);
  const learn::TrainedModel model = [&] {
    try {
      return learn::TrainedModel::FromJson(ReadFile(model_path));
    } catch (const DataError&) {
      throw;
    } catch (const std::exception& e) {
      throw DataError("model '" + model_path + "': " + e.what());
    }
  }();
  std::vector<features::FeatureSpec> specs;
  for (const std::string& name : model.features()) specs.push_back(features::FindFeature(name));
  const corpus::Dataset d = LoadCorpus(s, in);
  const features::FeatureMatrix m = ExtractFor(d, specs, c.jobs);
  const auto predictions = model.PredictAll(m);
  std::ostringstream file;
  WriteCsvRow(file, {"id", "label", "predicted", "score"});
  metrics::ConfusionMatrix cm;
  bool labeled = true;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    WriteCsvRow(file, {std::to_string(m.ids[r]), std::string(LabelName(m.labels[r])),
                       std::string(LabelName(predictions[r].label)),
                       FormatDouble(predictions[r].score)});
    if (m.labels[r] == Label::kUnlabeled) {
      labeled = false;
    } else {
      cm.Add(m.labels[r], predictions[r].label);
    }
  }
  s.Emit("predictions.csv", file.str(), true);
  if (s.has_out() && labeled && m.rows() > 0) {
    out << MetricsLine(metrics::Summarize(cm)) << "\n";
  }
  return kExitOk;
}

int CmdCv(Session& s, const Common& c, std::uint64_t seed, const CorpusFlags& in,
          const std::string& algo, const std::string& feature_set, std::size_t k,
          const ParamFlags& pf, std::ostream& out) {
  const learn::Algorithm algorithm = learn::ParseAlgorithm(algo);
  const auto specs = ResolveFeatures(feature_set);
  const learn::TrainParams params = ResolveParams(pf, c);
  const corpus::Dataset d = LoadCorpus(s, in);
  s.parameters()["algorithm"] = algo;
  s.parameters()["features"] = FeatureIds(specs);
  s.parameters()["k"] = k;
  s.parameters()["params"] = json::parse(learn::TrainParamsJson(params));
  const learn::CvReport report =
      learn::CrossValidate(algorithm, d, specs, k, seed, params, c.jobs);
  if (c.format == "json") {
    s.Emit("cv.json", learn::CvJson(report), false);
  } else {
    std::ostringstream file;
    learn::WriteCvCsv(file, report);
    s.Emit("cv.csv", file.str(), false);
  }
  std::ostringstream roc;
  learn::WriteRocCsv(roc, report.roc);
  s.Emit("roc.csv", roc.str(), false);
  std::ostringstream pred;
  learn::WritePredictionsCsv(pred, report);
  s.Emit("predictions.csv", pred.str(), false);
  out << algo << " " << k << "-fold: " << MetricsLine(report.metrics) << "\n";
  return kExitOk;
}

int CmdSweep(Session& s, const Common& c, std::uint64_t seed, const CorpusFlags& in,
             const std::string& algo, const std::string& feature_set,
             const std::string& fractions_text, std::optional<std::size_t> size, std::size_t k,
             std::size_t repeats, const ParamFlags& pf, std::ostream& out) {
  const learn::Algorithm algorithm = learn::ParseAlgorithm(algo);
  const auto specs = ResolveFeatures(feature_set);
  const learn::TrainParams params = ResolveParams(pf, c);
  std::vector<double> fractions;
  try {
    fractions = learn::ParseFractions(fractions_text);
  } catch (const std::invalid_argument& e) {
    throw UsageError("--fractions: " + std::string(e.what()));
  }
  const corpus::Dataset d = LoadCorpus(s, in);
  const std::size_t target = size ? *size : learn::MaxSweepSize(d, fractions);
  if (target < 2 * k) throw DataError("corpus too small for the requested mixtures");
  s.parameters()["algorithm"] = algo;
  s.parameters()["features"] = FeatureIds(specs);
  s.parameters()["fractions"] = fractions;
  s.parameters()["size"] = target;
  s.parameters()["k"] = k;
  s.parameters()["repeats"] = repeats;
  s.parameters()["params"] = json::parse(learn::TrainParamsJson(params));
  const learn::SweepReport report = learn::ClassDistributionSweep(
      d, algorithm, specs, fractions, target, k, seed, params, c.jobs, repeats);
  if (c.format == "json") {
    s.Emit("sweep.json", learn::SweepJson(report), false);
  } else {
    std::ostringstream file;
    learn::WriteSweepCsv(file, report);
    s.Emit("sweep.csv", file.str(), false);
  }
  out << "mixtures of " << target << " accounts\n";
  for (const auto& e : report.entries) {
    out << "human fraction " << FormatDouble(e.human_fraction) << ": "
        << MetricsLine(e.metrics) << "\n";
  }
  for (const auto& [metric, fraction] : report.best_fraction) {
    out << "best " << metric << " at human fraction " << FormatDouble(fraction) << "\n";
  }
  return kExitOk;
}

struct CostFlags {
  std::optional<std::int64_t> followers;
  std::int64_t tweets = 0;
  std::optional<std::int64_t> relations;
  std::optional<std::int64_t> friends;
  std::optional<std::int64_t> follower_followers;
  std::string stats;
  std::string features;
  cost::PageSizes pages;
  cost::RateLimits rates;
};

std::vector<cost::FollowerStats> ReadFollowerStats(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read '" + path + "'");
  CsvTable table(ReadCsv(in, path), path);
  const std::size_t ct = table.column("tweets");
  const std::size_t cf = table.column("friends");
  const std::size_t cg = table.column("followers");
  std::vector<cost::FollowerStats> out;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const CsvRow& row = table.record(i);
    auto field = [&](std::size_t col, const char* name) {
      const std::string& text = col < row.fields.size() ? row.fields[col] : std::string();
      std::int64_t v = 0;
      const auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      if (ec != std::errc() || p != text.data() + text.size() || v < 0) {
        throw DataError(path + ":" + std::to_string(row.line) + ": column " + name +
                        " must be a non-negative integer, got '" + text + "'");
      }
      return v;
    };
    out.push_back({field(ct, "tweets"), field(cf, "friends"), field(cg, "followers")});
  }
  return out;
}

int CmdCost(Session& s, const Common& c, const CostFlags& f, std::ostream& out) {
  cost::TargetProfile profile;
  if (!f.stats.empty()) {
    if (f.followers) throw UsageError("--stats and --followers are mutually exclusive");
    s.AddInput(f.stats);
    profile = cost::TargetProfile::Exact(ReadFollowerStats(f.stats));
  } else {
    if (!f.followers) throw UsageError("cost needs --followers or --stats");
    cost::FollowerStats st;
    st.tweets = f.tweets;
    st.friends = f.friends.value_or(f.relations.value_or(0));
    st.followers = f.follower_followers.value_or(f.relations.value_or(0));
    profile = cost::TargetProfile::Uniform(*f.followers, st);
    s.parameters()["followers"] = *f.followers;
    s.parameters()["tweets_per_follower"] = st.tweets;
    s.parameters()["friends_per_follower"] = st.friends;
    s.parameters()["followers_per_follower"] = st.followers;
  }
  s.parameters()["pages"] = {{"profiles", f.pages.profiles},
                             {"tweets", f.pages.tweets},
                             {"relations", f.pages.relations},
                             {"timeline_cap", f.pages.timeline_cap}};
  s.parameters()["rates"] = {{"profile", f.rates.profile},
                             {"timeline", f.rates.timeline},
                             {"relationship", f.rates.relationship}};
  cost::CostEstimate e;
  try {
    e = cost::Estimate(profile, f.pages, f.rates);
  } catch (const std::invalid_argument& err) {
    throw UsageError(err.what());
  }
  if (c.format == "json") {
    s.Emit("cost.json", cost::CostJson(e), false);
  } else {
    std::ostringstream file;
    cost::WriteCostCsv(file, e);
    s.Emit("cost.csv", file.str(), false);
  }
  cost::WriteCostTable(out, e);
  if (!f.features.empty()) {
    const auto specs = ResolveFeatures(f.features);
    out << "classifier cost class: "
        << features::CostClassName(cost::ClassifierCostClass(specs)) << "\n";
  }
  return kExitOk;
}

struct SensitivityFlags {
  std::string test_dir;
  double test_fraction = 1.0 / 3.0;
  std::string algos = "dt,rf,ab,knn,nb,lr";
  std::string features = "class-a";
};

int CmdSensitivity(Session& s, const Common& c, std::uint64_t seed, const CorpusFlags& in,
                   const SensitivityFlags& f, const ParamFlags& pf, std::ostream& out) {
  const auto specs = ResolveFeatures(f.features);
  sensitivity::AnalyzeOptions options;
  options.params = ResolveParams(pf, c);
  options.seed = seed;
  options.jobs = c.jobs;
  options.algorithms.clear();
  std::stringstream ss(f.algos);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!Trim(item).empty()) options.algorithms.push_back(learn::ParseAlgorithm(Trim(item)));
  }
  if (options.algorithms.empty()) throw UsageError("--algos: no algorithms given");
  const corpus::Dataset d = LoadCorpus(s, in);
  s.parameters()["features"] = FeatureIds(specs);
  std::vector<std::string> names;
  for (const auto a : options.algorithms) names.emplace_back(learn::AlgorithmName(a));
  s.parameters()["algorithms"] = names;
  s.parameters()["params"] = json::parse(learn::TrainParamsJson(options.params));
  sensitivity::SensitivityReport report;
  if (!f.test_dir.empty()) {
    CorpusFlags test_flags = in;
    test_flags.dir = f.test_dir;
    const corpus::Dataset test = LoadCorpus(s, test_flags);
    s.parameters()["test"] = "corpus";
    report = sensitivity::Analyze(d, test, specs, options);
  } else {
    if (!(f.test_fraction > 0 && f.test_fraction < 1)) {
      throw UsageError("--test-fraction must lie in (0, 1)");
    }
    const auto k = static_cast<std::size_t>(std::max(2L, std::lround(1.0 / f.test_fraction)));
    const corpus::FoldPlan plan =
        corpus::SplitFolds(d, k, DeriveSeed(seed, {HashString("test-split")}));
    const corpus::Dataset test = d.Subset(plan.folds[0], d.provenance() + " | test split");
    const auto train_rows = plan.TrainingRows(0);
    const corpus::Dataset train = d.Subset(train_rows, d.provenance() + " | train split");
    s.parameters()["test"] = "split";
    s.parameters()["split_folds"] = k;
    report = sensitivity::Analyze(train, test, specs, options);
  }
  if (c.format == "json") {
    s.Emit("sensitivity.json", sensitivity::SensitivityJson(report), false);
  } else {
    std::ostringstream file;
    sensitivity::WriteSensitivityCsv(file, report);
    s.Emit("sensitivity.csv", file.str(), false);
  }
  sensitivity::WriteSensitivityTable(out, report);
  return kExitOk;
}

// Drops "--out DIR" / "--out=DIR" and pins the resolved seed, so the
// recorded command line reproduces the run into any directory.
std::vector<std::string> ReplayableArgs(const std::vector<std::string>& args,
                                        std::uint64_t seed) {
  std::vector<std::string> out;
  bool has_seed = false;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--out") {
      ++i;
      continue;
    }
    if (args[i].rfind("--out=", 0) == 0) continue;
    if (args[i] == "--seed" || args[i].rfind("--seed=", 0) == 0) has_seed = true;
    out.push_back(args[i]);
  }
  if (!has_seed) {
    out.push_back("--seed");
    out.push_back(std::to_string(seed));
  }
  return out;
}

int CmdReplay(const std::string& manifest_path, const std::string& out_dir, std::ostream& out,
              std::ostream& err) {
  json manifest;
  try {
    manifest = json::parse(ReadFile(manifest_path));
  } catch (const json::exception& e) {
    throw DataError("manifest '" + manifest_path + "': " + e.what());
  }
  if (!manifest.contains("argv") || !manifest.contains("outputs")) {
    throw DataError("manifest '" + manifest_path + "' lacks argv or outputs");
  }
  std::vector<std::string> args = manifest.at("argv").get<std::vector<std::string>>();
  if (!args.empty() && args[0] == "replay") throw DataError("cannot replay a replay");
  args.push_back("--out");
  args.push_back(out_dir);
  std::ostringstream inner_out;
  const int code = Run(args, inner_out, err);
  if (code != kExitOk) {
    err << "replayed command exited with " << code << "\n";
    return code;
  }
  std::size_t differ = 0;
  for (const json& o : manifest.at("outputs")) {
    const std::string name = o.at("path").get<std::string>();
    const std::string want = o.at("fnv1a64").get<std::string>();
    const fs::path path = fs::path(out_dir) / name;
    const std::string got = fs::exists(path) ? FileDigest(path) : std::string("missing");
    const bool same = got == want;
    if (!same) ++differ;
    out << (same ? "match  " : "DIFFER ") << name << " " << got << "\n";
  }
  out << (differ == 0 ? "all artifacts reproduced\n"
                      : std::to_string(differ) + " artifact(s) differ\n");
  return differ == 0 ? kExitOk : kExitData;
}

}  // namespace

std::string FileDigest(const fs::path& path) { return Hex64(HashString(ReadFile(path))); }

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fake follower detection toolkit", "fakescope"};
  app.set_version_flag("--version", FAKESCOPE_VERSION);
  app.require_subcommand(1);

  Common common;
  CorpusFlags corpus_flags;
  ParamFlags param_flags;

  CLI::App* ingest = app.add_subcommand("ingest", "Load, validate and re-save a corpus");
  AddCommon(ingest, common, true);
  AddCorpus(ingest, corpus_flags);

  CLI::App* validate = app.add_subcommand("validate", "Check a corpus for schema violations");
  AddCommon(validate, common, false);
  AddCorpus(validate, corpus_flags);

  std::string preset = "paper-like";
  std::optional<std::size_t> humans, fakes;
  CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic labeled corpus");
  AddCommon(synth, common, true);
  synth->add_option("--preset", preset, "Generator preset");
  synth->add_option("--humans", humans, "Human accounts");
  synth->add_option("--fakes", fakes, "Fake accounts");

  std::string ruleset = "all";
  bool rule_report = false;
  CLI::App* rules_cmd = app.add_subcommand("rules", "Evaluate rule sets");
  AddCommon(rules_cmd, common, false);
  AddCorpus(rules_cmd, corpus_flags);
  rules_cmd->add_option("--ruleset", ruleset, "Rule set")
      ->check(CLI::IsMember({"cc", "sos", "sb", "all"}));
  rules_cmd->add_flag("--report", rule_report, "Per-rule metrics instead of verdicts");

  std::string feature_class;
  std::string feature_set;
  CLI::App* features_cmd = app.add_subcommand("features", "Extract a feature matrix");
  AddCommon(features_cmd, common, false);
  AddCorpus(features_cmd, corpus_flags);
  features_cmd->add_option("--class", feature_class, "Cost class")
      ->check(CLI::IsMember({"a", "b", "c", "all"}));
  features_cmd->add_option("--features", feature_set,
                           "Feature set name or comma-separated ids");

  std::string algo = "dt";
  std::string model_features = "class-a";
  CLI::App* train = app.add_subcommand("train", "Train a classifier");
  AddCommon(train, common, false);
  AddCorpus(train, corpus_flags);
  train->add_option("--algo", algo, "dt, rf, ab, knn, nb or lr");
  train->add_option("--features", model_features, "Feature set name or comma-separated ids");
  AddParams(train, param_flags);

  std::string model_path;
  CLI::App* predict = app.add_subcommand("predict", "Score a corpus with a trained model");
  AddCommon(predict, common, false);
  AddCorpus(predict, corpus_flags);
  predict->add_option("--model", model_path, "model.json written by train")->required();

  std::size_t k = 10;
  CLI::App* cv = app.add_subcommand("cv", "Stratified k-fold cross-validation");
  AddCommon(cv, common, false);
  AddCorpus(cv, corpus_flags);
  cv->add_option("--algo", algo, "dt, rf, ab, knn, nb or lr");
  cv->add_option("--features", model_features, "Feature set name or comma-separated ids");
  cv->add_option("--k", k, "Folds")->check(CLI::Range(2, 1000));
  AddParams(cv, param_flags);

  std::string fractions = "0.05:0.95:0.05";
  std::optional<std::size_t> sweep_size;
  CLI::App* sweep = app.add_subcommand("sweep", "Vary the class distribution");
  AddCommon(sweep, common, false);
  AddCorpus(sweep, corpus_flags);
  sweep->add_option("--algo", algo, "dt, rf, ab, knn, nb or lr");
  sweep->add_option("--features", model_features, "Feature set name or comma-separated ids");
  sweep->add_option("--fractions", fractions, "Human fractions, start:stop:step or a list");
  sweep->add_option("--size", sweep_size, "Accounts per mixture (default: largest possible)")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--k", k, "Folds")->check(CLI::Range(2, 1000));
  std::size_t repeats = 5;
  sweep->add_option("--repeats", repeats, "Mixtures drawn per fraction")
      ->check(CLI::PositiveNumber);
  AddParams(sweep, param_flags);

  CostFlags cost_flags;
  CLI::App* cost_cmd = app.add_subcommand("cost", "Estimate the crawling cost of a target");
  AddCommon(cost_cmd, common, false);
  cost_cmd->add_option("--followers", cost_flags.followers, "Followers of the target")
      ->check(CLI::NonNegativeNumber);
  cost_cmd->add_option("--tweets-per-follower", cost_flags.tweets, "Tweets per follower")
      ->check(CLI::NonNegativeNumber);
  cost_cmd->add_option("--relations-per-follower", cost_flags.relations,
                       "Friends and followers per follower")
      ->check(CLI::NonNegativeNumber);
  cost_cmd->add_option("--friends-per-follower", cost_flags.friends, "Friends per follower")
      ->check(CLI::NonNegativeNumber);
  cost_cmd->add_option("--followers-per-follower", cost_flags.follower_followers,
                       "Followers per follower")
      ->check(CLI::NonNegativeNumber);
  cost_cmd->add_option("--stats", cost_flags.stats,
                       "CSV with tweets,friends,followers per follower");
  cost_cmd->add_option("--features", cost_flags.features,
                       "Report the cost class of this feature set");
  cost_cmd->add_option("--page-profiles", cost_flags.pages.profiles, "Profiles per call");
  cost_cmd->add_option("--page-tweets", cost_flags.pages.tweets, "Tweets per call");
  cost_cmd->add_option("--page-relations", cost_flags.pages.relations, "Ids per call");
  cost_cmd->add_option("--timeline-cap", cost_flags.pages.timeline_cap,
                       "Newest tweets reachable per timeline");
  cost_cmd->add_option("--rate-profile", cost_flags.rates.profile, "Profile calls per minute");
  cost_cmd->add_option("--rate-timeline", cost_flags.rates.timeline,
                       "Timeline calls per minute");
  cost_cmd->add_option("--rate-relationship", cost_flags.rates.relationship,
                       "Relationship calls per minute");

  SensitivityFlags sens_flags;
  CLI::App* sens = app.add_subcommand("sensitivity", "Leave-one-feature-out importance");
  AddCommon(sens, common, false);
  AddCorpus(sens, corpus_flags);
  sens->add_option("--test", sens_flags.test_dir, "Held-out corpus (default: a split)");
  sens->add_option("--test-fraction", sens_flags.test_fraction,
                   "Share held out when --test is absent");
  sens->add_option("--algos", sens_flags.algos, "Comma-separated algorithms");
  sens->add_option("--features", sens_flags.features,
                   "Feature set name or comma-separated ids");
  AddParams(sens, param_flags);

  std::string manifest_path;
  std::string replay_out;
  CLI::App* replay = app.add_subcommand("replay", "Re-run a manifest and compare digests");
  replay->add_option("manifest", manifest_path, "manifest.json")->required();
  replay->add_option("--out", replay_out, "Directory for the re-run")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << FAKESCOPE_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    // Subcommand help on usage errors points at the right flags.
    for (CLI::App* sub : app.get_subcommands()) err << "run 'fakescope " << sub->get_name()
                                                    << " --help' for usage\n";
    if (app.get_subcommands().empty()) err << "run 'fakescope --help' for usage\n";
    return kExitUsage;
  }

  try {
    if (replay->parsed()) return CmdReplay(manifest_path, replay_out, out, err);
    const std::string command = app.get_subcommands().front()->get_name();
    const std::uint64_t seed = ResolveSeed(common);
    Session session(command, ReplayableArgs(args, seed), common, out);
    session.parameters()["seed"] = seed;
    int code = kExitOk;
    if (ingest->parsed()) {
      code = CmdIngest(session, common, corpus_flags, out);
    } else if (validate->parsed()) {
      code = CmdValidate(session, common, corpus_flags, out);
    } else if (synth->parsed()) {
      code = CmdSynth(session, common, seed, preset, humans, fakes, out);
    } else if (rules_cmd->parsed()) {
      code = CmdRules(session, common, corpus_flags, ruleset, rule_report, out);
    } else if (features_cmd->parsed()) {
      code = CmdFeatures(session, common, corpus_flags, feature_class, feature_set, out);
    } else if (train->parsed()) {
      code = CmdTrain(session, common, seed, corpus_flags, algo, model_features, param_flags,
                      out);
    } else if (predict->parsed()) {
      code = CmdPredict(session, common, corpus_flags, model_path, out);
    } else if (cv->parsed()) {
      code = CmdCv(session, common, seed, corpus_flags, algo, model_features, k, param_flags,
                   out);
    } else if (sweep->parsed()) {
      code = CmdSweep(session, common, seed, corpus_flags, algo, model_features, fractions,
                      sweep_size, k, repeats, param_flags, out);
    } else if (cost_cmd->parsed()) {
      code = CmdCost(session, common, cost_flags, out);
    } else if (sens->parsed()) {
      code = CmdSensitivity(session, common, seed, corpus_flags, sens_flags, param_flags, out);
    }
    session.Finish(seed);
    return code;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int Run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return Run(args, std::cout, std::cerr);
}

}  // namespace fakescope::cli
