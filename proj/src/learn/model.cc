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

#include <cmath>
#include <stdexcept>

#include "json.hpp"
#include "model_state.h"

namespace fakescope::learn {
namespace {

using nlohmann::json;

constexpr int kModelFormatVersion = 1;

json TreeToJson(const DecisionTree& tree) {
  json nodes = json::array();
  for (const TreeNode& n : tree.nodes()) {
    nodes.push_back({n.feature, n.threshold, n.left, n.right, n.pos, n.neg, n.samples});
  }
  return nodes;
}

DecisionTree TreeFromJson(const json& j) {
  std::vector<TreeNode> nodes;
  for (const json& n : j) {
    TreeNode node;
    node.feature = n.at(0).get<int>();
    node.threshold = n.at(1).get<double>();
    node.left = n.at(2).get<int>();
    node.right = n.at(3).get<int>();
    node.pos = n.at(4).get<double>();
    node.neg = n.at(5).get<double>();
    node.samples = n.at(6).get<std::int64_t>();
    nodes.push_back(node);
  }
  return DecisionTree(std::move(nodes));
}

json ParamsToJson(const TrainParams& p) {
  return {{"min_leaf", p.min_leaf},
          {"max_depth", p.max_depth},
          {"prune", PruneStrategyName(p.prune.strategy)},
          {"prune_folds", p.prune.folds},
          {"prune_confidence", p.prune.confidence},
          {"trees", p.trees},
          {"forest_min_leaf", p.forest_min_leaf},
          {"mtry", p.mtry},
          {"rounds", p.rounds},
          {"base_depth", p.base_depth},
          {"k", p.k},
          {"lambda", p.lambda},
          {"max_iterations", p.max_iterations},
          {"tolerance", p.tolerance}};
}

TrainParams ParamsFromJson(const json& j) {
  TrainParams p;
  p.min_leaf = j.at("min_leaf").get<int>();
  p.max_depth = j.at("max_depth").get<int>();
  p.prune.strategy = ParsePruneStrategy(j.at("prune").get<std::string>());
  p.prune.folds = j.at("prune_folds").get<int>();
  p.prune.confidence = j.at("prune_confidence").get<double>();
  p.trees = j.at("trees").get<int>();
  p.forest_min_leaf = j.at("forest_min_leaf").get<int>();
  p.mtry = j.at("mtry").get<int>();
  p.rounds = j.at("rounds").get<int>();
  p.base_depth = j.at("base_depth").get<int>();
  p.k = j.at("k").get<int>();
  p.lambda = j.at("lambda").get<double>();
  p.max_iterations = j.at("max_iterations").get<int>();
  p.tolerance = j.at("tolerance").get<double>();
  return p;
}

json StateToJson(Algorithm a, const ModelState& s) {
  json j = json::object();
  switch (a) {
    case Algorithm::kDT:
      j["tree"] = TreeToJson(s.tree);
      break;
    case Algorithm::kRF:
    case Algorithm::kAB: {
      json trees = json::array();
      for (const DecisionTree& t : s.ensemble) trees.push_back(TreeToJson(t));
      j["trees"] = trees;
      if (a == Algorithm::kAB) j["alphas"] = s.alphas;
      break;
    }
    case Algorithm::kKNN: {
      j["lo"] = s.lo;
      j["range"] = s.range;
      j["points"] = s.points;
      json labels = json::array();
      for (const Label l : s.labels) labels.push_back(LabelName(l));
      j["labels"] = labels;
      break;
    }
    case Algorithm::kNB:
      j["log_prior"] = {s.log_prior[0], s.log_prior[1]};
      j["boolean"] = std::vector<int>(s.boolean.begin(), s.boolean.end());
      for (int c = 0; c < 2; ++c) {
        const std::string suffix = c == 0 ? "_human" : "_fake";
        j["p_one" + suffix] = s.p_one[c];
        j["mean" + suffix] = s.mean[c];
        j["var" + suffix] = s.var[c];
      }
      break;
    case Algorithm::kLR:
      j["center"] = s.center;
      j["scale"] = s.scale;
      j["weights"] = s.weights;
      j["bias"] = s.bias;
      break;
  }
  return j;
}

ModelState StateFromJson(Algorithm a, const json& j) {
  ModelState s;
  switch (a) {
    case Algorithm::kDT:
      s.tree = TreeFromJson(j.at("tree"));
      break;
    case Algorithm::kRF:
    case Algorithm::kAB:
      for (const json& t : j.at("trees")) s.ensemble.push_back(TreeFromJson(t));
      if (a == Algorithm::kAB) {
        s.alphas = j.at("alphas").get<std::vector<double>>();
        if (s.alphas.size() != s.ensemble.size()) {
          throw std::invalid_argument("model: one alpha per base learner required");
        }
      }
      if (s.ensemble.empty()) throw std::invalid_argument("model: empty ensemble");
      break;
    case Algorithm::kKNN:
      s.lo = j.at("lo").get<std::vector<double>>();
      s.range = j.at("range").get<std::vector<double>>();
      s.points = j.at("points").get<std::vector<double>>();
      for (const json& l : j.at("labels")) s.labels.push_back(ParseLabel(l.get<std::string>()));
      break;
    case Algorithm::kNB: {
      s.log_prior[0] = j.at("log_prior").at(0).get<double>();
      s.log_prior[1] = j.at("log_prior").at(1).get<double>();
      for (const int b : j.at("boolean").get<std::vector<int>>()) {
        s.boolean.push_back(static_cast<char>(b != 0));
      }
      for (int c = 0; c < 2; ++c) {
        const std::string suffix = c == 0 ? "_human" : "_fake";
        s.p_one[c] = j.at("p_one" + suffix).get<std::vector<double>>();
        s.mean[c] = j.at("mean" + suffix).get<std::vector<double>>();
        s.var[c] = j.at("var" + suffix).get<std::vector<double>>();
      }
      break;
    }
    case Algorithm::kLR:
      s.center = j.at("center").get<std::vector<double>>();
      s.scale = j.at("scale").get<std::vector<double>>();
      s.weights = j.at("weights").get<std::vector<double>>();
      s.bias = j.at("bias").get<double>();
      break;
  }
  return s;
}

}  // namespace

std::string_view AlgorithmName(Algorithm a) {
  switch (a) {
    case Algorithm::kDT: return "dt";
    case Algorithm::kRF: return "rf";
    case Algorithm::kAB: return "ab";
    case Algorithm::kKNN: return "knn";
    case Algorithm::kNB: return "nb";
    case Algorithm::kLR: return "lr";
  }
  return "?";
}

Algorithm ParseAlgorithm(std::string_view text) {
  const std::string s = ToLower(text);
  for (const Algorithm a : AllAlgorithms()) {
    if (s == AlgorithmName(a)) return a;
  }
  throw std::invalid_argument("unknown algorithm '" + std::string(text) +
                              "' (expected dt, rf, ab, knn, nb or lr)");
}

const std::vector<Algorithm>& AllAlgorithms() {
  static const std::vector<Algorithm> all = {Algorithm::kDT,  Algorithm::kRF,
                                             Algorithm::kAB,  Algorithm::kKNN,
                                             Algorithm::kNB,  Algorithm::kLR};
  return all;
}

std::string_view PruneStrategyName(PruneStrategy s) {
  switch (s) {
    case PruneStrategy::kNone: return "none";
    case PruneStrategy::kReducedError: return "reduced-error";
    case PruneStrategy::kSubtreeRaising: return "subtree-raising";
  }
  return "?";
}

PruneStrategy ParsePruneStrategy(std::string_view text) {
  const std::string s = ToLower(text);
  if (s == "none") return PruneStrategy::kNone;
  if (s == "reduced-error" || s == "rep") return PruneStrategy::kReducedError;
  if (s == "subtree-raising" || s == "raising") return PruneStrategy::kSubtreeRaising;
  throw std::invalid_argument("unknown pruning strategy '" + std::string(text) +
                              "' (expected none, reduced-error or subtree-raising)");
}

std::string TrainParamsJson(const TrainParams& params) {
  return ParamsToJson(params).dump();
}

TrainedModel::TrainedModel(Algorithm algorithm, TrainParams params,
                           std::vector<std::string> features, std::uint64_t seed,
                           std::shared_ptr<const ModelState> state)
    : algorithm_(algorithm),
      params_(std::move(params)),
      features_(std::move(features)),
      seed_(seed),
      state_(std::move(state)) {}

Prediction TrainedModel::Predict(std::span<const double> x) const {
  if (x.size() != features_.size()) {
    throw std::invalid_argument("feature vector has " + std::to_string(x.size()) +
                                " values, model expects " +
                                std::to_string(features_.size()));
  }
  return PredictWithState(algorithm_, params_, *state_, x);
}

std::vector<Prediction> TrainedModel::PredictAll(const features::FeatureMatrix& m) const {
  if (m.names() != features_) {
    throw std::invalid_argument("matrix columns do not match the model features [" +
                                Join(features_, "; ") + "]");
  }
  std::vector<Prediction> out;
  out.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(Predict(m.row(r)));
  return out;
}

const DecisionTree& TrainedModel::tree() const {
  if (algorithm_ != Algorithm::kDT) throw std::logic_error("not a decision tree model");
  return state_->tree;
}

const std::vector<DecisionTree>& TrainedModel::ensemble() const {
  if (algorithm_ != Algorithm::kRF && algorithm_ != Algorithm::kAB) {
    throw std::logic_error("not an ensemble model");
  }
  return state_->ensemble;
}

std::string TrainedModel::ToJson() const {
  const json j = {{"format", "fakescope-model"},
                  {"version", kModelFormatVersion},
                  {"algorithm", AlgorithmName(algorithm_)},
                  {"seed", seed_},
                  {"features", features_},
                  {"params", ParamsToJson(params_)},
                  {"state", StateToJson(algorithm_, *state_)}};
  return j.dump();
}

TrainedModel TrainedModel::FromJson(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
    if (j.at("format") != "fakescope-model") {
      throw std::invalid_argument("model: not a fakescope model file");
    }
    if (j.at("version").get<int>() != kModelFormatVersion) {
      throw std::invalid_argument("model: unsupported format version " +
                                  j.at("version").dump());
    }
    const Algorithm a = ParseAlgorithm(j.at("algorithm").get<std::string>());
    auto state = std::make_shared<ModelState>(StateFromJson(a, j.at("state")));
    return TrainedModel(a, ParamsFromJson(j.at("params")),
                        j.at("features").get<std::vector<std::string>>(),
                        j.at("seed").get<std::uint64_t>(), std::move(state));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("model: malformed JSON: ") + e.what());
  }
}

TrainedModel Train(Algorithm algorithm, const features::FeatureMatrix& m,
                   const TrainParams& params, std::uint64_t seed) {
  if (m.rows() == 0) throw std::invalid_argument("training matrix is empty");
  if (m.cols() == 0) throw std::invalid_argument("training matrix has no features");
  if (m.labels.size() != m.rows()) throw std::invalid_argument("training rows need labels");
  bool human = false, fake = false;
  for (const Label l : m.labels) {
    if (l == Label::kUnlabeled) throw std::invalid_argument("training row without a label");
    (IsFake(l) ? fake : human) = true;
  }
  if (!human || !fake) {
    throw std::invalid_argument("training data must contain both classes");
  }
  for (const double v : m.values) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite feature value");
  }
  auto state = std::make_shared<ModelState>(FitState(algorithm, m, params, seed));
  return TrainedModel(algorithm, params, m.names(), seed, std::move(state));
}

}  // namespace fakescope::learn
