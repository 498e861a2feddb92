#include "faircfs/cli/run_config.hpp"

#include "faircfs/citest/g2.hpp"
#include "faircfs/error.hpp"
#include "faircfs/mb/markov_blanket.hpp"

namespace faircfs::cli {

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["data"] = data;
  j["schema"] = schema;
  j["seed"] = seed;
  j["alpha"] = alpha;
  j["reliability"] = reliability;
  j["unreliable_policy"] = unreliable_policy;
  j["mb_alg"] = mb_alg;
  j["max_k"] = max_k;
  j["max_z"] = max_z ? nlohmann::ordered_json(*max_z) : nlohmann::ordered_json(nullptr);
  j["extended_search"] = extended_search;
  j["classifier"] = classifier;
  j["selector"] = selector;
  j["folds"] = folds;
  j["knn_k"] = knn_k;
  j["threads"] = threads;
  j["bn"] = bn;
  j["testbed"] = testbed;
  j["rows"] = rows;
  j["x"] = x;
  j["y"] = y;
  j["z"] = z;
  return j;
}

void RunConfig::merge_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("embedded config must be a JSON object");
  const auto take = [&](const char* key, auto& field) {
    if (j.contains(key)) j.at(key).get_to(field);
  };
  try {
    take("command", command);
    take("data", data);
    take("schema", schema);
    take("seed", seed);
    take("alpha", alpha);
    take("reliability", reliability);
    take("unreliable_policy", unreliable_policy);
    take("mb_alg", mb_alg);
    take("max_k", max_k);
    if (j.contains("max_z")) {
      max_z = j.at("max_z").is_null() ? std::nullopt : std::optional<int>(j.at("max_z").get<int>());
    }
    take("extended_search", extended_search);
    take("classifier", classifier);
    take("selector", selector);
    take("folds", folds);
    take("knn_k", knn_k);
    take("threads", threads);
    take("bn", bn);
    take("testbed", testbed);
    take("rows", rows);
    take("x", x);
    take("y", y);
    take("z", z);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("embedded config: ") + e.what());
  }
}

void RunConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("--alpha must lie in (0, 1)");
  if (reliability < 0.0) throw ConfigError("--reliability must be non-negative");
  if (max_k < 0) throw ConfigError("--max-k must be non-negative");
  if (max_z && *max_z < 0) throw ConfigError("--max-z must be non-negative");
  if (folds < 2) throw ConfigError("--folds must be at least 2");
  if (knn_k < 1) throw ConfigError("--knn-k must be at least 1");
  if (threads < 1) throw ConfigError("--threads must be at least 1");
  if (rows < 1) throw ConfigError("--rows must be at least 1");
  mb::parse_algorithm(mb_alg);
  eval::parse_classifier(classifier);
  eval::parse_selector(selector);
  citest::parse_unreliable_policy(unreliable_policy);
}

fair::FairCfsConfig RunConfig::fair_config() const {
  fair::FairCfsConfig cfg;
  cfg.algorithm = mb::parse_algorithm(mb_alg);
  cfg.ci.alpha = alpha;
  cfg.ci.reliability_factor = reliability;
  cfg.max_k = max_k;
  cfg.max_z = max_z;
  cfg.extended_search = extended_search;
  cfg.parallel = threads > 1;
  return cfg;
}

eval::EvalConfig RunConfig::eval_config() const {
  eval::EvalConfig cfg;
  cfg.selector = eval::parse_selector(selector);
  cfg.classifier = eval::parse_classifier(classifier);
  cfg.folds = folds;
  cfg.seed = seed;
  cfg.fair = fair_config();
  cfg.fair.parallel = false;
  cfg.classifier_params.knn_k = knn_k;
  cfg.threads = threads;
  return cfg;
}

}  // namespace faircfs::cli
