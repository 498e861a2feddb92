#include "faircfs/cli/app.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "faircfs/citest/g2.hpp"
#include "faircfs/cli/run_config.hpp"
#include "faircfs/data/csv.hpp"
#include "faircfs/error.hpp"
#include "faircfs/eval/cross_validation.hpp"
#include "faircfs/fair/report.hpp"
#include "faircfs/graph/bayes_net.hpp"
#include "faircfs/graph/oracle.hpp"
#include "faircfs/graph/testbed.hpp"

namespace faircfs::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

constexpr const char* kConfigPrefix = "# config: ";

// Values given on the command line or through FAIRCFS_* variables.
struct Overrides {
  std::optional<std::string> config, data, schema, out;
  std::optional<std::uint64_t> seed;
  std::optional<double> alpha, reliability;
  std::optional<std::string> unreliable_policy, mb_alg, classifier, selector;
  std::optional<int> max_k, max_z, folds, knn_k, threads;
  std::optional<bool> extended_search, testbed;
  std::optional<std::string> bn, emit_bn;
  std::optional<std::size_t> rows;
  std::optional<std::string> x, y, z;
};

template <typename T>
void add(CLI::App* app, const std::string& flag, std::optional<T>& target, const std::string& help) {
  std::string env = "FAIRCFS_";
  for (char c : flag.substr(2)) env += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  app->add_option(flag, target, help)->envname(env);
}

void add_common(CLI::App* app, Overrides& o) {
  add(app, "--config", o.config, "Report or JSON file whose embedded config seeds this run");
  add(app, "--data", o.data, "Input CSV");
  add(app, "--schema", o.schema, "Schema file for the CSV");
  add(app, "--out", o.out, "Output report path");
  add(app, "--seed", o.seed, "RNG seed");
  add(app, "--alpha", o.alpha, "Significance level of the G2 test");
  add(app, "--reliability", o.reliability, "Samples required per degree of freedom");
  add(app, "--threads", o.threads, "Worker cap");
}

void add_selection(CLI::App* app, Overrides& o) {
  add(app, "--mb-alg", o.mb_alg, "Markov blanket algorithm: hiton-mb or iamb");
  add(app, "--max-k", o.max_k, "Largest HITON-PC conditioning set");
  add(app, "--max-z", o.max_z, "Largest witness subset in the subset search");
  add(app, "--extended-search", o.extended_search, "Subset search for full-MB(S) failures too (true/false)");
}

template <typename T>
void apply(const std::optional<T>& value, T& field) {
  if (value) field = *value;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void require_file(const std::string& path, const std::string& what) {
  if (path.empty()) throw ConfigError(what + " path is required");
  if (!fs::exists(path)) throw ConfigError(what + " file '" + path + "' does not exist");
}

// The embedded config of a JSON report, a CSV report with a config comment
// line, or a bare JSON config.
nlohmann::json load_embedded_config(const std::string& path) {
  require_file(path, "config");
  const std::string text = read_text(path);
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.starts_with(kConfigPrefix)) return nlohmann::json::parse(line.substr(std::string(kConfigPrefix).size()));
    if (!line.starts_with("#")) break;
  }
  const auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ConfigError("'" + path + "' holds no embedded config");
  return j.contains("config") ? j.at("config") : j;
}

RunConfig resolve(const std::string& command, const Overrides& o) {
  RunConfig cfg;
  if (o.config) cfg.merge_json(load_embedded_config(*o.config));
  cfg.command = command;
  apply(o.data, cfg.data);
  apply(o.schema, cfg.schema);
  apply(o.out, cfg.out);
  apply(o.seed, cfg.seed);
  apply(o.alpha, cfg.alpha);
  apply(o.reliability, cfg.reliability);
  apply(o.unreliable_policy, cfg.unreliable_policy);
  apply(o.mb_alg, cfg.mb_alg);
  apply(o.classifier, cfg.classifier);
  apply(o.selector, cfg.selector);
  apply(o.max_k, cfg.max_k);
  if (o.max_z) cfg.max_z = *o.max_z;
  apply(o.folds, cfg.folds);
  apply(o.knn_k, cfg.knn_k);
  apply(o.threads, cfg.threads);
  apply(o.extended_search, cfg.extended_search);
  apply(o.testbed, cfg.testbed);
  apply(o.bn, cfg.bn);
  apply(o.rows, cfg.rows);
  apply(o.x, cfg.x);
  apply(o.y, cfg.y);
  apply(o.z, cfg.z);
  cfg.validate();
  return cfg;
}

data::LoadResult load_input(const RunConfig& cfg) {
  require_file(cfg.data, "data");
  require_file(cfg.schema, "schema");
  return data::load_csv(cfg.data, data::Schema::read(cfg.schema));
}

std::string format_fixed(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << v;
  return s.str();
}

std::string join_names(const data::VarSet& vars, const data::Dataset& d) {
  std::string out;
  for (int v : vars) out += (out.empty() ? "" : ", ") + d.name(v);
  return "{" + out + "}";
}

// ---------------------------------------------------------------- commands

void cmd_select(const RunConfig& cfg, std::ostream& out) {
  if (cfg.out.empty()) throw ConfigError("--out is required");
  const auto loaded = load_input(cfg);
  const auto& d = loaded.dataset;
  const auto sel = fair::select_fair_features(d, cfg.fair_config());

  ordered_json report;
  report["config"] = cfg.to_json();
  report["n_rows"] = d.n_rows();
  report["dropped_rows"] = loaded.dropped_rows;
  report["selection"] = fair::to_json(sel, d);
  write_text(cfg.out, report.dump(2) + "\n");

  out << "MB(" << d.name(d.label()) << ") = " << join_names(sel.mb_y, d) << "\n";
  out << "MB(" << d.name(d.sensitive()) << ") = " << join_names(sel.mb_s, d) << "\n";
  out << "M1 = " << join_names(sel.m1, d) << "\n";
  out << "M2 = " << join_names(sel.m2, d) << "\n";
  if (sel.empty_mb_y) out << "warning: empty Markov blanket for the label; nothing selected\n";
  if (loaded.dropped_rows) out << "dropped " << loaded.dropped_rows << " rows with missing values\n";
}

void cmd_eval(const RunConfig& cfg, std::ostream& out) {
  if (cfg.out.empty()) throw ConfigError("--out is required");
  const auto loaded = load_input(cfg);
  const auto& d = loaded.dataset;
  const auto report = eval::cross_validate(d, cfg.eval_config());

  write_text(cfg.out, kConfigPrefix + cfg.to_json().dump() + "\n" + eval::to_csv(report, d));

  const auto metric = [](const std::optional<double>& v) { return v ? format_fixed(*v) : std::string("NA"); };
  out << cfg.selector << " + " << cfg.classifier << ", " << cfg.folds << "-fold CV\n";
  out << "  ACC " << format_fixed(report.mean_acc) << "  SPD " << metric(report.mean_spd) << "  PE "
      << metric(report.mean_pe) << "\n";
  for (const auto& f : report.per_fold) {
    if (f.empty_selection) out << "  fold " << f.fold << ": empty selection, prior-only predictor\n";
    if (!f.spd || !f.pe) out << "  fold " << f.fold << ": fairness metric undefined, excluded from mean\n";
  }
  if (loaded.dropped_rows) out << "dropped " << loaded.dropped_rows << " rows with missing values\n";
}

void cmd_synth(const RunConfig& cfg, const std::optional<std::string>& emit_bn, std::ostream& out) {
  if (cfg.out.empty()) throw ConfigError("--out is required");
  graph::BayesNet bn;
  if (cfg.testbed) {
    bn = graph::builtin_testbed().bn;
  } else {
    require_file(cfg.bn, "BN");
    bn = graph::read_bayes_net(cfg.bn);
  }
  if (!bn.sensitive || !bn.label) throw DataError("BN must declare 'sensitive' and 'label' nodes");
  const auto d = graph::sample(bn, cfg.rows, cfg.seed);

  data::Schema schema;
  schema.sensitive = bn.dag.name(*bn.sensitive);
  schema.label = bn.dag.name(*bn.label);
  for (int v = 0; v < bn.dag.n_nodes(); ++v) {
    auto& spec = schema.columns[bn.dag.name(v)];
    for (int c = 0; c < bn.arities[static_cast<std::size_t>(v)]; ++c) spec.levels.push_back(std::to_string(c));
  }

  const auto fair = graph::oracle_fair_set(bn.dag, *bn.label, *bn.sensitive);
  const auto names = [&](const data::VarSet& vars) {
    auto a = ordered_json::array();
    for (int v : vars) a.push_back(bn.dag.name(v));
    return a;
  };
  ordered_json truth;
  truth["config"] = cfg.to_json();
  truth["rows"] = d.n_rows();
  truth["label"] = schema.label;
  truth["sensitive"] = schema.sensitive;
  truth["true_mb_y"] = names(graph::true_mb(bn.dag, *bn.label));
  truth["true_mb_s"] = names(graph::true_mb(bn.dag, *bn.sensitive));
  truth["oracle_fair_set"] = names(fair.fair_set);
  auto witnesses = ordered_json::object();
  for (const auto& [x, z] : fair.witness) witnesses[bn.dag.name(x)] = names(z);
  truth["witnesses"] = witnesses;

  write_text(cfg.out, data::to_csv(d));
  write_text(cfg.out + ".truth.json", truth.dump(2) + "\n");
  write_text(cfg.out + ".schema", schema.to_string());
  if (emit_bn) write_text(*emit_bn, graph::format_bayes_net(bn));

  out << "wrote " << d.n_rows() << " rows to " << cfg.out << "\n";
  out << "oracle fair set: " << names(fair.fair_set).dump() << "\n";
}

std::vector<int> parse_columns(const data::Dataset& d, const std::string& list) {
  std::vector<int> out;
  std::stringstream ss(list);
  std::string name;
  while (std::getline(ss, name, ',')) {
    if (name.empty()) continue;
    const auto j = d.find(name);
    if (!j) throw ConfigError("unknown column '" + name + "'");
    out.push_back(*j);
  }
  return data::make_set(out);
}

void cmd_citest(const RunConfig& cfg, std::ostream& out) {
  const auto loaded = load_input(cfg);
  const auto& d = loaded.dataset;
  const auto column = [&](const std::string& name, const char* flag) {
    if (name.empty()) throw ConfigError(std::string(flag) + " is required");
    const auto j = d.find(name);
    if (!j) throw ConfigError("unknown column '" + name + "'");
    return *j;
  };
  const int x = column(cfg.x, "--x");
  const int y = column(cfg.y, "--y");
  if (x == y) throw ConfigError("--x and --y name the same column");
  const auto z = parse_columns(d, cfg.z);
  if (data::contains(z, x) || data::contains(z, y)) throw ConfigError("--z contains a tested column");

  citest::CiConfig ci;
  ci.alpha = cfg.alpha;
  ci.reliability_factor = cfg.reliability;
  ci.unreliable_policy = citest::parse_unreliable_policy(cfg.unreliable_policy);
  const auto r = citest::is_independent(d, x, y, z, ci);

  ordered_json report;
  report["config"] = cfg.to_json();
  report["x"] = cfg.x;
  report["y"] = cfg.y;
  auto zs = ordered_json::array();
  for (int v : z) zs.push_back(d.name(v));
  report["z"] = zs;
  report["g2"] = r.g2;
  report["dof"] = r.dof;
  report["p_value"] = r.p_value;
  report["independent"] = r.independent;
  report["reliable"] = r.reliable;
  report["alpha"] = r.alpha;
  if (!cfg.out.empty()) write_text(cfg.out, report.dump(2) + "\n");

  out << "G2 = " << r.g2 << ", dof = " << r.dof << ", p = " << r.p_value << "\n";
  out << "decision: " << (r.independent ? "independent" : "dependent") << (r.reliable ? "" : " (unreliable test)")
      << " at alpha = " << r.alpha << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fair causal feature selection"};
  app.require_subcommand(1);
  Overrides o;

  auto* select = app.add_subcommand("select", "Select fair causal features");
  add_common(select, o);
  add_selection(select, o);

  auto* evaluate = app.add_subcommand("eval", "Cross-validate a selector and classifier");
  add_common(evaluate, o);
  add_selection(evaluate, o);
  add(evaluate, "--selector", o.selector, "faircfs, mb-only or all-features");
  add(evaluate, "--classifier", o.classifier, "nb, lr or knn");
  add(evaluate, "--folds", o.folds, "Cross-validation folds");
  add(evaluate, "--knn-k", o.knn_k, "Neighbours for knn");

  auto* synth = app.add_subcommand("synth", "Sample a Bayesian network to CSV with ground truth");
  add_common(synth, o);
  add(synth, "--bn", o.bn, "BN text file");
  add(synth, "--testbed", o.testbed, "Use the bundled testbed network (true/false)");
  add(synth, "--rows", o.rows, "Rows to sample");
  add(synth, "--emit-bn", o.emit_bn, "Also write the network in BN text format");

  auto* citest_cmd = app.add_subcommand("citest", "Run one G2 conditional independence test");
  add_common(citest_cmd, o);
  add(citest_cmd, "--x", o.x, "First column");
  add(citest_cmd, "--y", o.y, "Second column");
  add(citest_cmd, "--z", o.z, "Conditioning columns, comma-separated");
  add(citest_cmd, "--unreliable-policy", o.unreliable_policy, "independent or dependent");

  std::vector<std::string> argv_storage{"faircfs"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    const std::string command = app.get_subcommands().front()->get_name();
    const RunConfig cfg = resolve(command, o);
    if (command == "select") {
      cmd_select(cfg, out);
    } else if (command == "eval") {
      cmd_eval(cfg, out);
    } else if (command == "synth") {
      cmd_synth(cfg, o.emit_bn, out);
    } else {
      cmd_citest(cfg, out);
    }
    return kOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIoError;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return kDataError;
  } catch (const nlohmann::json::exception& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kAlgorithmError;
  }
}

}  // namespace faircfs::cli
