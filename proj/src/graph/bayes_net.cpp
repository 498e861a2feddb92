#include "faircfs/graph/bayes_net.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "faircfs/error.hpp"
#include "faircfs/random.hpp"

namespace faircfs::graph {
namespace {

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

std::size_t BayesNet::n_parent_configs(int v) const {
  std::size_t configs = 1;
  for (int p : dag.parents(v)) configs *= static_cast<std::size_t>(arities.at(static_cast<std::size_t>(p)));
  return configs;
}

std::size_t BayesNet::parent_config(int v, const std::vector<int>& values) const {
  std::size_t config = 0;
  for (int p : dag.parents(v)) {
    config = config * static_cast<std::size_t>(arities[static_cast<std::size_t>(p)]) +
             static_cast<std::size_t>(values[static_cast<std::size_t>(p)]);
  }
  return config;
}

void BayesNet::validate() const {
  const auto n = static_cast<std::size_t>(dag.n_nodes());
  if (arities.size() != n || cpts.size() != n) throw DataError("BayesNet: arities/CPTs do not match node count");
  for (int v = 0; v < dag.n_nodes(); ++v) {
    const auto& name = dag.name(v);
    const int arity = arities[static_cast<std::size_t>(v)];
    if (arity < 2) throw DataError("BayesNet: node '" + name + "' needs arity >= 2");
    const auto& table = cpts[static_cast<std::size_t>(v)];
    if (table.size() != n_parent_configs(v)) {
      throw DataError("BayesNet: node '" + name + "' has " + std::to_string(table.size()) + " CPT rows, expected " +
                      std::to_string(n_parent_configs(v)));
    }
    for (const auto& row : table) {
      if (row.size() != static_cast<std::size_t>(arity)) throw DataError("BayesNet: CPT row width mismatch at '" + name + "'");
      double sum = 0.0;
      for (double p : row) {
        if (!(p >= 0.0)) throw DataError("BayesNet: negative probability at '" + name + "'");
        sum += p;
      }
      if (std::fabs(sum - 1.0) > 1e-9) throw DataError("BayesNet: CPT row of '" + name + "' does not sum to 1");
    }
  }
  if (sensitive && label && *sensitive == *label) throw DataError("BayesNet: sensitive and label must differ");
}

data::Dataset sample(const BayesNet& bn, std::size_t n, std::uint64_t seed) {
  bn.validate();
  if (n == 0) throw DataError("sample: row count must be positive");
  const int n_nodes = bn.dag.n_nodes();
  std::vector<data::Column> columns(static_cast<std::size_t>(n_nodes));
  for (int v = 0; v < n_nodes; ++v) {
    auto& c = columns[static_cast<std::size_t>(v)];
    c.name = bn.dag.name(v);
    c.arity = bn.arities[static_cast<std::size_t>(v)];
    c.codes.resize(n);
  }
  Rng rng(seed);
  std::vector<int> row(static_cast<std::size_t>(n_nodes), 0);
  for (std::size_t r = 0; r < n; ++r) {
    for (int v : bn.dag.topological_order()) {
      const auto& probs = bn.cpts[static_cast<std::size_t>(v)][bn.parent_config(v, row)];
      const double u = uniform01(rng);
      double cumulative = 0.0;
      int value = static_cast<int>(probs.size()) - 1;
      for (std::size_t k = 0; k < probs.size(); ++k) {
        cumulative += probs[k];
        if (u < cumulative) {
          value = static_cast<int>(k);
          break;
        }
      }
      // Zero-probability trailing states are never drawn.
      while (value > 0 && probs[static_cast<std::size_t>(value)] == 0.0) --value;
      row[static_cast<std::size_t>(v)] = value;
      columns[static_cast<std::size_t>(v)].codes[r] = value;
    }
  }
  data::Dataset d(std::move(columns));
  if (bn.sensitive && bn.label) return d.with_roles(*bn.sensitive, *bn.label);
  return d;
}

BayesNet parse_bayes_net(const std::string& text) {
  struct NodeDecl {
    std::string name;
    int arity = 0;
    std::vector<std::string> parents;
    std::vector<double> cpt;
  };
  std::vector<NodeDecl> decls;
  std::optional<std::string> sensitive, label;

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string keyword;
    if (!(tokens >> keyword)) continue;
    const auto fail = [&](const std::string& what) {
      throw DataError("BN line " + std::to_string(line_no) + ": " + what);
    };
    if (keyword == "sensitive" || keyword == "label") {
      std::string name;
      if (!(tokens >> name)) fail("missing node name");
      (keyword == "sensitive" ? sensitive : label) = name;
      continue;
    }
    if (keyword != "node") fail("unknown keyword '" + keyword + "'");
    NodeDecl decl;
    if (!(tokens >> decl.name >> decl.arity)) fail("expected 'node <name> <arity>'");
    std::string word;
    bool in_parents = false, in_cpt = false;
    while (tokens >> word) {
      if (word == "parents" && !in_cpt) {
        in_parents = true;
      } else if (word == "cpt") {
        in_parents = false;
        in_cpt = true;
      } else if (in_parents) {
        decl.parents.push_back(word);
      } else if (in_cpt) {
        double p = 0.0;
        auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), p);
        if (ec != std::errc() || ptr != word.data() + word.size()) fail("bad probability '" + word + "'");
        decl.cpt.push_back(p);
      } else {
        fail("unexpected token '" + word + "'");
      }
    }
    if (!in_cpt) fail("node '" + decl.name + "' has no cpt");
    decls.push_back(std::move(decl));
  }
  if (decls.empty()) throw DataError("BN file declares no nodes");

  std::unordered_map<std::string, int> id;
  std::vector<std::string> names;
  for (const auto& d : decls) {
    if (!id.emplace(d.name, static_cast<int>(names.size())).second) throw DataError("BN: duplicate node '" + d.name + "'");
    names.push_back(d.name);
  }
  const auto lookup = [&](const std::string& name) {
    const auto it = id.find(name);
    if (it == id.end()) throw DataError("BN: unknown node '" + name + "'");
    return it->second;
  };

  // Parent order in the file defines the CPT layout; the Dag sorts parents by
  // id, so rows are permuted into that order below.
  std::vector<data::VarSet> parents;
  for (const auto& d : decls) {
    data::VarSet ps;
    for (const auto& p : d.parents) ps.push_back(lookup(p));
    parents.push_back(ps);
  }
  BayesNet bn;
  try {
    bn.dag = Dag(names, parents);
  } catch (const std::exception& e) {
    throw DataError(std::string("BN: ") + e.what());
  }
  for (const auto& d : decls) bn.arities.push_back(d.arity);
  bn.cpts.resize(decls.size());

  for (std::size_t v = 0; v < decls.size(); ++v) {
    const auto& d = decls[v];
    const auto& file_parents = parents[v];
    const auto arity = static_cast<std::size_t>(d.arity);
    if (d.arity < 2) throw DataError("BN: node '" + d.name + "' needs arity >= 2");
    std::size_t configs = 1;
    for (int p : file_parents) configs *= static_cast<std::size_t>(bn.arities[static_cast<std::size_t>(p)]);
    if (d.cpt.size() != configs * arity) {
      throw DataError("BN: node '" + d.name + "' expects " + std::to_string(configs * arity) + " probabilities, got " +
                      std::to_string(d.cpt.size()));
    }
    std::vector<std::vector<double>> table(configs);
    std::vector<int> values(decls.size(), 0);
    for (std::size_t file_cfg = 0; file_cfg < configs; ++file_cfg) {
      std::size_t rest = file_cfg;
      for (std::size_t i = file_parents.size(); i-- > 0;) {
        const auto a = static_cast<std::size_t>(bn.arities[static_cast<std::size_t>(file_parents[i])]);
        values[static_cast<std::size_t>(file_parents[i])] = static_cast<int>(rest % a);
        rest /= a;
      }
      const std::size_t cfg = bn.parent_config(static_cast<int>(v), values);
      table[cfg].assign(d.cpt.begin() + static_cast<std::ptrdiff_t>(file_cfg * arity),
                        d.cpt.begin() + static_cast<std::ptrdiff_t>((file_cfg + 1) * arity));
    }
    bn.cpts[v] = std::move(table);
  }
  if (sensitive) bn.sensitive = lookup(*sensitive);
  if (label) bn.label = lookup(*label);
  bn.validate();
  return bn;
}

BayesNet read_bayes_net(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_bayes_net(ss.str());
}

std::string format_bayes_net(const BayesNet& bn) {
  std::ostringstream out;
  for (int v = 0; v < bn.dag.n_nodes(); ++v) {
    out << "node " << bn.dag.name(v) << ' ' << bn.arities[static_cast<std::size_t>(v)];
    if (!bn.dag.parents(v).empty()) {
      out << " parents";
      for (int p : bn.dag.parents(v)) out << ' ' << bn.dag.name(p);
    }
    out << " cpt";
    for (const auto& row : bn.cpts[static_cast<std::size_t>(v)]) {
      for (double p : row) out << ' ' << format_double(p);
    }
    out << '\n';
  }
  if (bn.sensitive) out << "sensitive " << bn.dag.name(*bn.sensitive) << '\n';
  if (bn.label) out << "label " << bn.dag.name(*bn.label) << '\n';
  return out.str();
}

}  // namespace faircfs::graph
