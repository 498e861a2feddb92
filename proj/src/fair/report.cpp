#include "faircfs/fair/report.hpp"

namespace faircfs::fair {
namespace {

nlohmann::ordered_json names(const VarSet& vars, const data::Dataset& d) {
  auto out = nlohmann::ordered_json::array();
  for (int v : vars) out.push_back(d.name(v));
  return out;
}

}  // namespace

nlohmann::ordered_json to_json(const FairSelection& sel, const data::Dataset& d) {
  nlohmann::ordered_json j;
  j["sensitive"] = d.name(d.sensitive());
  j["label"] = d.name(d.label());
  j["mb_y"] = names(sel.mb_y, d);
  j["mb_s"] = names(sel.mb_s, d);
  j["m1"] = names(sel.m1, d);
  j["m2"] = names(sel.m2, d);
  j["selected"] = names(sel.selected(), d);
  auto witnesses = nlohmann::ordered_json::object();
  for (const auto& [x, z] : sel.witnesses) witnesses[d.name(x)] = names(z, d);
  j["witnesses"] = witnesses;
  auto rejected = nlohmann::ordered_json::object();
  for (const auto& [x, reason] : sel.rejected) rejected[d.name(x)] = to_string(reason);
  j["rejected"] = rejected;
  j["tests_performed"] = sel.tests_performed;
  j["empty_mb_y"] = sel.empty_mb_y;
  return j;
}

}  // namespace faircfs::fair
