#ifndef HENKIN_TOOLS_REPORT_HPP
#define HENKIN_TOOLS_REPORT_HPP

#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "henkin/henkin.hpp"

namespace report {

using json = nlohmann::ordered_json;

inline json var_list(const henkin::var_set& vs) {
  json a = json::array();
  for (auto v : vs) a.push_back(v);
  return a;
}

inline json model_dump(const henkin::extracted_model& M, std::size_t trace_steps) {
  json rels = json::object();
  for (const auto& r : M.sig.relations()) {
    json ts = json::array();
    auto it = M.relations.find(r.name);
    if (it != M.relations.end())
      for (const auto& t : it->second) ts.push_back(t);
    rels[r.name] = ts;
  }
  json m{{"base_size", M.base_size}, {"horizon", M.horizon}, {"relations", rels}};
  if (M.quotient) {
    m["extension"] = "quotient-by-diagonals";
    m["representatives"] = M.representative;
  }
  m["provenance"] = {{"filter_trace", "result.trace"}, {"steps", trace_steps}};
  return m;
}

inline json trace_dump(const henkin::generic_filter& F) {
  json a = json::array();
  for (const auto& t : F.trace()) {
    json s{{"step", t.step}, {"requirement", t.requirement}, {"chosen", t.chosen}};
    if (t.witness) s["witness"] = *t.witness;
    a.push_back(s);
  }
  return a;
}

inline json count_dump(const henkin::count_result& c) {
  json j{{"kind", c.exact ? "Exact" : "AtLeast"}, {"n", c.n}};
  if (!c.exact) j["horizon"] = c.horizon;
  return j;
}

inline json principality_dump(const henkin::principality_verdict& v) {
  using kind = henkin::principality_verdict::kind;
  json j{{"verdict", v.to_string()}};
  switch (v.what) {
    case kind::principal: j["kind"] = "Principal"; break;
    case kind::non_principal_up_to: j["kind"] = "NonPrincipalUpTo"; break;
    case kind::non_principal_certified:
      j["kind"] = "NonPrincipalCertified";
      j["certificate"] = v.certificate;
      break;
  }
  j["candidate_bound"] = v.candidate_bound;
  j["depth_bound"] = v.depth_bound;
  return j;
}

inline json omission_dump(const henkin::omission_verdict& v) {
  json j{{"verdict", v.to_string()}, {"semantics", v.semantics}, {"horizon", v.horizon}};
  if (!v.omitted) {
    json r = json::object();
    for (const auto& [i, u] : v.realizer) r[std::to_string(i)] = u;
    j["realizer"] = r;
  }
  return j;
}

inline std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 1469598103934665603ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

/// WORKBENCH_SEED only relabels report ids.
inline std::string report_id(const json& body) {
  std::uint64_t h = fnv1a(body.dump());
  if (const char* seed = std::getenv("WORKBENCH_SEED")) h = fnv1a(seed, h ^ 0x9e3779b97f4a7c15ull);
  std::ostringstream ss;
  ss << std::hex << std::setw(16) << std::setfill('0') << h;
  return ss.str();
}

inline json make(const std::string& command, json inputs, json horizons, json result) {
  json r{{"command", command}, {"inputs", std::move(inputs)}, {"horizons", std::move(horizons)},
         {"result", std::move(result)}};
  r["report_id"] = report_id(r);
  return r;
}

}  // namespace report

#endif
