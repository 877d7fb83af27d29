// workbench: command-line front end over the henkin library.
//
// Every command prints one JSON report {command, inputs, horizons, result,
// report_id}, or writes it to --out. Exit status: 0 ok, 2 bad input or
// configuration, 3 a construction failed, 1 anything else.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "henkin/henkin.hpp"
#include "report.hpp"

using namespace henkin;
using report::json;

namespace {

struct common {
  std::string theory;
  std::string out;
};

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

json signature_dump(const signature& sig) {
  json rels = json::array();
  for (const auto& r : sig.relations()) rels.push_back({{"name", r.name}, {"arity", r.arity}});
  return {{"name", sig.name()}, {"relations", rels}, {"equality", sig.equality()}};
}

henkin_mode mode_for(const theory& th, const std::string& flag) {
  if (flag.empty()) return th.sig.equality() ? henkin_mode::h_prime : henkin_mode::h;
  return parse_henkin_mode(flag);
}

void check_horizons(std::size_t budget, var_index horizon) {
  if (horizon == 0) throw error(errc::config_error, "--horizon must be positive");
  if (budget == 0) throw error(errc::config_error, "--budget must be positive");
}

std::vector<type_set> load_types(const std::vector<std::string>& paths, const signature& sig) {
  std::vector<type_set> out;
  for (const auto& p : paths) {
    std::string name = p.substr(p.find_last_of('/') + 1);
    if (auto dot = name.rfind('.'); dot != std::string::npos) name.erase(dot);
    out.push_back(parse_type_file(name, read_file(p), sig));
  }
  return out;
}

// parse FILE: a theory, or with --theory a type file or a list of formulas.
json cmd_parse(const std::string& file, const std::string& theory_path) {
  json result;
  if (ends_with(file, ".thy")) {
    auto th = load_theory(file);
    json models = json::array();
    for (const auto& m : th.models) models.push_back({{"name", m.name()}, {"size", m.size()}});
    result = {{"kind", "theory"}, {"name", th.name}, {"signature", signature_dump(th.sig)},
              {"oracle", th.oracle_spec}, {"models", models}};
  } else {
    if (theory_path.empty()) throw error(errc::config_error, "parsing " + file + " needs --theory for the signature");
    auto th = load_theory(theory_path);
    if (ends_with(file, ".typ")) {
      auto X = load_types({file}, th.sig).front();
      json members = json::array();
      for (const auto& f : X.prefix(X.bounded() ? *X.size() : 4)) members.push_back(to_string(f));
      result = {{"kind", "type"}, {"name", X.name()}, {"bounded", X.bounded()}, {"describe", X.describe()},
                {"members", members}};
      if (X.bounded()) result["span"] = report::var_list(X.span());
    } else {
      json fs = json::array();
      std::istringstream in(read_file(file));
      std::string line;
      std::size_t lineno = 0;
      while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        formula f;
        try {
          f = parse_formula(line, th.sig);
        } catch (const error& e) {
          throw error(e.code(), file + ":" + std::to_string(lineno) + ": " + e.what(), e.position());
        }
        fs.push_back({{"line", lineno},
                      {"formula", to_string(f)},
                      {"depth", f.depth()},
                      {"free", report::var_list(free_vars(f))}});
      }
      result = {{"kind", "formulas"}, {"formulas", fs}};
    }
  }
  return report::make("parse", {{"file", file}, {"theory", theory_path}}, json::object(), result);
}

json cmd_algebra_info(const common& c, var_index dims) {
  auto th = load_theory(c.theory);
  auto oracle = th.make_oracle();
  formula_algebra A(th.sig, oracle, th.sig.mode());
  formula_enumerator en(th.sig, dims);
  json gens = json::array();
  std::vector<formula> atomic;
  for (const auto& f : en.up_to_depth(0)) {
    if (f.is_true() || f.is_false()) continue;
    atomic.push_back(f);
    auto e = A.element(f);
    gens.push_back({{"formula", to_string(f)},
                    {"dimension_set", report::var_list(A.dimension_set(e))},
                    {"zero", A.is_zero(e)},
                    {"one", A.is_one(e)}});
  }
  json models = json::array();
  for (const auto& m : th.models) {
    json rels = json::object();
    for (const auto& r : th.sig.relations()) rels[r.name] = m.tuples(r.name).size();
    json entry{{"name", m.name()}, {"size", m.size()}, {"relations", rels}};
    std::vector<set_element> den;
    for (const auto& f : atomic) den.push_back(denotation(m, f));
    try {
      auto S = set_algebra::generated(m.size(), th.sig.mode(), dims, den, set_algebra::closure::full, 4096);
      entry["generated_set_algebra"] = json{{"size", S.size()}, {"atoms", henkin::atoms(S).size()}};
    } catch (const error& e) {
      if (e.code() != errc::capacity_exceeded) throw;
      entry["generated_set_algebra"] = json{{"over_capacity", true}};
    }
    models.push_back(entry);
  }
  json result{{"theory", th.name},
              {"signature", signature_dump(th.sig)},
              {"algebra", th.sig.equality() ? "CA" : "QPA"},
              {"oracle", {{"kind", oracle->kind()}, {"complete", oracle->complete()}}},
              {"generators", gens},
              {"models", models}};
  return report::make("algebra-info", {{"theory", c.theory}}, {{"dims", dims}}, result);
}

json cmd_build_model(const common& c, const std::string& mode_flag, std::size_t budget, var_index horizon,
                     unsigned model_horizon, const std::string& seed, const std::vector<std::string>& type_paths,
                     bool quotient) {
  check_horizons(budget, horizon);
  auto th = load_theory(c.theory);
  formula_algebra A(th.sig, th.make_oracle(), th.sig.mode());
  build_options opt;
  opt.mode = mode_for(th, mode_flag);
  opt.budget = budget;
  opt.horizon = horizon;
  opt.omit = load_types(type_paths, th.sig);
  auto F = henkin_build(A, A.element(seed), opt);
  unsigned B = model_horizon ? model_horizon : horizon;
  auto M = quotient ? extract_model_quotient(F, th.sig, B) : extract_model(F, th.sig, B);
  json result{{"mode", henkin_mode_name(opt.mode)},
              {"seed", to_string(parse_formula(seed, th.sig))},
              {"model", report::model_dump(M, F.steps())},
              {"chain_size", F.chain().size()},
              {"trace", report::trace_dump(F)}};
  json inputs{{"theory", c.theory}, {"types", type_paths}};
  return report::make("build-model", inputs, {{"budget", budget}, {"horizon", horizon}, {"model_horizon", B}},
                      result);
}

json cmd_distinguish(const common& c, const std::string& model_list, std::size_t budget, var_index var_bound) {
  if (budget == 0) throw error(errc::config_error, "--formula-budget must be positive");
  auto th = load_theory(c.theory);
  std::vector<std::string> names;
  if (model_list.empty()) {
    for (const auto& m : th.models) names.push_back(m.name());
  } else {
    std::stringstream ss(model_list);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) names.push_back(item);
  }
  if (names.size() < 2) throw error(errc::config_error, "distinguish needs at least two models");
  json pairs = json::array();
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j) {
      auto v = distinguishable(th.model(names[i]), th.model(names[j]), budget, 0, var_bound);
      json p{{"i", i}, {"j", j}, {"models", {names[i], names[j]}}, {"verdict", v.to_string()},
             {"distinguished", v.distinguished}};
      if (v.distinguished) {
        p["formula"] = to_string(*v.a);
        p["counts"] = {report::count_dump(v.c0), report::count_dump(v.c1)};
        if (v.second_opinion) p["equinumerous_witness"] = *v.second_opinion;
      }
      if (v.inconclusive) p["inconclusive"] = v.inconclusive;
      pairs.push_back(p);
    }
  json result{{"pairs", pairs}, {"budget", budget}, {"horizon", 0}};
  return report::make("distinguish", {{"theory", c.theory}, {"models", names}},
                      {{"formula_budget", budget}, {"var_bound", var_bound}}, result);
}

json cmd_omit(const common& c, const std::vector<std::string>& type_paths, const std::string& mode_flag,
              std::size_t budget, var_index horizon, std::size_t sample) {
  check_horizons(budget, horizon);
  auto th = load_theory(c.theory);
  auto oracle = th.make_oracle();
  formula_algebra A(th.sig, oracle, th.sig.mode());
  build_options opt;
  opt.mode = mode_for(th, mode_flag);
  opt.budget = budget;
  opt.horizon = horizon;
  opt.omit = load_types(type_paths, th.sig);
  json types = json::array();
  for (const auto& X : opt.omit) {
    auto p = principality(*oracle, X, 16, 1);
    auto lo = locally_omits(*oracle, X, sample);
    json failures = json::array();
    for (const auto& f : lo.failures) failures.push_back(to_string(f));
    types.push_back({{"name", X.name()},
                     {"describe", X.describe()},
                     {"principality", report::principality_dump(p)},
                     {"locally_omits",
                      {{"sample_bound", sample},
                       {"tested", lo.tested},
                       {"skipped", lo.skipped},
                       {"by_chain_step", lo.by_chain_step},
                       {"failures", failures},
                       {"passed", lo.passed()}}}});
  }
  auto F = henkin_build(A, A.one(), opt);
  for (std::size_t k = 0; k < opt.omit.size(); ++k)
    types[k]["omission"] = report::omission_dump(verify_omission(F, opt.omit[k], horizon));
  auto M = extract_model(F, th.sig, horizon);
  json result{{"mode", henkin_mode_name(opt.mode)},
              {"types", types},
              {"model", report::model_dump(M, F.steps())},
              {"trace", report::trace_dump(F)}};
  return report::make("omit", {{"theory", c.theory}, {"types", type_paths}},
                      {{"budget", budget}, {"horizon", horizon}, {"local_sample", sample}}, result);
}

json cmd_orbits(const common& c, const std::string& generators, var_index dims, const std::string& model_name) {
  auto th = load_theory(c.theory);
  if (th.models.empty()) throw error(errc::config_error, "orbits needs a theory presented by finite models");
  const auto& m = model_name.empty() ? th.models.front() : th.model(model_name);
  auto gens = parse_transformation_list(generators);
  if (dims == 0) {
    dims = 1;
    for (const auto& g : gens)
      for (const auto& [i, j] : g.pairs()) dims = std::max<var_index>(dims, std::max(i, j) + 1);
  }
  for (const auto& g : gens)
    for (const auto& [i, j] : g.pairs())
      if (i >= dims || j >= dims) throw error(errc::config_error, "generator " + g.to_string() + " moves an index outside --dims");
  substitution_action action(gens);
  auto S = set_algebra::full(m.size(), th.sig.mode(), dims);
  auto ultras = enumerate_ultrafilters(S);
  auto orbits = orbit_decomposition(S, ultras, action);
  json os = json::array();
  for (const auto& orb : orbits) {
    json pts = json::array();
    for (auto k : orb) {
      // each atom of the full algebra is one assignment of v0..v(dims-1)
      const auto& a = S.element(ultras[k].atom);
      std::vector<unsigned> point(dims, 0);
      auto t = a.tuples().front();
      for (std::size_t d = 0; d < a.dims().size(); ++d) point[a.dims()[d]] = t[d];
      pts.push_back(point);
    }
    os.push_back(pts);
  }
  json gs = json::array();
  for (const auto& g : gens) gs.push_back(g.to_string());
  json result{{"model", m.name()},
              {"base_size", m.size()},
              {"dims", dims},
              {"generators", gs},
              {"group_order", group_closure(gens).size()},
              {"algebra_size", S.size()},
              {"ultrafilters", ultras.size()},
              {"orbit_count", orbits.size()},
              {"orbits", os}};
  return report::make("orbits", {{"theory", c.theory}, {"generators", generators}}, {{"dims", dims}}, result);
}

void emit(const json& r, const std::string& out) {
  std::string text = r.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw error(errc::io_error, "cannot write " + out);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Henkin-construction workbench"};
  app.require_subcommand(1);
  common c;

  auto with_common = [&](CLI::App* sub, bool theory_required) {
    auto* opt = sub->add_option("--theory", c.theory, "theory file");
    if (theory_required) opt->required();
    sub->add_option("--out", c.out, "write the report here instead of stdout");
  };

  std::string parse_file;
  auto* parse = app.add_subcommand("parse", "parse a theory, type or formula file");
  parse->add_option("file", parse_file)->required();
  with_common(parse, false);

  var_index info_dims = 2;
  auto* info = app.add_subcommand("algebra-info", "signature, oracle and generators of a theory's algebra");
  with_common(info, true);
  info->add_option("--dims", info_dims, "generators over v0..v(dims-1)");

  std::string mode_flag, seed = "true";
  std::size_t budget = 64;
  var_index horizon = 8;
  unsigned model_horizon = 0;
  std::vector<std::string> type_paths;
  bool quotient = false;
  auto* bm = app.add_subcommand("build-model", "build a Henkin ultrafilter and extract its model");
  with_common(bm, true);
  bm->add_option("--mode", mode_flag, "H or Hprime");
  bm->add_option("--budget", budget, "Decide steps");
  bm->add_option("--horizon", horizon, "construction horizon");
  bm->add_option("--model-horizon", model_horizon, "extract on {0..B-1} (default: the horizon)");
  bm->add_option("--seed", seed, "the element the filter must contain");
  bm->add_option("--types", type_paths, "types to omit")->expected(1, -1);
  bm->add_flag("--quotient", quotient, "identify base points equal in the filter (extension)");

  std::string model_list;
  std::size_t formula_budget = 50;
  var_index var_bound = 2;
  auto* dist = app.add_subcommand("distinguish", "compare realization counts of finite models");
  with_common(dist, true);
  dist->add_option("--models", model_list, "comma-separated model names (default: all)");
  dist->add_option("--formula-budget", formula_budget, "formulas to try");
  dist->add_option("--var-bound", var_bound, "formulas over v0..v(var-bound-1)");

  std::size_t local_sample = 200;
  auto* omit = app.add_subcommand("omit", "build a model omitting the given types");
  with_common(omit, true);
  omit->add_option("--types", type_paths, "type files")->required()->expected(1, -1);
  omit->add_option("--mode", mode_flag, "H or Hprime");
  omit->add_option("--budget", budget, "Decide steps");
  omit->add_option("--horizon", horizon, "construction horizon");
  omit->add_option("--local-sample", local_sample, "formulas checked by locally_omits");

  std::string generators;
  var_index orbit_dims = 0;
  std::string orbit_model;
  auto* orb = app.add_subcommand("orbits", "orbits of ultrafilters of a full set algebra");
  with_common(orb, true);
  orb->add_option("--generators", generators, "bijections, e.g. \"[0,1],[1,2]\"")->required();
  orb->add_option("--dims", orbit_dims, "dimensions (default: 1 + largest moved index)");
  orb->add_option("--model", orbit_model, "model whose base is used (default: the first)");

  auto* serve = app.add_subcommand("serve-oracle", "answer SAT/EQ requests on stdin with the theory's oracle");
  serve->add_option("--theory", c.theory, "theory file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "workbench: " << e.what() << "\n";
    return 2;
  }

  try {
    json r;
    if (*parse)
      r = cmd_parse(parse_file, c.theory);
    else if (*info)
      r = cmd_algebra_info(c, info_dims);
    else if (*bm)
      r = cmd_build_model(c, mode_flag, budget, horizon, model_horizon, seed, type_paths, quotient);
    else if (*dist)
      r = cmd_distinguish(c, model_list, formula_budget, var_bound);
    else if (*omit)
      r = cmd_omit(c, type_paths, mode_flag, budget, horizon, local_sample);
    else if (*orb)
      r = cmd_orbits(c, generators, orbit_dims, orbit_model);
    else if (*serve) {
      auto th = load_theory(c.theory);
      serve_oracle(*th.make_oracle(), std::cin, std::cout);
      return 0;
    }
    emit(r, c.out);
    return 0;
  } catch (const error& e) {
    std::cerr << "workbench: " << e.what() << "\n";
    return is_construction_error(e.code()) ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "workbench: " << e.what() << "\n";
    return 1;
  }
}
