#ifndef HENKIN_THEORY_FILE_HPP
#define HENKIN_THEORY_FILE_HPP

#include <algorithm>
#include <cctype>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "henkin/dlo.hpp"
#include "henkin/error.hpp"
#include "henkin/external_oracle.hpp"
#include "henkin/finite_model.hpp"
#include "henkin/oracle.hpp"
#include "henkin/signature.hpp"

namespace henkin {

/// A parsed theory file:
///
///     theory <name>
///     mode: with-equality | without-equality
///     signature: sym/arity, ...
///     oracle: dlo-qe | finite-models | external:<command>
///     model <name> = {0..k-1}; sym = {(a,b), ...}; ...
///
/// `#` starts a comment.
struct theory {
  std::string name;
  signature sig;
  std::string oracle_spec;
  std::vector<finite_model> models;

  const finite_model& model(const std::string& model_name) const {
    for (const auto& m : models)
      if (m.name() == model_name) return m;
    throw error(errc::config_error, "theory " + name + " has no model '" + model_name + "'");
  }

  oracle_ptr make_oracle() const {
    if (oracle_spec == "dlo-qe") return std::make_shared<dlo_oracle>();
    if (oracle_spec == "finite-models") return std::make_shared<finite_model_oracle>(sig, models);
    if (oracle_spec.rfind("external:", 0) == 0) return std::make_shared<external_oracle>(sig, oracle_spec.substr(9));
    throw error(errc::config_error, "unknown oracle '" + oracle_spec + "'");
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '{' || c == '(') ++depth;
    if (c == '}' || c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

inline unsigned parse_unsigned(const std::string& s, const std::string& where) {
  std::string t = trim(s);
  if (t.empty() || t.size() > 9 || !std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw error(errc::syntax_error, where + ": expected a number, got '" + t + "'");
  return static_cast<unsigned>(std::stoul(t));
}

inline finite_model parse_model_line(const std::string& rest, const signature& sig, const std::string& where) {
  auto eq = rest.find('=');
  if (eq == std::string::npos) throw error(errc::syntax_error, where + ": expected 'model <name> = {0..k-1}; ...'");
  std::string name = trim(rest.substr(0, eq));
  if (!is_identifier(name)) throw error(errc::syntax_error, where + ": bad model name '" + name + "'");
  auto parts = split(rest.substr(eq + 1), ';');
  if (parts.empty()) throw error(errc::syntax_error, where + ": model " + name + " has no base");
  std::string base = parts[0];
  if (base.size() < 2 || base.front() != '{' || base.back() != '}')
    throw error(errc::syntax_error, where + ": base must look like {0..k-1}");
  std::string inner = trim(base.substr(1, base.size() - 2));
  auto dots = inner.find("..");
  if (dots == std::string::npos || trim(inner.substr(0, dots)) != "0")
    throw error(errc::syntax_error, where + ": base must look like {0..k-1}");
  unsigned size = parse_unsigned(inner.substr(dots + 2), where) + 1;
  finite_model m(name, sig, size);
  for (std::size_t k = 1; k < parts.size(); ++k) {
    if (parts[k].empty()) continue;
    auto e = parts[k].find('=');
    if (e == std::string::npos) throw error(errc::syntax_error, where + ": expected 'sym = {...}'");
    std::string rel = trim(parts[k].substr(0, e));
    auto ar = sig.arity(rel);
    if (!ar) throw error(errc::unknown_relation, where + ": relation '" + rel + "' not in the signature");
    std::string set = trim(parts[k].substr(e + 1));
    if (set.size() < 2 || set.front() != '{' || set.back() != '}')
      throw error(errc::syntax_error, where + ": relation " + rel + " must be a set {...}");
    for (auto item : split(set.substr(1, set.size() - 2), ',')) {
      if (item.empty()) continue;
      if (item.front() == '(') {
        if (item.back() != ')') throw error(errc::syntax_error, where + ": unbalanced tuple " + item);
        item = item.substr(1, item.size() - 2);
      }
      tuple t;
      for (const auto& x : split(item, ',')) {
        unsigned v = parse_unsigned(x, where);
        if (v >= size) throw error(errc::config_error, where + ": element " + x + " is outside the base of " + name);
        t.push_back(v);
      }
      if (t.size() != *ar) throw error(errc::arity_mismatch, where + ": tuple (" + item + ") has the wrong arity for " + rel);
      m.add(rel, t);
    }
  }
  return m;
}

}  // namespace detail

inline theory parse_theory(const std::string& text, const std::string& source = "theory") {
  theory th;
  std::optional<bool> equality;
  std::vector<relation_symbol> rels;
  bool have_sig = false;
  std::vector<std::pair<std::string, std::string>> model_lines;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string where = source + ":" + std::to_string(lineno);
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.rfind("theory ", 0) == 0) {
      th.name = detail::trim(line.substr(7));
      if (!is_identifier(th.name)) throw error(errc::syntax_error, where + ": bad theory name '" + th.name + "'");
    } else if (line.rfind("mode:", 0) == 0) {
      std::string m = detail::trim(line.substr(5));
      if (m == "with-equality")
        equality = true;
      else if (m == "without-equality")
        equality = false;
      else
        throw error(errc::config_error, where + ": mode must be with-equality or without-equality");
    } else if (line.rfind("signature:", 0) == 0) {
      have_sig = true;
      for (const auto& item : detail::split(line.substr(10), ',')) {
        if (item.empty()) continue;
        auto slash = item.find('/');
        if (slash == std::string::npos) throw error(errc::syntax_error, where + ": expected sym/arity, got '" + item + "'");
        rels.push_back({detail::trim(item.substr(0, slash)), detail::parse_unsigned(item.substr(slash + 1), where)});
      }
    } else if (line.rfind("oracle:", 0) == 0) {
      th.oracle_spec = detail::trim(line.substr(7));
    } else if (line.rfind("model ", 0) == 0) {
      model_lines.emplace_back(line.substr(6), where);
    } else {
      throw error(errc::syntax_error, where + ": unrecognized line '" + line + "'");
    }
  }
  if (th.name.empty()) throw error(errc::config_error, source + ": missing 'theory <name>'");
  if (!equality) throw error(errc::config_error, source + ": missing 'mode:'");
  if (!have_sig) throw error(errc::config_error, source + ": missing 'signature:'");
  if (th.oracle_spec.empty()) throw error(errc::config_error, source + ": missing 'oracle:'");
  th.sig = signature(th.name, rels, *equality);
  if (th.oracle_spec == "dlo-qe") {
    const auto& d = dlo_signature();
    if (rels.size() != 1 || rels[0].name != "lt" || rels[0].arity != 2 || !*equality)
      throw error(errc::mode_mismatch, source + ": the dlo-qe oracle needs 'signature: lt/2' with equality");
    th.sig = d;
  } else if (th.oracle_spec != "finite-models" && th.oracle_spec.rfind("external:", 0) != 0) {
    throw error(errc::config_error, source + ": unknown oracle '" + th.oracle_spec + "'");
  }
  for (const auto& [rest, where] : model_lines) th.models.push_back(detail::parse_model_line(rest, th.sig, where));
  if (th.oracle_spec == "finite-models" && th.models.empty())
    throw error(errc::config_error, source + ": oracle finite-models needs at least one model");
  return th;
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw error(errc::io_error, "cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline theory load_theory(const std::string& path) { return parse_theory(read_file(path), path); }

}  // namespace henkin

#endif
