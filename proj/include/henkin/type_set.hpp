#ifndef HENKIN_TYPE_SET_HPP
#define HENKIN_TYPE_SET_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "henkin/error.hpp"
#include "henkin/formula.hpp"
#include "henkin/parse.hpp"
#include "henkin/signature.hpp"

namespace henkin {

/// A type: a finite list of formulas, or a built-in infinite family.
/// The only family so far is the descending chain {v1<v0, v2<v1, ...}
/// over a binary relation.
class type_set {
public:
  enum class family { listed, descending_chain };

  static type_set listed(std::string name, std::vector<formula> fs) {
    type_set t;
    t.name_ = std::move(name);
    t.listed_ = std::move(fs);
    return t;
  }

  static type_set descending_chain(std::string name, std::string relation) {
    type_set t;
    t.name_ = std::move(name);
    t.family_ = family::descending_chain;
    t.relation_ = std::move(relation);
    return t;
  }

  const std::string& name() const { return name_; }
  family kind() const { return family_; }
  const std::string& relation() const { return relation_; }
  bool bounded() const { return family_ == family::listed; }

  /// Number of members, or nullopt for an infinite family.
  std::optional<std::size_t> size() const {
    if (bounded()) return listed_.size();
    return std::nullopt;
  }

  /// The n-th member; for the descending chain, relation(v_{n+1}, v_n).
  formula at(std::size_t n) const {
    if (bounded()) {
      if (n >= listed_.size()) throw error(errc::config_error, "type " + name_ + " has no member " + std::to_string(n));
      return listed_[n];
    }
    auto k = static_cast<var_index>(n);
    return formula::atom(relation_, {k + 1, k});
  }

  /// Members 0..count-1 (all of them for a finite list when count is larger).
  std::vector<formula> prefix(std::size_t count) const {
    std::vector<formula> out;
    std::size_t n = bounded() ? std::min(count, listed_.size()) : count;
    for (std::size_t k = 0; k < n; ++k) out.push_back(at(k));
    return out;
  }

  /// Free variables of the members; only meaningful when bounded.
  var_set span() const {
    var_set s;
    for (const auto& f : listed_) s.insert(f.free_vars().begin(), f.free_vars().end());
    return s;
  }

  std::string describe() const {
    if (!bounded()) return name_ + " = descending-chain(" + relation_ + ")";
    std::string s = name_ + " = {";
    for (std::size_t k = 0; k < listed_.size(); ++k) s += (k ? ", " : "") + to_string(listed_[k]);
    return s + "}";
  }

private:
  std::string name_;
  family family_ = family::listed;
  std::vector<formula> listed_;
  std::string relation_;
};

/// Type file: one formula per line, `#` comments. A `generator:` line
/// selects a built-in family instead, e.g. `generator: descending-chain`
/// (optionally followed by the relation, default the first binary one).
inline type_set parse_type_file(const std::string& name, const std::string& text, const signature& sig) {
  std::istringstream in(text);
  std::string line;
  std::vector<formula> fs;
  std::optional<type_set> gen;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    line = line.substr(b, line.find_last_not_of(" \t\r") - b + 1);
    if (line.rfind("generator:", 0) == 0) {
      std::istringstream g(line.substr(10));
      std::string fam, rel;
      g >> fam >> rel;
      if (fam != "descending-chain")
        throw error(errc::config_error, "type " + name + ": unknown generator '" + fam + "'");
      if (rel.empty())
        for (const auto& r : sig.relations())
          if (r.arity == 2) {
            rel = r.name;
            break;
          }
      auto ar = sig.arity(rel);
      if (!ar || *ar != 2)
        throw error(errc::config_error, "type " + name + ": descending-chain needs a binary relation");
      gen = type_set::descending_chain(name, rel);
      continue;
    }
    try {
      fs.push_back(parse_formula(line, sig));
    } catch (const error& e) {
      throw error(e.code(), "type " + name + " line " + std::to_string(lineno) + ": " + e.what(), e.position());
    }
  }
  if (gen) {
    if (!fs.empty()) throw error(errc::config_error, "type " + name + " mixes a generator with listed formulas");
    return *gen;
  }
  return type_set::listed(name, std::move(fs));
}

}  // namespace henkin

#endif
