#ifndef HENKIN_FINITE_MODEL_HPP
#define HENKIN_FINITE_MODEL_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "henkin/error.hpp"
#include "henkin/formula.hpp"
#include "henkin/parse.hpp"
#include "henkin/signature.hpp"

namespace henkin {

using tuple = std::vector<unsigned>;

namespace detail {

struct variable_group {
  std::vector<std::size_t> formulas;  // indices into the input list
  std::vector<var_index> order;       // placement order of its variables
};

/// Splits formulas into groups connected by shared free variables.
/// Sentences form one group with no variables. Groups come in order of
/// their latest formula, latest first; each group's variables are ordered
/// breadth-first starting from that formula.
inline std::vector<variable_group> variable_groups(const std::vector<formula>& fs) {
  std::map<var_index, std::vector<std::size_t>> occurs;
  for (std::size_t k = 0; k < fs.size(); ++k)
    for (auto v : fs[k].free_vars()) occurs[v].push_back(k);
  std::vector<int> group_of(fs.size(), -1);
  std::vector<variable_group> out;
  variable_group sentences;
  for (std::size_t k = 0; k < fs.size(); ++k)
    if (fs[k].free_vars().empty()) {
      sentences.formulas.push_back(k);
      group_of[k] = 0;
    }
  if (!sentences.formulas.empty()) out.push_back(sentences);
  std::map<var_index, bool> seen;
  for (std::size_t start = fs.size(); start-- > 0;) {
    if (group_of[start] >= 0) continue;
    variable_group g;
    std::vector<std::size_t> queue{start};
    group_of[start] = 1;
    for (std::size_t q = 0; q < queue.size(); ++q) {
      std::size_t k = queue[q];
      g.formulas.push_back(k);
      for (auto v : fs[k].free_vars()) {
        if (seen[v]) continue;
        seen[v] = true;
        g.order.push_back(v);
        for (auto j : occurs[v])
          if (group_of[j] < 0) {
            group_of[j] = 1;
            queue.push_back(j);
          }
      }
    }
    std::sort(g.formulas.begin(), g.formulas.end());
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace detail

/// A structure with base {0..n-1}. Relations are stored as bitmaps over
/// base^arity, indexed little-endian (first argument least significant).
class finite_model {
public:
  finite_model() = default;

  finite_model(std::string name, signature sig, unsigned size)
      : name_(std::move(name)), sig_(std::move(sig)), size_(size) {
    if (size_ == 0) throw error(errc::config_error, "model " + name_ + " must have a nonempty base");
    for (const auto& r : sig_.relations()) {
      std::size_t cells = 1;
      for (unsigned k = 0; k < r.arity; ++k) {
        cells *= size_;
        if (cells > (std::size_t{1} << 26)) throw error(errc::capacity_exceeded, "relation table too large");
      }
      tables_.emplace(r.name, std::vector<bool>(cells, false));
    }
  }

  const std::string& name() const { return name_; }
  const signature& sig() const { return sig_; }
  unsigned size() const { return size_; }

  void add(const std::string& rel, const tuple& t) { table(rel, t.size()).at(index(t)) = true; }

  bool holds(const std::string& rel, const tuple& t) const {
    auto it = tables_.find(rel);
    if (it == tables_.end()) throw error(errc::signature_mismatch, "relation '" + rel + "' not in model " + name_);
    return it->second[index(t)];
  }

  /// All tuples of the relation in lexicographic order.
  std::vector<tuple> tuples(const std::string& rel) const {
    auto ar = sig_.arity(rel);
    if (!ar) throw error(errc::signature_mismatch, "relation '" + rel + "' not in model " + name_);
    std::vector<tuple> out;
    for_each_tuple(*ar, [&](const tuple& t) {
      if (holds(rel, t)) out.push_back(t);
    });
    return out;
  }

  /// Calls fn on every tuple over the base of the given length, lexicographically.
  template <class Fn>
  void for_each_tuple(unsigned len, Fn&& fn) const {
    tuple t(len, 0);
    for (;;) {
      fn(static_cast<const tuple&>(t));
      int k = static_cast<int>(len) - 1;
      while (k >= 0 && ++t[static_cast<std::size_t>(k)] == size_) t[static_cast<std::size_t>(k--)] = 0;
      if (k < 0) break;
    }
  }

  /// Evaluates f; `assignment[v]` is the value of v_v. Indices at or
  /// beyond the vector's length read as 0.
  bool eval(const formula& f, std::vector<unsigned>& assignment) const {
    auto val = [&](var_index v) -> unsigned { return v < assignment.size() ? assignment[v] : 0; };
    switch (f.kind()) {
      case formula_kind::truth: return true;
      case formula_kind::falsity: return false;
      case formula_kind::atom: {
        auto it = tables_.find(f.relation());
        if (it == tables_.end())
          throw error(errc::signature_mismatch, "relation '" + f.relation() + "' not in model " + name_);
        std::size_t idx = 0, mul = 1;
        for (auto a : f.args()) {
          idx += val(a) * mul;
          mul *= size_;
        }
        return it->second[idx];
      }
      case formula_kind::equal: return val(f.args()[0]) == val(f.args()[1]);
      case formula_kind::negation: return !eval(f.child(), assignment);
      case formula_kind::conjunction: return eval(f.lhs(), assignment) && eval(f.rhs(), assignment);
      case formula_kind::disjunction: return eval(f.lhs(), assignment) || eval(f.rhs(), assignment);
      case formula_kind::exists: {
        var_index v = f.bound_var();
        if (assignment.size() <= v) assignment.resize(v + 1, 0);
        unsigned saved = assignment[v];
        bool found = false;
        for (unsigned u = 0; u < size_ && !found; ++u) {
          assignment[v] = u;
          found = eval(f.child(), assignment);
        }
        assignment[v] = saved;
        return found;
      }
    }
    return false;
  }

  bool satisfies(const formula& f, const std::map<var_index, unsigned>& assignment) const {
    std::vector<unsigned> a(f.var_bound(), 0);
    for (const auto& [v, u] : assignment) {
      if (a.size() <= v) a.resize(v + 1, 0);
      a[v] = u;
    }
    return eval(f, a);
  }

  /// Searches an assignment of the free variables making every formula
  /// true. Formulas are split into groups that share no free variable and
  /// each group is solved on its own. Within a group variables are placed
  /// breadth-first from the last formula's, and a branch is cut as soon as
  /// a formula whose variables are all placed is false.
  std::optional<std::vector<unsigned>> find_assignment(const std::vector<formula>& fs) const {
    var_index bound = 0;
    for (const auto& f : fs) bound = std::max(bound, f.var_bound());
    std::vector<unsigned> a(bound, 0);
    for (const auto& group : detail::variable_groups(fs)) {
      std::vector<formula> part;
      for (auto k : group.formulas) part.push_back(fs[k]);
      if (!search(part, group.order, a)) return std::nullopt;
    }
    return a;
  }

  friend bool operator==(const finite_model& a, const finite_model& b) {
    return a.size_ == b.size_ && a.sig_ == b.sig_ && a.tables_ == b.tables_;
  }

private:
  std::vector<bool>& table(const std::string& rel, std::size_t len) {
    auto it = tables_.find(rel);
    if (it == tables_.end()) throw error(errc::signature_mismatch, "relation '" + rel + "' not in model " + name_);
    if (*sig_.arity(rel) != len) throw error(errc::arity_mismatch, "wrong tuple length for '" + rel + "'");
    return it->second;
  }

  std::size_t index(const tuple& t) const {
    std::size_t idx = 0, mul = 1;
    for (auto a : t) {
      if (a >= size_) throw error(errc::config_error, "tuple entry " + std::to_string(a) + " outside base of " + name_);
      idx += a * mul;
      mul *= size_;
    }
    return idx;
  }

  // Depth-first over `order`; each formula is evaluated once, at the
  // depth where its last free variable gets placed.
  bool search(const std::vector<formula>& fs, const std::vector<var_index>& order, std::vector<unsigned>& a) const {
    std::vector<std::size_t> pos(a.size(), 0);
    for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = k + 1;
    std::vector<std::vector<const formula*>> ready(order.size() + 1);
    for (const auto& f : fs) {
      std::size_t at = 0;
      for (auto v : f.free_vars()) at = std::max(at, pos[v]);
      ready[at].push_back(&f);
    }
    std::function<bool(std::size_t)> go = [&](std::size_t k) {
      for (const auto* f : ready[k])
        if (!eval(*f, a)) return false;
      if (k == order.size()) return true;
      var_index v = order[k];
      for (unsigned u = 0; u < size_; ++u) {
        a[v] = u;
        if (go(k + 1)) return true;
      }
      a[v] = 0;
      return false;
    };
    return go(0);
  }

  std::string name_;
  signature sig_;
  unsigned size_ = 0;
  std::map<std::string, std::vector<bool>> tables_;
};

}  // namespace henkin

#endif
