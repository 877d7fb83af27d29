#ifndef HENKIN_DLO_HPP
#define HENKIN_DLO_HPP

#include <algorithm>
#include <mutex>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "henkin/error.hpp"
#include "henkin/finite_model.hpp"
#include "henkin/formula.hpp"
#include "henkin/oracle.hpp"
#include "henkin/order_types.hpp"
#include "henkin/parse.hpp"
#include "henkin/signature.hpp"

namespace henkin {

/// {lt/2} with equality.
inline const signature& dlo_signature() {
  static const signature s("dlo", {{"lt", 2}}, true);
  return s;
}

namespace detail {

// a < b when lt, else a = b
struct order_lit {
  bool lt;
  var_index a, b;
  friend bool operator<(const order_lit& x, const order_lit& y) {
    return std::tie(x.lt, x.a, x.b) < std::tie(y.lt, y.a, y.b);
  }
};
using order_conjunct = std::set<order_lit>;
using order_dnf = std::vector<order_conjunct>;

constexpr std::size_t dnf_cap = 200'000;

inline order_dnf dnf_product(const order_dnf& x, const order_dnf& y) {
  order_dnf out;
  if (x.size() * y.size() > dnf_cap) throw error(errc::capacity_exceeded, "DNF expansion too large in DLO elimination");
  for (const auto& a : x)
    for (const auto& b : y) {
      order_conjunct c = a;
      c.insert(b.begin(), b.end());
      out.push_back(std::move(c));
    }
  return out;
}

inline order_dnf dnf_union(order_dnf x, const order_dnf& y) {
  if (x.size() + y.size() > dnf_cap) throw error(errc::capacity_exceeded, "DNF expansion too large in DLO elimination");
  x.insert(x.end(), y.begin(), y.end());
  return x;
}

// Negative literals are rewritten with trichotomy, so every conjunct is
// made of positive < and = literals only.
inline order_dnf to_order_dnf(const formula& f, bool positive) {
  switch (f.kind()) {
    case formula_kind::truth: return positive ? order_dnf{{}} : order_dnf{};
    case formula_kind::falsity: return positive ? order_dnf{} : order_dnf{{}};
    case formula_kind::atom: {
      var_index a = f.args()[0], b = f.args()[1];
      if (positive) return {{{true, a, b}}};
      return {{{true, b, a}}, {{false, a, b}}};
    }
    case formula_kind::equal: {
      var_index a = f.args()[0], b = f.args()[1];
      if (positive) return {{{false, a, b}}};
      return {{{true, a, b}}, {{true, b, a}}};
    }
    case formula_kind::negation: return to_order_dnf(f.child(), !positive);
    case formula_kind::conjunction: {
      auto l = to_order_dnf(f.lhs(), positive), r = to_order_dnf(f.rhs(), positive);
      return positive ? dnf_product(l, r) : dnf_union(std::move(l), r);
    }
    case formula_kind::disjunction: {
      auto l = to_order_dnf(f.lhs(), positive), r = to_order_dnf(f.rhs(), positive);
      return positive ? dnf_union(std::move(l), r) : dnf_product(l, r);
    }
    case formula_kind::exists: break;
  }
  throw error(errc::internal_error, "DNF conversion needs a quantifier-free formula");
}

inline formula lit_formula(const order_lit& l) {
  if (l.a == l.b) return l.lt ? formula::bottom() : formula::top();
  return l.lt ? formula::atom("lt", {l.a, l.b}) : formula::equal(l.a, l.b);
}

inline formula conj_lits(const std::vector<order_lit>& ls) {
  formula acc = formula::top();
  for (const auto& l : ls) {
    formula g = lit_formula(l);
    if (g.is_false()) return g;
    if (g.is_true()) continue;
    acc = acc.is_true() ? g : conj(acc, g);
  }
  return acc;
}

// ∃x over one conjunct of order literals.
inline formula eliminate_conjunct(var_index x, const order_conjunct& c) {
  for (const auto& l : c)
    if (l.lt && l.a == l.b) return formula::bottom();
  // an equation x = e lets us substitute e for x
  for (const auto& l : c) {
    if (l.lt || l.a == l.b) continue;
    if (l.a != x && l.b != x) continue;
    var_index e = l.a == x ? l.b : l.a;
    std::set<order_lit> out;
    for (const auto& m : c) {
      order_lit n{m.lt, m.a == x ? e : m.a, m.b == x ? e : m.b};
      out.insert(n);
    }
    return conj_lits(std::vector<order_lit>(out.begin(), out.end()));
  }
  // only strict bounds remain: density and no endpoints
  std::vector<var_index> lower, upper;
  std::set<order_lit> out;
  for (const auto& l : c) {
    if (l.a == x && l.b == x) continue;  // x = x
    if (l.a == x)
      upper.push_back(l.b);
    else if (l.b == x)
      lower.push_back(l.a);
    else
      out.insert(l);
  }
  for (auto lo : lower)
    for (auto up : upper) out.insert({true, lo, up});
  return conj_lits(std::vector<order_lit>(out.begin(), out.end()));
}

inline void flatten_conj(const formula& f, std::vector<formula>& out) {
  if (f.kind() == formula_kind::conjunction) {
    flatten_conj(f.lhs(), out);
    flatten_conj(f.rhs(), out);
  } else {
    out.push_back(f);
  }
}

// ∃x body, body quantifier-free.
inline formula eliminate(var_index x, const formula& body) {
  if (!body.has_free(x)) return body;
  if (body.kind() == formula_kind::disjunction)
    return simplify_constants(disj(eliminate(x, body.lhs()), eliminate(x, body.rhs())));
  std::vector<formula> parts, outside, inside;
  flatten_conj(body, parts);
  for (auto& p : parts) (p.has_free(x) ? inside : outside).push_back(p);
  formula in = conj_all(inside);
  formula done;
  if (inside.size() == 1 && in.kind() == formula_kind::disjunction) {
    done = eliminate(x, in);
  } else {
    std::vector<formula> alts;
    for (const auto& c : to_order_dnf(in, true)) alts.push_back(eliminate_conjunct(x, c));
    done = simplify_constants(disj_all(alts));
  }
  return simplify_constants(conj(conj_all(outside), done));
}


// Literals for the satisfiability search: a < b, a <= b, a = b, a != b.
enum class rel_kind { lt, le, eq, ne };
struct sat_lit {
  rel_kind kind;
  var_index a, b;
};
using sat_dnf = std::vector<std::vector<sat_lit>>;

inline sat_dnf sat_product(const sat_dnf& x, const sat_dnf& y) {
  if (x.size() * y.size() > dnf_cap) throw error(errc::capacity_exceeded, "DNF expansion too large in DLO search");
  sat_dnf out;
  for (const auto& a : x)
    for (const auto& b : y) {
      auto c = a;
      c.insert(c.end(), b.begin(), b.end());
      out.push_back(std::move(c));
    }
  return out;
}

inline sat_dnf to_sat_dnf(const formula& f, bool positive) {
  switch (f.kind()) {
    case formula_kind::truth: return positive ? sat_dnf{{}} : sat_dnf{};
    case formula_kind::falsity: return positive ? sat_dnf{} : sat_dnf{{}};
    case formula_kind::atom: {
      var_index a = f.args()[0], b = f.args()[1];
      return positive ? sat_dnf{{{rel_kind::lt, a, b}}} : sat_dnf{{{rel_kind::le, b, a}}};
    }
    case formula_kind::equal: {
      var_index a = f.args()[0], b = f.args()[1];
      return positive ? sat_dnf{{{rel_kind::eq, a, b}}} : sat_dnf{{{rel_kind::ne, a, b}}};
    }
    case formula_kind::negation: return to_sat_dnf(f.child(), !positive);
    case formula_kind::conjunction:
    case formula_kind::disjunction: {
      auto l = to_sat_dnf(f.lhs(), positive), r = to_sat_dnf(f.rhs(), positive);
      bool product = (f.kind() == formula_kind::conjunction) == positive;
      if (product) return sat_product(l, r);
      if (l.size() + r.size() > dnf_cap) throw error(errc::capacity_exceeded, "DNF expansion too large in DLO search");
      l.insert(l.end(), r.begin(), r.end());
      return l;
    }
    case formula_kind::exists: break;
  }
  throw error(errc::internal_error, "DNF conversion needs a quantifier-free formula");
}

/// A conjunction of <, <=, =, != literals holds somewhere in a dense
/// order without endpoints iff, after collapsing the cycles of the
/// "at most" graph to points, no < edge and no != pair falls inside one
/// collapsed class.
inline bool literals_consistent(const std::vector<sat_lit>& lits) {
  std::unordered_map<var_index, int> id;
  auto node = [&](var_index v) {
    auto it = id.find(v);
    if (it != id.end()) return it->second;
    int n = static_cast<int>(id.size());
    id.emplace(v, n);
    return n;
  };
  std::vector<std::pair<int, int>> edges;
  for (const auto& l : lits) {
    int a = node(l.a), b = node(l.b);
    if (l.kind == rel_kind::lt || l.kind == rel_kind::le) edges.emplace_back(a, b);
    if (l.kind == rel_kind::eq) {
      edges.emplace_back(a, b);
      edges.emplace_back(b, a);
    }
  }
  int n = static_cast<int>(id.size());
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (auto [a, b] : edges) adj[static_cast<std::size_t>(a)].push_back(b);
  // Tarjan, iterative
  std::vector<int> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0),
      comp(static_cast<std::size_t>(n), -1);
  std::vector<char> on_stack(static_cast<std::size_t>(n), 0);
  std::vector<int> stack;
  int counter = 0, comps = 0;
  for (int root = 0; root < n; ++root) {
    if (index[static_cast<std::size_t>(root)] >= 0) continue;
    std::vector<std::pair<int, std::size_t>> work{{root, 0}};
    while (!work.empty()) {
      auto& [v, next] = work.back();
      auto vs = static_cast<std::size_t>(v);
      if (next == 0 && index[vs] < 0) {
        index[vs] = low[vs] = counter++;
        stack.push_back(v);
        on_stack[vs] = 1;
      }
      if (next < adj[vs].size()) {
        int w = adj[vs][next++];
        auto ws = static_cast<std::size_t>(w);
        if (index[ws] < 0)
          work.emplace_back(w, 0);
        else if (on_stack[ws])
          low[vs] = std::min(low[vs], index[ws]);
        continue;
      }
      if (low[vs] == index[vs]) {
        for (;;) {
          int w = stack.back();
          stack.pop_back();
          on_stack[static_cast<std::size_t>(w)] = 0;
          comp[static_cast<std::size_t>(w)] = comps;
          if (w == v) break;
        }
        ++comps;
      }
      int done = v;
      work.pop_back();
      if (!work.empty()) {
        auto ps = static_cast<std::size_t>(work.back().first);
        low[ps] = std::min(low[ps], low[static_cast<std::size_t>(done)]);
      }
    }
  }
  for (const auto& l : lits) {
    bool same = comp[static_cast<std::size_t>(id[l.a])] == comp[static_cast<std::size_t>(id[l.b])];
    if (same && (l.kind == rel_kind::lt || l.kind == rel_kind::ne)) return false;
  }
  return true;
}

inline bool dnf_search(const std::vector<sat_dnf>& parts, std::size_t k, std::vector<sat_lit>& lits) {
  if (k == parts.size()) return true;
  for (const auto& c : parts[k]) {
    std::size_t mark = lits.size();
    lits.insert(lits.end(), c.begin(), c.end());
    if (literals_consistent(lits) && dnf_search(parts, k + 1, lits)) return true;
    lits.resize(mark);
  }
  return false;
}

/// Satisfiability of quantifier-free order formulas in (Q,<), by choosing
/// one disjunct per formula and testing the literal set. Independent
/// groups of formulas are decided separately.
inline bool order_formulas_consistent(const std::vector<formula>& qf) {
  for (const auto& group : variable_groups(qf)) {
    std::vector<std::pair<sat_dnf, std::size_t>> parts;
    for (auto k : group.formulas) {
      auto d = to_sat_dnf(qf[k], true);
      if (d.empty()) return false;
      parts.emplace_back(std::move(d), k);
    }
    // units first; among equals, later formulas first
    std::sort(parts.begin(), parts.end(), [](const auto& x, const auto& y) {
      if (x.first.size() != y.first.size()) return x.first.size() < y.first.size();
      return x.second > y.second;
    });
    std::vector<sat_dnf> ordered;
    for (auto& p : parts) ordered.push_back(std::move(p.first));
    std::vector<sat_lit> lits;
    if (!dnf_search(ordered, 0, lits)) return false;
  }
  return true;
}

}  // namespace detail

/// Quantifier elimination for dense linear orders without endpoints.
/// Innermost quantifiers go first; the output is quantifier-free and
/// DLO-equivalent to the input.
class dlo_eliminator {
public:
  formula operator()(const formula& f) const {
    bool compound = f.kind() != formula_kind::atom && f.kind() != formula_kind::equal;
    if (compound) {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = top_.find(f);
      if (it != top_.end()) return it->second;
    }
    validate(f, dlo_signature());
    formula r = run(f);
    if (compound) {
      std::lock_guard<std::mutex> lock(mu_);
      if (top_.size() > 500'000) top_.clear();
      top_.emplace(f, r);
    }
    return r;
  }

private:
  formula run(const formula& f) const {
    switch (f.kind()) {
      case formula_kind::truth:
      case formula_kind::falsity:
        return f;
      case formula_kind::atom:
        return f.args()[0] == f.args()[1] ? formula::bottom() : f;
      case formula_kind::equal:
        return f.args()[0] == f.args()[1] ? formula::top() : f;
      case formula_kind::negation:
        return simplify_constants(neg(run(f.child())));
      case formula_kind::conjunction:
        return simplify_constants(conj(run(f.lhs()), run(f.rhs())));
      case formula_kind::disjunction:
        return simplify_constants(disj(run(f.lhs()), run(f.rhs())));
      case formula_kind::exists: {
        {
          std::lock_guard<std::mutex> lock(mu_);
          auto it = memo_.find(f);
          if (it != memo_.end()) return it->second;
        }
        formula r = detail::eliminate(f.bound_var(), run(f.child()));
        std::lock_guard<std::mutex> lock(mu_);
        if (memo_.size() > 500'000) memo_.clear();
        memo_.emplace(f, r);
        return r;
      }
    }
    return f;
  }

  mutable std::mutex mu_;
  mutable std::unordered_map<formula, formula, formula_hash> memo_;  // exists nodes
  mutable std::unordered_map<formula, formula, formula_hash> top_;   // whole queries
};

inline formula dlo_qe(const formula& f) {
  static const dlo_eliminator qe;
  return qe(f);
}

/// The complete theory of (Q, <). Consistency is decided by eliminating
/// quantifiers and then, with at most `order_type_limit` free variables,
/// by searching the weak orderings of those variables. Larger sets (long
/// filter chains) go through the literal search instead.
class dlo_oracle final : public theory_oracle {
public:
  const signature& sig() const override { return dlo_signature(); }
  std::string kind() const override { return "dlo-qe"; }
  bool complete() const override { return true; }

  bool is_consistent_all(const std::vector<formula>& fs) const override {
    std::vector<formula> qf;
    qf.reserve(fs.size());
    for (const auto& f : fs) {
      formula g = qe_(f);
      if (g.is_false()) return false;
      if (!g.is_true()) qf.push_back(std::move(g));
    }
    var_set vs;
    for (const auto& g : qf) vs.insert(g.free_vars().begin(), g.free_vars().end());
    if (vs.size() <= order_type_limit) return satisfying_order(qf).has_value();
    return detail::order_formulas_consistent(qf);
  }

  static constexpr std::size_t order_type_limit = 6;

private:
  dlo_eliminator qe_;
};

}  // namespace henkin

#endif
