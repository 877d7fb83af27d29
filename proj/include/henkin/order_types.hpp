#ifndef HENKIN_ORDER_TYPES_HPP
#define HENKIN_ORDER_TYPES_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "henkin/error.hpp"
#include "henkin/formula.hpp"

namespace henkin {

/// A weak ordering of finitely many variables: `rank[v]` is the block of
/// v, blocks numbered 0..blocks-1 from the bottom; -1 marks an absent
/// variable. Equal ranks mean equal points.
struct order_type {
  std::vector<int> rank;
  int blocks = 0;
};

namespace detail {

// Inserts vars[k..] into every possible position. Each weak ordering of
// the variable set is produced exactly once.
template <class Visit, class Prune>
bool insert_orders(const std::vector<var_index>& vars, std::size_t k, order_type& o, Visit& visit, Prune& prune) {
  if (prune(o)) return false;
  if (k == vars.size()) return visit(static_cast<const order_type&>(o));
  var_index x = vars[k];
  for (int b = 0; b < o.blocks; ++b) {
    o.rank[x] = b;
    if (insert_orders(vars, k + 1, o, visit, prune)) return true;
  }
  for (int g = 0; g <= o.blocks; ++g) {
    for (auto& r : o.rank)
      if (r >= g) ++r;
    o.rank[x] = g;
    ++o.blocks;
    bool stop = insert_orders(vars, k + 1, o, visit, prune);
    --o.blocks;
    o.rank[x] = -1;
    for (auto& r : o.rank)
      if (r > g) --r;
    if (stop) return true;
  }
  o.rank[x] = -1;
  return false;
}

}  // namespace detail

/// Calls visit(o) for every weak ordering of `vars`; stops early when
/// visit returns true. Returns whether it stopped early.
template <class Visit>
bool for_each_order_type(const std::vector<var_index>& vars, Visit visit) {
  order_type o;
  var_index bound = vars.empty() ? 0 : *std::max_element(vars.begin(), vars.end()) + 1;
  o.rank.assign(bound, -1);
  auto no_prune = [](const order_type&) { return false; };
  return detail::insert_orders(vars, 0, o, visit, no_prune);
}

/// Three-valued value of a quantifier-free order formula (`lt`, `=`) on
/// a partial weak ordering: 0 false, 1 true, 2 undetermined.
inline int eval_order3(const formula& f, const order_type& o) {
  auto rank = [&](var_index v) { return v < o.rank.size() ? o.rank[v] : -1; };
  switch (f.kind()) {
    case formula_kind::truth: return 1;
    case formula_kind::falsity: return 0;
    case formula_kind::atom: {
      int a = rank(f.args()[0]), b = rank(f.args()[1]);
      if (a < 0 || b < 0) return 2;
      return a < b ? 1 : 0;
    }
    case formula_kind::equal: {
      int a = rank(f.args()[0]), b = rank(f.args()[1]);
      if (a < 0 || b < 0) return 2;
      return a == b ? 1 : 0;
    }
    case formula_kind::negation: {
      int c = eval_order3(f.child(), o);
      return c == 2 ? 2 : 1 - c;
    }
    case formula_kind::conjunction: {
      int l = eval_order3(f.lhs(), o);
      if (l == 0) return 0;
      int r = eval_order3(f.rhs(), o);
      if (r == 0) return 0;
      return (l == 1 && r == 1) ? 1 : 2;
    }
    case formula_kind::disjunction: {
      int l = eval_order3(f.lhs(), o);
      if (l == 1) return 1;
      int r = eval_order3(f.rhs(), o);
      if (r == 1) return 1;
      return (l == 0 && r == 0) ? 0 : 2;
    }
    case formula_kind::exists:
      throw error(errc::internal_error, "order-type evaluation needs a quantifier-free formula");
  }
  return 2;
}

inline bool eval_order(const formula& f, const order_type& o) { return eval_order3(f, o) == 1; }

/// Finds a weak ordering of the free variables satisfying every formula,
/// pruning partial orderings on which some formula is already false.
/// Complete: returns nullopt only after every ordering is excluded.
inline std::optional<order_type> satisfying_order(const std::vector<formula>& qf) {
  var_set vs;
  for (const auto& f : qf)
    for (auto v : f.free_vars()) vs.insert(v);
  std::vector<var_index> vars(vs.begin(), vs.end());
  order_type o;
  o.rank.assign(vars.empty() ? 0 : vars.back() + 1, -1);
  std::optional<order_type> found;
  auto visit = [&](const order_type& t) {
    found = t;
    return true;
  };
  auto prune = [&](const order_type& t) {
    for (const auto& f : qf)
      if (eval_order3(f, t) == 0) return true;
    return false;
  };
  detail::insert_orders(vars, 0, o, visit, prune);
  return found;
}

}  // namespace henkin

#endif
