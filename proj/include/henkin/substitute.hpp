#ifndef HENKIN_SUBSTITUTE_HPP
#define HENKIN_SUBSTITUTE_HPP

#include <vector>

#include "henkin/formula.hpp"
#include "henkin/transformation.hpp"

namespace henkin {

namespace detail {

inline var_index least_fresh(const var_set& avoid, const transformation& t) {
  var_index v = 0;
  for (;;) {
    if (!avoid.count(v) && t(v) == v) {
      bool hit = false;
      for (const auto& p : t.pairs())
        if (p.second == v) {
          hit = true;
          break;
        }
      if (!hit) return v;
    }
    ++v;
  }
}

inline formula substitute_rec(const formula& f, const transformation& t, const var_set& avoid) {
  switch (f.kind()) {
    case formula_kind::truth:
    case formula_kind::falsity:
      return f;
    case formula_kind::atom: {
      std::vector<var_index> args;
      args.reserve(f.args().size());
      for (auto a : f.args()) args.push_back(t(a));
      return formula::atom(f.relation(), std::move(args));
    }
    case formula_kind::equal:
      return formula::equal(t(f.args()[0]), t(f.args()[1]));
    case formula_kind::negation:
      return neg(substitute_rec(f.child(), t, avoid));
    case formula_kind::conjunction:
      return conj(substitute_rec(f.lhs(), t, avoid), substitute_rec(f.rhs(), t, avoid));
    case formula_kind::disjunction:
      return disj(substitute_rec(f.lhs(), t, avoid), substitute_rec(f.rhs(), t, avoid));
    case formula_kind::exists: {
      var_index v = f.bound_var();
      transformation inner = t.without(v);
      bool capture = false;
      for (auto u : f.free_vars())
        if (inner(u) == v) {
          capture = true;
          break;
        }
      if (!capture) return exists(v, substitute_rec(f.child(), inner, avoid));
      var_index fresh = least_fresh(avoid, inner);
      transformation renamed = inner.with(v, fresh);
      return exists(fresh, substitute_rec(f.child(), renamed, avoid));
    }
  }
  return f;
}

}  // namespace detail

/// Simultaneous substitution of v_i by v_τ(i) on free occurrences.
///
/// A bound variable is renamed only when a substituted free variable
/// would be captured by it; the new name is the least index that does
/// not occur in f and is neither moved nor hit by the current map.
inline formula substitute(const transformation& t, const formula& f) {
  if (t.is_identity()) return f;
  var_set avoid(f.all_vars().begin(), f.all_vars().end());
  return detail::substitute_rec(f, t, avoid);
}

}  // namespace henkin

#endif
