// Independent reference computations for the tests. Nothing here calls
// into the library's evaluators, algebra operations or searches; only the
// formula tree and transformation types are shared.
#ifndef HENKIN_TEST_BRUTE_HPP
#define HENKIN_TEST_BRUTE_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "henkin/formula.hpp"
#include "henkin/transformation.hpp"

namespace brute {

using henkin::formula;
using henkin::formula_kind;
using henkin::var_index;

/// A structure as plain sets of tuples.
struct model {
  unsigned size = 0;
  std::map<std::string, std::set<std::vector<unsigned>>> rel;
};

/// Evaluates by the textbook clauses. `s` maps every variable index the
/// formula mentions (missing entries read as 0).
inline bool eval(const formula& f, const model& m, std::map<var_index, unsigned> s) {
  auto val = [&](var_index v) {
    auto it = s.find(v);
    return it == s.end() ? 0u : it->second;
  };
  switch (f.kind()) {
    case formula_kind::truth: return true;
    case formula_kind::falsity: return false;
    case formula_kind::atom: {
      std::vector<unsigned> t;
      for (auto a : f.args()) t.push_back(val(a));
      auto it = m.rel.find(f.relation());
      return it != m.rel.end() && it->second.count(t) > 0;
    }
    case formula_kind::equal: return val(f.args()[0]) == val(f.args()[1]);
    case formula_kind::negation: return !eval(f.child(), m, s);
    case formula_kind::conjunction: return eval(f.lhs(), m, s) && eval(f.rhs(), m, s);
    case formula_kind::disjunction: return eval(f.lhs(), m, s) || eval(f.rhs(), m, s);
    case formula_kind::exists:
      for (unsigned u = 0; u < m.size; ++u) {
        s[f.bound_var()] = u;
        if (eval(f.child(), m, s)) return true;
      }
      return false;
  }
  return false;
}

/// Every structure with one binary relation `name` on a base of `size`.
inline std::vector<model> all_binary_models(unsigned size, const std::string& name = "lt") {
  std::vector<model> out;
  unsigned cells = size * size;
  for (std::uint32_t mask = 0; mask < (1u << cells); ++mask) {
    model m;
    m.size = size;
    m.rel[name];
    for (unsigned c = 0; c < cells; ++c)
      if (mask >> c & 1u) m.rel[name].insert({c / size, c % size});
    out.push_back(m);
  }
  return out;
}

/// Calls fn(s) for every assignment of `vars` into {0..size-1}.
template <class Fn>
void for_each_assignment(const std::vector<var_index>& vars, unsigned size, Fn fn) {
  std::vector<unsigned> digits(vars.size(), 0);
  for (;;) {
    std::map<var_index, unsigned> s;
    for (std::size_t k = 0; k < vars.size(); ++k) s[vars[k]] = digits[k];
    fn(s);
    std::size_t k = 0;
    while (k < digits.size() && ++digits[k] == size) digits[k++] = 0;
    if (k == digits.size()) break;
  }
}

inline var_index pick(std::mt19937& rng, unsigned n) { return static_cast<var_index>(rng() % n); }

/// Random formula over {lt/2} (and equality if asked) with variables < nvars.
inline formula random_formula(std::mt19937& rng, unsigned depth, var_index nvars, bool equality) {
  std::uniform_int_distribution<unsigned> var(0, nvars - 1);
  unsigned pick = depth == 0 ? 0 : std::uniform_int_distribution<unsigned>(0, 5)(rng);
  switch (pick) {
    case 0:
    case 1: {
      unsigned leaf = std::uniform_int_distribution<unsigned>(0, 9)(rng);
      if (leaf == 0) return formula::top();
      if (leaf == 1) return formula::bottom();
      if (equality && leaf < 4) return formula::equal(var(rng), var(rng));
      return formula::atom("lt", {var(rng), var(rng)});
    }
    case 2: return henkin::neg(random_formula(rng, depth - 1, nvars, equality));
    case 3: return henkin::conj(random_formula(rng, depth - 1, nvars, equality), random_formula(rng, depth - 1, nvars, equality));
    case 4: return henkin::disj(random_formula(rng, depth - 1, nvars, equality), random_formula(rng, depth - 1, nvars, equality));
    default: return henkin::exists(var(rng), random_formula(rng, depth - 1, nvars, equality));
  }
}

/// Pointwise composition on small indices: (t1 ∘ t2)(i) = t1(t2(i)).
inline std::vector<var_index> pointwise(const henkin::transformation& t1, const henkin::transformation& t2,
                                        var_index bound) {
  std::vector<var_index> out;
  for (var_index i = 0; i < bound; ++i) out.push_back(t1(t2(i)));
  return out;
}

}  // namespace brute

#endif
