#ifndef HENKIN_FORMULA_HPP
#define HENKIN_FORMULA_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <iterator>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "henkin/error.hpp"
#include "henkin/transformation.hpp"

namespace henkin {

enum class formula_kind { truth, falsity, atom, equal, negation, conjunction, disjunction, exists };

/// Immutable first-order formula over a relational signature.
///
/// Nodes are shared; copying a formula is a reference-count bump. Each
/// node caches its depth, structural hash, free variables and the full
/// set of variable indices occurring in it.
class formula {
  struct node {
    formula_kind kind;
    std::string relation;
    std::vector<var_index> args;  // atom arguments, or {i, j} for equality
    var_index bound = 0;          // exists
    std::shared_ptr<const node> left, right;
    unsigned depth = 0;
    std::size_t hash = 0;
    std::vector<var_index> free;  // sorted
    std::vector<var_index> vars;  // sorted, free and bound
  };

public:
  /// Defaults to `true`.
  formula() : n_(truth_node()) {}

  static formula top() { return formula(truth_node()); }
  static formula bottom() { return formula(falsity_node()); }

  static formula atom(std::string rel, std::vector<var_index> args) {
    auto n = std::make_shared<node>();
    n->kind = formula_kind::atom;
    n->relation = std::move(rel);
    n->args = std::move(args);
    return finish(std::move(n));
  }

  static formula equal(var_index i, var_index j) {
    auto n = std::make_shared<node>();
    n->kind = formula_kind::equal;
    n->args = {i, j};
    return finish(std::move(n));
  }

  static formula negation(const formula& f) { return unary(formula_kind::negation, f, 0); }
  static formula exists(var_index v, const formula& body) { return unary(formula_kind::exists, body, v); }
  static formula conjunction(const formula& a, const formula& b) { return binary(formula_kind::conjunction, a, b); }
  static formula disjunction(const formula& a, const formula& b) { return binary(formula_kind::disjunction, a, b); }

  formula_kind kind() const { return n_->kind; }
  const std::string& relation() const { return n_->relation; }
  const std::vector<var_index>& args() const { return n_->args; }
  var_index bound_var() const { return n_->bound; }
  formula child() const { return formula(n_->left); }
  formula lhs() const { return formula(n_->left); }
  formula rhs() const { return formula(n_->right); }

  unsigned depth() const { return n_->depth; }
  std::size_t hash() const { return n_->hash; }
  const std::vector<var_index>& free_vars() const { return n_->free; }
  const std::vector<var_index>& all_vars() const { return n_->vars; }
  std::size_t size() const {
    std::size_t s = 1;
    if (n_->left) s += formula(n_->left).size();
    if (n_->right) s += formula(n_->right).size();
    return s;
  }

  bool is_true() const { return n_->kind == formula_kind::truth; }
  bool is_false() const { return n_->kind == formula_kind::falsity; }

  bool has_free(var_index v) const { return std::binary_search(n_->free.begin(), n_->free.end(), v); }

  /// 1 + the largest variable index occurring anywhere, 0 for none.
  var_index var_bound() const { return n_->vars.empty() ? 0 : n_->vars.back() + 1; }

  friend bool operator==(const formula& a, const formula& b) { return same(a.n_.get(), b.n_.get()); }
  friend bool operator!=(const formula& a, const formula& b) { return !(a == b); }

private:
  explicit formula(std::shared_ptr<const node> n) : n_(std::move(n)) {}

  static std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
  }

  static std::vector<var_index> merge(const std::vector<var_index>& a, const std::vector<var_index>& b) {
    std::vector<var_index> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
  }

  static formula finish(std::shared_ptr<node> n) {
    std::size_t h = mix(0, static_cast<std::size_t>(n->kind) + 1);
    switch (n->kind) {
      case formula_kind::truth:
      case formula_kind::falsity:
        n->depth = 0;
        break;
      case formula_kind::atom:
      case formula_kind::equal: {
        n->depth = 0;
        h = mix(h, std::hash<std::string>{}(n->relation));
        for (auto a : n->args) h = mix(h, a);
        n->free = n->args;
        std::sort(n->free.begin(), n->free.end());
        n->free.erase(std::unique(n->free.begin(), n->free.end()), n->free.end());
        n->vars = n->free;
        break;
      }
      case formula_kind::negation:
        n->depth = n->left->depth + 1;
        h = mix(h, n->left->hash);
        n->free = n->left->free;
        n->vars = n->left->vars;
        break;
      case formula_kind::exists: {
        n->depth = n->left->depth + 1;
        h = mix(mix(h, n->bound), n->left->hash);
        n->free = n->left->free;
        n->free.erase(std::remove(n->free.begin(), n->free.end(), n->bound), n->free.end());
        n->vars = merge(n->left->vars, {n->bound});
        break;
      }
      case formula_kind::conjunction:
      case formula_kind::disjunction:
        n->depth = std::max(n->left->depth, n->right->depth) + 1;
        h = mix(mix(h, n->left->hash), n->right->hash);
        n->free = merge(n->left->free, n->right->free);
        n->vars = merge(n->left->vars, n->right->vars);
        break;
    }
    n->hash = h;
    return formula(std::shared_ptr<const node>(std::move(n)));
  }

  static formula unary(formula_kind k, const formula& f, var_index v) {
    auto n = std::make_shared<node>();
    n->kind = k;
    n->bound = v;
    n->left = f.n_;
    return finish(std::move(n));
  }

  static formula binary(formula_kind k, const formula& a, const formula& b) {
    auto n = std::make_shared<node>();
    n->kind = k;
    n->left = a.n_;
    n->right = b.n_;
    return finish(std::move(n));
  }

  static const std::shared_ptr<const node>& truth_node() {
    static const std::shared_ptr<const node> t = [] {
      auto n = std::make_shared<node>();
      n->kind = formula_kind::truth;
      return finish(std::move(n)).n_;
    }();
    return t;
  }

  static const std::shared_ptr<const node>& falsity_node() {
    static const std::shared_ptr<const node> f = [] {
      auto n = std::make_shared<node>();
      n->kind = formula_kind::falsity;
      return finish(std::move(n)).n_;
    }();
    return f;
  }

  static bool same(const node* a, const node* b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->hash != b->hash || a->kind != b->kind || a->bound != b->bound || a->args != b->args ||
        a->relation != b->relation)
      return false;
    return same(a->left.get(), b->left.get()) && same(a->right.get(), b->right.get());
  }

  std::shared_ptr<const node> n_;
};

struct formula_hash {
  std::size_t operator()(const formula& f) const { return f.hash(); }
};

inline formula neg(const formula& f) { return formula::negation(f); }
inline formula conj(const formula& a, const formula& b) { return formula::conjunction(a, b); }
inline formula disj(const formula& a, const formula& b) { return formula::disjunction(a, b); }
inline formula exists(var_index v, const formula& f) { return formula::exists(v, f); }

/// (a ∧ ¬b) ∨ (¬a ∧ b)
inline formula exclusive_or(const formula& a, const formula& b) {
  return disj(conj(a, neg(b)), conj(neg(a), b));
}

/// Left-nested conjunction; `true` for an empty list.
inline formula conj_all(const std::vector<formula>& fs) {
  if (fs.empty()) return formula::top();
  formula acc = fs.front();
  for (std::size_t k = 1; k < fs.size(); ++k) acc = conj(acc, fs[k]);
  return acc;
}

inline formula disj_all(const std::vector<formula>& fs) {
  if (fs.empty()) return formula::bottom();
  formula acc = fs.front();
  for (std::size_t k = 1; k < fs.size(); ++k) acc = disj(acc, fs[k]);
  return acc;
}

inline var_set free_vars(const formula& f) { return var_set(f.free_vars().begin(), f.free_vars().end()); }

namespace detail {

// 0: top level, 1: operand of '|', 2: operand of '&', 3: operand of a prefix operator
inline void print(const formula& f, int ctx, std::string& out) {
  auto var = [&](var_index v) { out += "v" + std::to_string(v); };
  switch (f.kind()) {
    case formula_kind::truth: out += "true"; return;
    case formula_kind::falsity: out += "false"; return;
    case formula_kind::atom:
      out += f.relation();
      out += "(";
      for (std::size_t k = 0; k < f.args().size(); ++k) {
        if (k) out += ",";
        var(f.args()[k]);
      }
      out += ")";
      return;
    case formula_kind::equal:
      var(f.args()[0]);
      out += " = ";
      var(f.args()[1]);
      return;
    case formula_kind::negation:
      out += "~";
      print(f.child(), 3, out);
      return;
    case formula_kind::exists:
      out += "E ";
      var(f.bound_var());
      out += " (";
      print(f.child(), 0, out);
      out += ")";
      return;
    case formula_kind::disjunction:
      if (ctx > 1) out += "(";
      print(f.lhs(), 1, out);
      out += " | ";
      print(f.rhs(), 2, out);
      if (ctx > 1) out += ")";
      return;
    case formula_kind::conjunction:
      if (ctx > 2) out += "(";
      print(f.lhs(), 2, out);
      out += " & ";
      print(f.rhs(), 3, out);
      if (ctx > 2) out += ")";
      return;
  }
}

}  // namespace detail

/// Canonical text; `parse_formula` reads it back to the same tree.
inline std::string to_string(const formula& f) {
  std::string out;
  detail::print(f, 0, out);
  return out;
}

/// Constant folding only: removes `true`/`false` operands and double negation.
inline formula simplify_constants(const formula& f) {
  switch (f.kind()) {
    case formula_kind::negation: {
      formula c = simplify_constants(f.child());
      if (c.is_true()) return formula::bottom();
      if (c.is_false()) return formula::top();
      if (c.kind() == formula_kind::negation) return c.child();
      return neg(c);
    }
    case formula_kind::conjunction: {
      formula a = simplify_constants(f.lhs()), b = simplify_constants(f.rhs());
      if (a.is_false() || b.is_false()) return formula::bottom();
      if (a.is_true()) return b;
      if (b.is_true()) return a;
      return conj(a, b);
    }
    case formula_kind::disjunction: {
      formula a = simplify_constants(f.lhs()), b = simplify_constants(f.rhs());
      if (a.is_true() || b.is_true()) return formula::top();
      if (a.is_false()) return b;
      if (b.is_false()) return a;
      return disj(a, b);
    }
    case formula_kind::exists: {
      formula b = simplify_constants(f.child());
      if (b.is_true() || b.is_false()) return b;
      return exists(f.bound_var(), b);
    }
    default:
      return f;
  }
}

}  // namespace henkin

#endif
