#ifndef HENKIN_TYPES_HPP
#define HENKIN_TYPES_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "henkin/enumerate.hpp"
#include "henkin/error.hpp"
#include "henkin/finite_model.hpp"
#include "henkin/formula.hpp"
#include "henkin/generic_filter.hpp"
#include "henkin/oracle.hpp"
#include "henkin/repr.hpp"
#include "henkin/substitute.hpp"
#include "henkin/type_set.hpp"

namespace henkin {

struct principality_verdict {
  enum class kind { principal, non_principal_up_to, non_principal_certified };
  kind what = kind::non_principal_up_to;
  std::optional<formula> witness;  // principal
  std::size_t candidate_bound = 0;
  unsigned depth_bound = 0;
  std::string certificate;  // non_principal_certified

  std::string to_string() const {
    switch (what) {
      case kind::principal: return "Principal(" + henkin::to_string(*witness) + ")";
      case kind::non_principal_up_to:
        return "NonPrincipalUpTo(" + std::to_string(candidate_bound) + " members, depth " +
               std::to_string(depth_bound) + ")";
      case kind::non_principal_certified: return "NonPrincipalCertified(" + certificate + ")";
    }
    return "?";
  }
};

/// Only certificate so far: the descending chain over the complete
/// theory of (Q,<). Any φ consistent with T leaves some link
/// v_{n+2} < v_{n+1} refutable beyond φ's variables (see locally_omits),
/// so no φ implies the whole chain.
inline std::optional<std::string> builtin_nonprincipal_certificate(const theory_oracle& T, const type_set& X) {
  if (X.kind() == type_set::family::descending_chain && T.kind() == "dlo-qe" && T.complete())
    return std::string("dlo-descending-chain");
  return std::nullopt;
}

/// Searches ψ implying the first `candidate_bound` members of X: first
/// `true`, then the conjunction of those members, then every formula of
/// depth ≤ depth_bound over the type's variables.
inline principality_verdict principality(const theory_oracle& T, const type_set& X, std::size_t candidate_bound,
                                         unsigned depth_bound) {
  principality_verdict v;
  v.candidate_bound = candidate_bound;
  v.depth_bound = depth_bound;
  if (auto cert = builtin_nonprincipal_certificate(T, X)) {
    v.what = principality_verdict::kind::non_principal_certified;
    v.certificate = *cert;
    return v;
  }
  auto members = X.prefix(candidate_bound);
  auto implies_all = [&](const formula& psi) {
    if (!T.is_consistent(psi)) return false;
    for (const auto& phi : members)
      if (!T.entails(psi, phi)) return false;
    return true;
  };
  std::vector<formula> first{formula::top()};
  if (!members.empty()) first.push_back(conj_all(members));
  for (const auto& psi : first)
    if (implies_all(psi)) {
      v.what = principality_verdict::kind::principal;
      v.witness = psi;
      return v;
    }
  var_index vars = 0;
  for (const auto& phi : members) vars = std::max(vars, phi.var_bound());
  formula_enumerator en(T.sig(), vars);
  for (const auto& psi : en.up_to_depth(depth_bound))
    if (implies_all(psi)) {
      v.what = principality_verdict::kind::principal;
      v.witness = psi;
      return v;
    }
  return v;
}

struct local_omission_report {
  std::size_t tested = 0;        // consistent φ examined
  std::size_t skipped = 0;       // inconsistent φ
  std::size_t by_chain_step = 0; // passed with ξ = member n+1, n = var bound of φ
  std::vector<formula> failures;
  bool passed() const { return failures.empty(); }
};

/// For each consistent φ, looks for a member ξ of X with φ ∧ ¬ξ
/// consistent. For the descending chain the member relation(v_{n+2},
/// v_{n+1}) with φ's variables among v0..v(n-1) is tried first; otherwise,
/// and as a fallback, the first `member_bound` members in order.
inline local_omission_report locally_omits(const theory_oracle& T, const type_set& X, const std::vector<formula>& phis,
                                           std::size_t member_bound) {
  local_omission_report r;
  auto members = X.prefix(member_bound);
  for (const auto& phi : phis) {
    if (!T.is_consistent(phi)) {
      ++r.skipped;
      continue;
    }
    ++r.tested;
    if (!X.bounded()) {
      formula xi = X.at(static_cast<std::size_t>(phi.var_bound()) + 1);
      if (T.is_consistent_all({phi, neg(xi)})) {
        ++r.by_chain_step;
        continue;
      }
    }
    bool ok = false;
    for (const auto& xi : members)
      if (T.is_consistent_all({phi, neg(xi)})) {
        ok = true;
        break;
      }
    if (!ok) r.failures.push_back(phi);
  }
  return r;
}

/// The same over the first `sample_bound` formulas of the enumeration over
/// v0..v(var_bound-1).
inline local_omission_report locally_omits(const theory_oracle& T, const type_set& X, std::size_t sample_bound,
                                           var_index var_bound = 2) {
  formula_enumerator en(T.sig(), var_bound);
  return locally_omits(T, X, en.take(sample_bound), sample_bound);
}

enum class omission_semantics { automatic, ordinary, weak };

struct omission_verdict {
  bool omitted = true;
  unsigned horizon = 0;
  std::string semantics;
  std::vector<std::pair<var_index, unsigned>> realizer;  // (index, value), identity elsewhere

  std::string to_string() const {
    if (omitted) return "OmittedUpTo(" + std::to_string(horizon) + ")";
    std::string s = "RealizedBy((";
    for (std::size_t k = 0; k < realizer.size(); ++k) s += (k ? "," : "") + std::to_string(realizer[k].second);
    return s + "))";
  }
};

namespace detail {

// Backtracking over τ: [0, B) → [0, B) (identity beyond B). A formula is
// evaluated as soon as all its free variables are placed or beyond B, and
// a branch dies as soon as some formula is false on it.
template <class Holds>
std::optional<std::vector<transformation::pair_type>> find_realizer(const std::vector<formula>& fs, const std::vector<var_index>& coords,
                                            unsigned B, Holds&& holds) {
  std::vector<std::vector<std::size_t>> ready(coords.size() + 1);
  for (std::size_t k = 0; k < fs.size(); ++k) {
    std::size_t at = 0;
    for (auto v : fs[k].free_vars()) {
      auto it = std::find(coords.begin(), coords.end(), v);
      if (it != coords.end()) at = std::max(at, static_cast<std::size_t>(it - coords.begin()) + 1);
    }
    ready[at].push_back(k);
  }
  std::vector<transformation::pair_type> ps;
  std::optional<std::vector<transformation::pair_type>> found;
  std::function<bool(std::size_t)> go = [&](std::size_t depth) {
    transformation tau = transformation::from_pairs(ps);
    for (auto k : ready[depth])
      if (!holds(fs[k], tau)) return false;
    if (depth == coords.size()) {
      found = ps;
      return true;
    }
    for (unsigned u = 0; u < B; ++u) {
      ps.emplace_back(coords[depth], u);
      if (go(depth + 1)) return true;
      ps.pop_back();
    }
    return false;
  };
  if (B == 0 && !coords.empty()) return std::nullopt;
  go(0);
  return found;
}

}  // namespace detail

/// Ordinary semantics in a finite model: no assignment of the span into
/// the first min(B, |M|) elements satisfies every member.
inline omission_verdict verify_omission(const finite_model& M, const type_set& X, unsigned B) {
  if (!X.bounded()) throw error(errc::config_error, "ordinary omission needs a type with bounded span");
  unsigned base = std::min(B, M.size());
  auto span = X.span();
  std::vector<var_index> coords(span.begin(), span.end());
  auto fs = X.prefix(*X.size());
  auto holds = [&](const formula& f, const transformation& tau) {
    std::map<var_index, unsigned> s;
    for (auto v : f.free_vars()) s[v] = tau(v);
    return M.satisfies(f, s);
  };
  omission_verdict v;
  v.horizon = B;
  v.semantics = "ordinary";
  if (auto r = detail::find_realizer(fs, coords, base, holds)) {
    v.omitted = false;
    v.realizer = *r;
  }
  return v;
}

/// Over a frozen filter, reading truth through rep_F. Ordinary: τ ranges
/// over maps of the span into {0..B-1}. Weak: τ ranges over the
/// finite-support assignments moving only indices below B, into
/// {0..B-1}, and must fail some member of index ≤ B.
inline omission_verdict verify_omission(generic_filter& F, const type_set& X, unsigned B,
                                        omission_semantics sem = omission_semantics::automatic) {
  detail::require_frozen(F);
  if (sem == omission_semantics::automatic) sem = X.bounded() ? omission_semantics::ordinary : omission_semantics::weak;
  if (sem == omission_semantics::ordinary && !X.bounded())
    throw error(errc::config_error, "ordinary omission needs a type with bounded span");
  auto holds = [&](const formula& f, const transformation& tau) {
    return F.member(substitute(tau.restricted_to(henkin::free_vars(f)), f));
  };
  std::vector<formula> fs;
  std::vector<var_index> coords;
  if (sem == omission_semantics::ordinary) {
    fs = X.prefix(*X.size());
    auto span = X.span();
    coords.assign(span.begin(), span.end());
  } else {
    fs = X.prefix(static_cast<std::size_t>(B) + 1);
    for (var_index k = 0; k < B; ++k) coords.push_back(k);
  }
  omission_verdict v;
  v.horizon = B;
  v.semantics = sem == omission_semantics::ordinary ? "ordinary" : "weak";
  if (auto r = detail::find_realizer(fs, coords, B, holds)) {
    v.omitted = false;
    v.realizer = *r;
  }
  return v;
}

}  // namespace henkin

#endif
