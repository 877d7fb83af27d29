#ifndef HENKIN_FINITE_ALGEBRA_HPP
#define HENKIN_FINITE_ALGEBRA_HPP

#include <algorithm>
#include <cstddef>
#include <deque>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "henkin/error.hpp"
#include "henkin/formula_algebra.hpp"
#include "henkin/set_algebra.hpp"
#include "henkin/transformation.hpp"

namespace henkin {

/// Ultrafilter of a finite algebra: the principal filter of one atom.
/// `atom` indexes A.elements().
struct finite_ultrafilter {
  std::size_t atom = 0;
  friend bool operator==(const finite_ultrafilter&, const finite_ultrafilter&) = default;
  friend bool operator<(const finite_ultrafilter& a, const finite_ultrafilter& b) { return a.atom < b.atom; }
};

/// Indices of the atoms of A, in A's element order.
inline std::vector<std::size_t> atoms(const set_algebra& A) {
  std::vector<std::size_t> out;
  const auto& el = A.elements();
  for (std::size_t k = 0; k < el.size(); ++k) {
    if (el[k].is_zero()) continue;
    bool atom = true;
    for (std::size_t j = 0; j < el.size() && atom; ++j) {
      if (j == k || el[j].is_zero()) continue;
      if (leq(el[j], el[k]) && el[j] != el[k]) atom = false;
    }
    if (atom) out.push_back(k);
  }
  return out;
}

inline std::vector<finite_ultrafilter> enumerate_ultrafilters(const set_algebra& A) {
  std::vector<finite_ultrafilter> out;
  for (auto k : atoms(A)) out.push_back({k});
  return out;
}

/// Lindenbaum-Tarski algebras have infinitely many dimensions, so the
/// finite enumeration does not apply to them.
inline std::vector<finite_ultrafilter> enumerate_ultrafilters(const formula_algebra& A) {
  throw error(errc::infinite_algebra, "the formula algebra of theory over " + A.sig().name() +
                                          " is infinite; enumerate a finite set algebra instead");
}

inline bool member(const set_algebra& A, const finite_ultrafilter& F, const set_element& x) {
  return leq(A.element(F.atom), x);
}

/// s⁺_σ F = {s_σ x : x ∈ F}. For a principal F at atom a this is the
/// principal filter at s_σ a, which must again lie in A.
inline finite_ultrafilter act(const set_algebra& A, const transformation& sigma, const finite_ultrafilter& F) {
  if (!sigma.is_bijective()) throw error(errc::non_bijective, "act needs a bijection, got " + sigma.to_string());
  set_element image = substitute(sigma, A.element(F.atom));
  if (!A.contains(image))
    throw error(errc::config_error, "algebra is not closed under s_" + sigma.to_string());
  return {A.index_of(image)};
}

/// Bijective generators of a substitution group.
class substitution_action {
public:
  substitution_action() = default;
  explicit substitution_action(std::vector<transformation> gens) : gens_(std::move(gens)) {
    for (const auto& g : gens_)
      if (!g.is_bijective()) throw error(errc::non_bijective, "generator " + g.to_string() + " is not a bijection");
  }
  const std::vector<transformation>& generators() const { return gens_; }

private:
  std::vector<transformation> gens_;
};

/// Every element of the group generated by `gens`, identity first, then
/// in breadth-first order of products.
inline std::vector<transformation> group_closure(const std::vector<transformation>& gens, std::size_t cap = 1u << 20) {
  for (const auto& g : gens)
    if (!g.is_bijective()) throw error(errc::non_bijective, "generator " + g.to_string() + " is not a bijection");
  std::vector<transformation> out{transformation{}};
  std::set<transformation> seen{transformation{}};
  for (std::size_t k = 0; k < out.size(); ++k)
    for (const auto& g : gens) {
      auto t = compose(g, out[k]);
      if (seen.insert(t).second) {
        out.push_back(t);
        if (out.size() > cap) throw error(errc::capacity_exceeded, "substitution group larger than the cap");
      }
    }
  return out;
}

/// Orbits of the listed ultrafilters under the group generated by the
/// action's generators. Each orbit is a sorted list of positions in
/// `ultras`; orbits are ordered by their first position.
inline std::vector<std::vector<std::size_t>> orbit_decomposition(const set_algebra& A,
                                                                 const std::vector<finite_ultrafilter>& ultras,
                                                                 const substitution_action& action) {
  std::vector<std::size_t> parent(ultras.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::size_t> pos_of_atom(A.size(), ultras.size());
  for (std::size_t k = 0; k < ultras.size(); ++k) pos_of_atom[ultras[k].atom] = k;
  for (std::size_t k = 0; k < ultras.size(); ++k)
    for (const auto& g : action.generators()) {
      auto img = act(A, g, ultras[k]);
      std::size_t p = pos_of_atom[img.atom];
      if (p == ultras.size()) throw error(errc::config_error, "ultrafilter list is not closed under the action");
      auto a = find(k), b = find(p);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<std::vector<std::size_t>> orbits;
  std::vector<std::size_t> slot(ultras.size(), ultras.size());
  for (std::size_t k = 0; k < ultras.size(); ++k) {
    auto r = find(k);
    if (slot[r] == ultras.size()) {
      slot[r] = orbits.size();
      orbits.emplace_back();
    }
    orbits[slot[r]].push_back(k);
  }
  return orbits;
}

/// {F : act(ρ,F) ∈ N_a for some ρ in the group}, as sorted atom indices.
inline std::vector<std::size_t> saturation_by_action(const set_algebra& A, const std::vector<transformation>& group,
                                                     const set_element& a) {
  std::vector<std::size_t> out;
  for (const auto& F : enumerate_ultrafilters(A))
    for (const auto& rho : group)
      if (member(A, act(A, rho, F), a)) {
        out.push_back(F.atom);
        break;
      }
  return out;
}

/// ⋃_ρ N_{s_ρ a}, as sorted atom indices.
inline std::vector<std::size_t> union_of_translates(const set_algebra& A, const std::vector<transformation>& group,
                                                    const set_element& a) {
  std::vector<std::size_t> out;
  for (const auto& F : enumerate_ultrafilters(A))
    for (const auto& rho : group)
      if (member(A, F, substitute(rho, a))) {
        out.push_back(F.atom);
        break;
      }
  return out;
}

}  // namespace henkin

#endif
