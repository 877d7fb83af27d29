#ifndef HENKIN_REPR_HPP
#define HENKIN_REPR_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "henkin/denotation.hpp"
#include "henkin/error.hpp"
#include "henkin/finite_model.hpp"
#include "henkin/formula.hpp"
#include "henkin/generic_filter.hpp"
#include "henkin/set_algebra.hpp"
#include "henkin/substitute.hpp"

namespace henkin {

namespace detail {

inline void require_frozen(const generic_filter& F) {
  if (!F.frozen()) throw error(errc::unfrozen_filter, "the filter is still under construction");
}

// Calls fn(τ) for every τ sending each index of dom into [0,B), in
// lexicographic order of the images.
template <class Fn>
void for_each_map(const std::vector<var_index>& dom, unsigned B, Fn&& fn) {
  if (B == 0 && !dom.empty()) return;
  std::vector<var_index> img(dom.size(), 0);
  for (;;) {
    std::vector<transformation::pair_type> ps;
    for (std::size_t k = 0; k < dom.size(); ++k) ps.emplace_back(dom[k], img[k]);
    fn(transformation::from_pairs(ps));
    std::size_t k = dom.size();
    while (k > 0 && ++img[k - 1] == B) img[--k] = 0;
    if (k == 0) return;
  }
}

}  // namespace detail

/// rep_F(x) = {τ : s_τ x ∈ F}. Membership looks only at τ on the free
/// variables of x, which is how a finite-support τ' extending τ is read.
class rep_element {
public:
  rep_element(generic_filter& F, formula x, var_set dims) : F_(&F), x_(std::move(x)), dims_(std::move(dims)) {}

  const formula& element() const { return x_; }
  /// Δx as decided by the theory oracle.
  const var_set& dims() const { return dims_; }

  bool member(const transformation& tau) const {
    return F_->member(substitute(tau.restricted_to(henkin::free_vars(x_)), x_));
  }

private:
  generic_filter* F_;
  formula x_;
  var_set dims_;
};

/// Δx = {i : T ⊬ ∃v_i x ↔ x}.
inline var_set oracle_dimension_set(const theory_oracle& T, const formula& x) {
  var_set out;
  for (auto i : x.free_vars())
    if (!T.entails_equal(exists(i, x), x)) out.insert(i);
  return out;
}

inline rep_element rep(generic_filter& F, const formula& x) {
  detail::require_frozen(F);
  return rep_element(F, x, oracle_dimension_set(*F.oracle(), x));
}
inline rep_element rep(generic_filter& F, const formula_element& x) { return rep(F, x.rep()); }

/// The structure on {0..B-1} read off a filter: R(t) holds iff the atom
/// R(v_t0, ..., v_tk) is in F.
struct extracted_model {
  signature sig;
  unsigned base_size = 0;  // B, or the number of classes for a quotient
  unsigned horizon = 0;    // the filter's construction horizon
  bool quotient = false;   // built by extract_model_quotient
  std::vector<unsigned> representative;  // quotient only: class k is represented by index representative[k]
  std::map<std::string, std::vector<tuple>> relations;

  /// The same structure as a finite model (needs base_size > 0).
  finite_model as_finite_model(const std::string& name = "extracted") const {
    finite_model m(name, sig, base_size);
    for (const auto& [r, ts] : relations)
      for (const auto& t : ts) m.add(r, t);
    return m;
  }
};

namespace detail {

inline formula atom_on(const relation_symbol& r, const tuple& t) {
  return formula::atom(r.name, std::vector<var_index>(t.begin(), t.end()));
}

inline void all_tuples(unsigned arity, unsigned B, const std::function<void(const tuple&)>& fn) {
  if (B == 0) return;
  tuple t(arity, 0);
  for (;;) {
    fn(t);
    int k = static_cast<int>(arity) - 1;
    while (k >= 0 && ++t[static_cast<std::size_t>(k)] == B) t[static_cast<std::size_t>(k--)] = 0;
    if (k < 0) return;
  }
}

}  // namespace detail

/// Base {0..B-1} of ω. In H′ mode every pair of base points is also
/// checked to be distinct in F.
inline extracted_model extract_model(generic_filter& F, const signature& sig, unsigned B) {
  detail::require_frozen(F);
  if (B > F.horizon())
    throw error(errc::horizon_exceeded,
                "horizon " + std::to_string(B) + " exceeds the construction horizon " + std::to_string(F.horizon()));
  extracted_model M{sig, B, F.horizon(), false, {}, {}};
  if (F.mode() == henkin_mode::h_prime)
    for (var_index j = 1; j < B; ++j)
      for (var_index i = 0; i < j; ++i)
        if (F.member(formula::equal(i, j)))
          throw error(errc::internal_error, "H' filter identifies v" + std::to_string(i) + " and v" + std::to_string(j));
  for (const auto& r : sig.relations()) {
    auto& out = M.relations[r.name];
    detail::all_tuples(r.arity, B, [&](const tuple& t) {
      if (F.member(detail::atom_on(r, t))) out.push_back(t);
    });
  }
  return M;
}

/// Extension beyond the construction proper: for theories whose models
/// are finite, identify base points i ~ j when v_i = v_j is in F and read
/// the relations on the classes (least index representing each class).
inline extracted_model extract_model_quotient(generic_filter& F, const signature& sig, unsigned B) {
  detail::require_frozen(F);
  if (!sig.equality()) throw error(errc::diagonal_in_qpa_mode, "the quotient needs equality in the signature");
  if (B > F.horizon())
    throw error(errc::horizon_exceeded,
                "horizon " + std::to_string(B) + " exceeds the construction horizon " + std::to_string(F.horizon()));
  std::vector<unsigned> cls(B);
  std::vector<unsigned> reps;
  for (unsigned i = 0; i < B; ++i) {
    cls[i] = static_cast<unsigned>(reps.size());
    for (unsigned k = 0; k < reps.size(); ++k)
      if (F.member(formula::equal(reps[k], i))) {
        cls[i] = k;
        break;
      }
    if (cls[i] == reps.size()) reps.push_back(i);
  }
  extracted_model M{sig, static_cast<unsigned>(reps.size()), F.horizon(), true, reps, {}};
  for (const auto& r : sig.relations()) {
    auto& out = M.relations[r.name];
    detail::all_tuples(r.arity, M.base_size, [&](const tuple& t) {
      tuple orig;
      for (auto c : t) orig.push_back(reps[c]);
      if (F.member(detail::atom_on(r, orig))) out.push_back(t);
    });
  }
  return M;
}

struct homomorphism_report {
  std::size_t checks = 0;
  std::size_t violations = 0;
  std::vector<std::string> notes;  // the first few violations

  // `what` builds the message, only for violations
  template <class What>
  void note(bool ok, What&& what) {
    ++checks;
    if (ok) return;
    ++violations;
    if (notes.size() < 20) notes.push_back(what());
  }
};

/// Compares rep_F of each operation's result with the set operation on the
/// reps of its arguments, for every assignment of the relevant
/// coordinates into {0..B-1}: meets of all pairs, complements,
/// cylindrifications (⊇ the projection within B, and equality through the
/// recorded Henkin witness), diagonals (CA only) and substitutions by the
/// replacements and transpositions of indices below `sub_bound`. Onto-ness
/// is only checked as: every atom of the sample has the rep table of its
/// relation in the extracted model.
inline homomorphism_report check_homomorphism(generic_filter& F, const std::vector<formula>& sample, unsigned B,
                                              var_index sub_bound = 3) {
  detail::require_frozen(F);
  homomorphism_report rpt;
  auto in = [&](const formula& x, const transformation& tau) {
    return F.member(substitute(tau.restricted_to(henkin::free_vars(x)), x));
  };
  auto vars_of = [](const formula& a, const formula& b) {
    var_set s = henkin::free_vars(a);
    s.insert(b.free_vars().begin(), b.free_vars().end());
    return std::vector<var_index>(s.begin(), s.end());
  };
  for (const auto& x : sample)
    for (const auto& y : sample) {
      formula xy = conj(x, y);
      detail::for_each_map(vars_of(x, y), B, [&](const transformation& tau) {
        rpt.note(in(xy, tau) == (in(x, tau) && in(y, tau)), [&] { return "meet " + to_string(xy) + " at " + tau.to_string(); });
      });
    }
  bool ca = F.oracle()->mode() == algebra_mode::ca;
  for (const auto& x : sample) {
    auto fx = x.free_vars();
    detail::for_each_map(fx, B, [&](const transformation& tau) {
      rpt.note(in(neg(x), tau) == !in(x, tau), [&] { return "complement " + to_string(x) + " at " + tau.to_string(); });
    });
    var_set cyl_idx(fx.begin(), fx.end());
    var_index extra = 0;
    while (cyl_idx.count(extra)) ++extra;
    cyl_idx.insert(extra);
    for (auto i : cyl_idx) {
      formula cx = exists(i, x);
      detail::for_each_map(cx.free_vars(), B, [&](const transformation& tau) {
        bool projected = false;
        for (unsigned u = 0; u < B && !projected; ++u) projected = in(x, tau.with(i, u));
        bool c = in(cx, tau);
        rpt.note(!projected || c, [&] { return "c_" + std::to_string(i) + " misses the projection of " + to_string(x) + " at " +
                                      tau.to_string(); });
        if (!c) return;
        formula e = simplify_constants(substitute(tau.restricted_to(henkin::free_vars(cx)), cx));
        if (e.kind() != formula_kind::exists) return;
        auto w = F.witness(e);
        rpt.note(w.has_value(), [&] { return "no Henkin witness recorded for " + to_string(e); });
        if (w) rpt.note(in(x, tau.with(i, *w)), [&] { return "Henkin witness v" + std::to_string(*w) + " fails for " + to_string(e); });
      });
    }
  }
  if (ca)
    for (var_index i = 0; i < sub_bound; ++i)
      for (var_index j = 0; j < sub_bound; ++j)
        detail::for_each_map(formula::equal(i, j).free_vars(), B, [&](const transformation& tau) {
          rpt.note(in(formula::equal(i, j), tau) == (tau(i) == tau(j)), [&] { return "d_" + std::to_string(i) + std::to_string(j) + " at " + tau.to_string(); });
        });
  std::vector<transformation> subs;
  for (var_index i = 0; i < sub_bound; ++i)
    for (var_index j = 0; j < sub_bound; ++j)
      if (i != j) {
        subs.push_back(transformation::replacement(i, j));
        if (i < j) subs.push_back(transformation::transposition(i, j));
      }
  for (const auto& x : sample)
    for (const auto& s : subs) {
      formula sx = substitute(s, x);
      var_set dom = henkin::free_vars(sx);
      for (auto v : x.free_vars()) dom.insert(s(v));
      detail::for_each_map(std::vector<var_index>(dom.begin(), dom.end()), B, [&](const transformation& tau) {
        rpt.note(in(sx, tau) == in(x, compose(tau, s)), [&] { return "s_" + s.to_string() + " " + to_string(x) + " at " + tau.to_string(); });
      });
    }
  // onto, as far as it can be seen: each atom's rep table is the
  // relation of the extracted model
  unsigned base = std::min<unsigned>(B, F.horizon());
  auto M = extract_model(F, F.oracle()->sig(), base);
  auto fm = base > 0 ? std::optional<finite_model>(M.as_finite_model()) : std::nullopt;
  for (const auto& x : sample) {
    if (x.kind() != formula_kind::atom || !fm) continue;
    detail::for_each_map(x.free_vars(), base, [&](const transformation& tau) {
      std::map<var_index, unsigned> s;
      for (auto v : x.free_vars()) s[v] = tau(v);
      rpt.note(in(x, tau) == fm->satisfies(x, s), [&] { return "atom " + to_string(x) + " at " + tau.to_string(); });
    });
  }
  return rpt;
}

/// Both sides of the isomorphism correspondence for ρ: M0 → M1.
/// left: ρ preserves and reflects every relation.
/// right: with F_k the ultrafilter of M_k's full set algebra at the
/// assignment v_i ↦ i, every atom a over the base satisfies
/// a ∈ F_0 iff s_ρ a ∈ F_1.
inline std::pair<bool, bool> iso_correspondence_check(const finite_model& M0, const finite_model& M1,
                                                      const std::vector<unsigned>& rho) {
  if (M0.size() != M1.size() || rho.size() != M0.size())
    throw error(errc::size_mismatch, "iso_correspondence_check needs equal sizes");
  if (!(M0.sig() == M1.sig())) throw error(errc::signature_mismatch, "models over different signatures");
  std::vector<char> hit(rho.size(), 0);
  for (auto r : rho) {
    if (r >= rho.size() || hit[r]) throw error(errc::non_bijective, "rho is not a bijection of the base");
    hit[r] = 1;
  }
  unsigned n = M0.size();
  bool left = true;
  for (const auto& r : M0.sig().relations()) {
    detail::all_tuples(r.arity, n, [&](const tuple& t) {
      if (!left) return;
      tuple rt;
      for (auto v : t) rt.push_back(rho[v]);
      if (M0.holds(r.name, t) != M1.holds(r.name, rt)) left = false;
    });
    if (!left) break;
  }
  std::vector<transformation::pair_type> ps;
  for (unsigned i = 0; i < n; ++i) ps.emplace_back(i, rho[i]);
  transformation t_rho = transformation::from_pairs(ps);
  auto identity = [](var_index d) { return d; };
  bool right = true;
  for (const auto& r : M0.sig().relations()) {
    detail::all_tuples(r.arity, n, [&](const tuple& t) {
      if (!right) return;
      formula a = detail::atom_on(r, t);
      bool in0 = denotation(M0, a).contains(identity);
      bool in1 = substitute(t_rho, denotation(M1, a)).contains(identity);
      if (in0 != in1) right = false;
    });
    if (!right) break;
  }
  return {left, right};
}

}  // namespace henkin

#endif
