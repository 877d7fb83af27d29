#ifndef HENKIN_GENERIC_FILTER_HPP
#define HENKIN_GENERIC_FILTER_HPP

#include <algorithm>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "henkin/enumerate.hpp"
#include "henkin/error.hpp"
#include "henkin/formula.hpp"
#include "henkin/formula_algebra.hpp"
#include "henkin/oracle.hpp"
#include "henkin/substitute.hpp"
#include "henkin/type_set.hpp"

namespace henkin {

/// H: Henkin ultrafilters only. H′ also avoids every diagonal d_ij, i ≠ j.
enum class henkin_mode { h, h_prime };

inline const char* henkin_mode_name(henkin_mode m) { return m == henkin_mode::h ? "H" : "Hprime"; }

inline henkin_mode parse_henkin_mode(const std::string& s) {
  if (s == "H" || s == "h") return henkin_mode::h;
  if (s == "Hprime" || s == "H'" || s == "hprime") return henkin_mode::h_prime;
  throw error(errc::config_error, "unknown construction mode '" + s + "' (expected H or Hprime)");
}

/// One item of the construction schedule. Each names a dense open set of
/// the Stone space that the finished filter must meet.
struct requirement {
  enum class kind { decide, henkin, diagonal_free, omit_type };
  kind what = kind::decide;
  formula x;                     // decide, henkin
  var_index i = 0, j = 0;        // henkin (i), diagonal_free (i, j)
  std::string type_name;         // omit_type
  std::optional<transformation> tau;  // omit_type; empty for the uniform step

  static requirement decide(formula f) {
    requirement r;
    r.x = std::move(f);
    return r;
  }
  static requirement henkin(var_index i, formula f) {
    requirement r;
    r.what = kind::henkin;
    r.i = i;
    r.x = std::move(f);
    return r;
  }
  static requirement diagonal_free(var_index i, var_index j) {
    requirement r;
    r.what = kind::diagonal_free;
    r.i = i;
    r.j = j;
    return r;
  }
  static requirement omit(std::string type, std::optional<transformation> t) {
    requirement r;
    r.what = kind::omit_type;
    r.type_name = std::move(type);
    r.tau = std::move(t);
    return r;
  }

  std::string to_string() const {
    switch (what) {
      case kind::decide: return "Decide(" + henkin::to_string(x) + ")";
      case kind::henkin: return "Henkin(" + std::to_string(i) + ", " + henkin::to_string(x) + ")";
      case kind::diagonal_free: return "DiagonalFree(" + std::to_string(i) + ", " + std::to_string(j) + ")";
      case kind::omit_type:
        return "OmitType(" + type_name + ", " + (tau ? tau->to_string() : std::string("uniform")) + ")";
    }
    return "?";
  }
};

struct trace_step {
  std::size_t step = 0;
  std::string requirement;
  std::string chosen;
  std::optional<var_index> witness;
};

struct build_options {
  henkin_mode mode = henkin_mode::h_prime;
  std::size_t budget = 64;
  var_index horizon = 8;
  std::vector<type_set> omit;
};

/// A partially decided Henkin ultrafilter: the conjunction of `chain` is
/// its current least element. Membership of anything not yet decided is
/// settled on demand by extending the chain, x before ¬x.
///
/// Frozen filters may be shared between threads; the lazy extension is
/// serialized internally. Answers depend only on the chain, and a formula
/// once decided stays decided.
class generic_filter {
public:
  generic_filter(oracle_ptr oracle, henkin_mode mode, var_index horizon)
      : oracle_(std::move(oracle)), mode_(mode), horizon_(horizon), lock_(std::make_unique<std::mutex>()) {}

  generic_filter(generic_filter&&) = default;
  generic_filter& operator=(generic_filter&&) = default;

  const oracle_ptr& oracle() const { return oracle_; }
  henkin_mode mode() const { return mode_; }
  var_index horizon() const { return horizon_; }
  bool frozen() const { return frozen_; }
  void freeze() { frozen_ = true; }

  bool member(const formula& x) {
    std::lock_guard<std::mutex> g(*lock_);
    return decide(x);
  }
  bool member(const formula_element& x) { return member(x.rep()); }

  /// The recorded Henkin witness j for a decided existential ∃v_i b ∈ F.
  std::optional<var_index> witness(const formula& e) const {
    std::lock_guard<std::mutex> g(*lock_);
    auto it = witness_.find(e);
    if (it == witness_.end()) return std::nullopt;
    return it->second;
  }

  /// Copies, so that callers never see the chain mid-extension.
  std::vector<formula> chain() const {
    std::lock_guard<std::mutex> g(*lock_);
    return chain_;
  }
  std::vector<std::pair<formula, bool>> decisions() const {
    std::lock_guard<std::mutex> g(*lock_);
    return decisions_;
  }
  const std::vector<trace_step>& trace() const { return trace_; }
  std::size_t steps() const { return step_; }

  // Construction interface, used by henkin_build.

  /// Starts a traced step for requirement r; decisions made until the next
  /// call are attributed to it.
  void begin_step(const requirement& r) {
    ++step_;
    current_ = r.to_string();
  }

  /// Adds x to the chain only if that keeps it consistent. Returns whether
  /// x is now in F.
  bool try_add(const formula& x) {
    std::lock_guard<std::mutex> g(*lock_);
    return decide(x);
  }

  /// Traces a step whose outcome was already decided.
  void note(const formula& chosen) { record(chosen); }

  bool consistent_with(const formula& x) const {
    std::lock_guard<std::mutex> g(*lock_);
    auto with = chain_;
    with.push_back(x);
    return oracle_->is_consistent_all(with);
  }

private:
  static formula strip_double_negation(formula f) {
    while (f.kind() == formula_kind::negation && f.child().kind() == formula_kind::negation) f = f.child().child();
    return f;
  }

  void record(const formula& chosen, std::optional<var_index> w = std::nullopt) {
    if (frozen_) return;
    trace_.push_back({step_, current_, to_string(chosen), w});
  }

  bool decide(const formula& x0) {
    formula x = simplify_constants(x0);
    if (x.is_true()) return true;
    if (x.is_false()) return false;
    if (auto it = memo_.find(x); it != memo_.end()) return it->second;
    if (x.kind() == formula_kind::negation)
      if (auto it = memo_.find(x.child()); it != memo_.end()) return !it->second;

    auto with = chain_;
    with.push_back(x);
    bool in;
    formula chosen = x;
    // Only genuine choices go on the chain: when one side is inconsistent
    // the other is already implied by it.
    if (!oracle_->is_consistent_all(with)) {
      in = false;
      chosen = neg(x);
    } else {
      in = true;
      with.back() = neg(x);
      if (oracle_->is_consistent_all(with)) push(x);
    }
    memo_.emplace(x, in);
    decisions_.emplace_back(x, in);
    record(chosen);
    formula pos = strip_double_negation(chosen);
    if (pos.kind() == formula_kind::exists) add_witness(pos);
    return in;
  }

  void push(const formula& f) {
    chain_.push_back(f);
    used_.insert(f.free_vars().begin(), f.free_vars().end());
  }

  // The join c_i x = Σ_j s^i_j x: put s^i_j x in F for a j not used so far.
  void add_witness(const formula& e) {
    if (witness_.count(e)) return;
    var_index i = e.bound_var();
    var_index j = 0;
    while (used_.count(j) || e.has_free(j)) ++j;
    formula body = substitute(transformation::replacement(i, j), e.child());
    witness_.emplace(e, j);
    push(body);
    memo_.emplace(body, true);
    decisions_.emplace_back(body, true);
    if (!frozen_) trace_.push_back({step_, requirement::henkin(i, e.child()).to_string(), to_string(body), j});
    formula pos = strip_double_negation(body);
    if (pos.kind() == formula_kind::exists) add_witness(pos);
  }

  oracle_ptr oracle_;
  henkin_mode mode_;
  var_index horizon_;
  std::vector<formula> chain_;
  var_set used_;
  std::unordered_map<formula, bool, formula_hash> memo_;
  std::vector<std::pair<formula, bool>> decisions_;
  std::unordered_map<formula, var_index, formula_hash> witness_;
  std::vector<trace_step> trace_;
  std::size_t step_ = 0;
  std::string current_;
  bool frozen_ = false;
  std::unique_ptr<std::mutex> lock_;
};

namespace detail {

// Maps from the given indices into [0,h), lexicographic, identity first
// when every index is below h.
inline std::vector<transformation> restricted_maps(const std::vector<var_index>& dom, var_index h) {
  std::vector<transformation> out;
  if (h == 0) return {transformation{}};
  std::vector<var_index> img(dom.size(), 0);
  for (;;) {
    std::vector<transformation::pair_type> ps;
    for (std::size_t k = 0; k < dom.size(); ++k) ps.emplace_back(dom[k], img[k]);
    out.push_back(transformation::from_pairs(ps));
    std::size_t k = dom.size();
    while (k > 0 && ++img[k - 1] == h) img[--k] = 0;
    if (k == 0) break;
  }
  auto id = std::find(out.begin(), out.end(), transformation{});
  if (id != out.end()) std::rotate(out.begin(), id, id + 1);
  return out;
}

// Pending omission work for one type.
struct omission_plan {
  const type_set* type = nullptr;
  std::vector<std::optional<transformation>> taus;  // nullopt: the uniform step
};

inline omission_plan plan_omission(const type_set& X, var_index h) {
  omission_plan p{&X, {}};
  if (!X.bounded()) {
    p.taus.push_back(std::nullopt);
    return p;
  }
  // s_τ φ only depends on τ restricted to the span, and τ moves only
  // indices below the horizon
  std::vector<var_index> dom;
  for (auto v : X.span())
    if (v < h) dom.push_back(v);
  for (auto& t : restricted_maps(dom, h)) p.taus.emplace_back(std::move(t));
  return p;
}

inline void process_omission(generic_filter& F, const type_set& X, const std::optional<transformation>& tau) {
  F.begin_step(requirement::omit(X.name(), tau));
  var_index h = F.horizon();
  if (!tau) {
    // one member untouched by every τ below the horizon settles all of them
    for (std::size_t n = 0; n < static_cast<std::size_t>(h) + 4; ++n) {
      formula phi = X.at(n);
      bool outside = true;
      for (auto v : phi.free_vars())
        if (v < h) outside = false;
      if (outside && F.consistent_with(neg(phi)) && F.try_add(neg(phi))) return;
    }
    throw error(errc::omitting_blocked,
                "type " + X.name() + ": no member beyond horizon " + std::to_string(h) + " can be refuted");
  }
  for (std::size_t n = 0; n < *X.size(); ++n) {
    formula phi = substitute(*tau, X.at(n));
    if (F.consistent_with(neg(phi)) && F.try_add(neg(phi))) return;
  }
  throw error(errc::omitting_blocked, "type " + X.name() + " at tau " + tau->to_string() +
                                          ": every member is forced by the current chain");
}

}  // namespace detail

/// One OmitType(X, τ) per τ with support and image inside {0..horizon-1}:
/// horizon^horizon of them, identity first.
inline std::vector<requirement> omission_requirements(const type_set& X, var_index horizon,
                                                      std::size_t cap = 1u << 20) {
  std::size_t count = 1;
  for (var_index k = 0; k < horizon; ++k) {
    count *= horizon;
    if (count > cap) throw error(errc::capacity_exceeded, "too many omitting requirements");
  }
  std::vector<var_index> dom;
  for (var_index k = 0; k < horizon; ++k) dom.push_back(k);
  std::vector<requirement> out;
  for (auto& t : detail::restricted_maps(dom, horizon)) out.push_back(requirement::omit(X.name(), std::move(t)));
  return out;
}

/// Builds a Henkin ultrafilter containing a, in this order: the seed, the
/// diagonal requirements (H′ only), the omitting requirements round-robin
/// across types, then Decide for the first `budget` enumerated formulas
/// over v0..v(horizon-1). Henkin witnesses are added whenever an
/// existential is decided in. The result is frozen.
inline generic_filter henkin_build(const formula_algebra& A, const formula_element& a, const build_options& opt) {
  A.check(a);
  if (opt.mode == henkin_mode::h_prime && A.mode() != algebra_mode::ca)
    throw error(errc::mode_mismatch, "mode Hprime needs an algebra with diagonals (CA mode)");
  generic_filter F(A.oracle(), opt.mode, opt.horizon);

  F.begin_step(requirement::decide(a.rep()));
  if (a.rep().is_false() || !F.consistent_with(a.rep()))
    throw error(errc::zero_element, "seed " + a.to_string() + " is the zero element");
  std::size_t before = F.trace().size();
  F.try_add(a.rep());
  if (F.trace().size() == before) F.note(a.rep());

  if (opt.mode == henkin_mode::h_prime)
    for (var_index j = 1; j < opt.horizon; ++j)
      for (var_index i = 0; i < j; ++i) {
        F.begin_step(requirement::diagonal_free(i, j));
        formula nd = neg(formula::equal(i, j));
        if (!F.consistent_with(nd))
          throw error(errc::diagonal_requirement_unsatisfiable,
                      "-d_" + std::to_string(i) + std::to_string(j) + " is inconsistent with the chain at step " +
                          std::to_string(F.steps()) + "; the theory bounds the size of its models");
        F.try_add(nd);
      }

  std::vector<detail::omission_plan> plans;
  for (const auto& X : opt.omit) plans.push_back(detail::plan_omission(X, opt.horizon));
  for (std::size_t round = 0;; ++round) {
    bool any = false;
    for (const auto& p : plans)
      if (round < p.taus.size()) {
        any = true;
        detail::process_omission(F, *p.type, p.taus[round]);
      }
    if (!any) break;
  }

  formula_enumerator en(A.sig(), opt.horizon);
  for (std::size_t n = 0; n < opt.budget; ++n) {
    const formula& x = en.at(n);
    F.begin_step(requirement::decide(x));
    std::size_t before = F.trace().size();
    bool in = F.member(x);
    if (F.trace().size() == before) F.note(in ? x : neg(x));
  }
  F.freeze();
  return F;
}

}  // namespace henkin

#endif
