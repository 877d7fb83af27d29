#ifndef HENKIN_FORMULA_ALGEBRA_HPP
#define HENKIN_FORMULA_ALGEBRA_HPP

#include <atomic>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "henkin/error.hpp"
#include "henkin/formula.hpp"
#include "henkin/oracle.hpp"
#include "henkin/parse.hpp"
#include "henkin/signature.hpp"
#include "henkin/substitute.hpp"

namespace henkin {

/// An element of CA(T) or QPA(T): a formula standing for its class modulo
/// T. The representative is constant-folded, and collapsed to `true` or
/// `false` when T decides it; it is otherwise the formula as built.
class formula_element {
public:
  const formula& rep() const { return f_; }
  std::uint64_t algebra_id() const { return id_; }
  std::string to_string() const { return henkin::to_string(f_); }

private:
  friend class formula_algebra;
  formula_element(formula f, std::uint64_t id) : f_(std::move(f)), id_(id) {}
  formula f_;
  std::uint64_t id_ = 0;
};

/// The Lindenbaum-Tarski algebra of the theory behind an oracle: CA(T)
/// with equality, QPA(T) without.
class formula_algebra {
public:
  formula_algebra(signature sig, oracle_ptr oracle, algebra_mode mode)
      : sig_(std::move(sig)), oracle_(std::move(oracle)), mode_(mode), id_(next_id()) {
    if (!oracle_) throw error(errc::config_error, "formula algebra needs an oracle");
    if (!(oracle_->sig() == sig_))
      throw error(errc::signature_mismatch, "oracle signature differs from " + sig_.name());
    if (oracle_->mode() != mode_ || sig_.mode() != mode_)
      throw error(errc::mode_mismatch, std::string("algebra mode ") + mode_name(mode_) + " does not match the oracle");
  }

  const signature& sig() const { return sig_; }
  const oracle_ptr& oracle() const { return oracle_; }
  algebra_mode mode() const { return mode_; }

  formula_element element(const formula& f) const {
    validate(f, sig_);
    formula g = simplify_constants(f);
    if (!g.is_true() && !g.is_false()) {
      if (!oracle_->is_consistent(g))
        g = formula::bottom();
      else if (!oracle_->is_consistent(neg(g)))
        g = formula::top();
    }
    return formula_element(std::move(g), id_);
  }
  formula_element element(const std::string& text) const { return element(parse_formula(text, sig_)); }

  formula_element zero() const { return formula_element(formula::bottom(), id_); }
  formula_element one() const { return formula_element(formula::top(), id_); }

  formula_element meet(const formula_element& a, const formula_element& b) const {
    check(a, b);
    return element(conj(a.rep(), b.rep()));
  }
  formula_element join(const formula_element& a, const formula_element& b) const {
    check(a, b);
    return element(disj(a.rep(), b.rep()));
  }
  formula_element complement(const formula_element& a) const {
    check(a);
    return element(neg(a.rep()));
  }
  formula_element cylindrify(var_index i, const formula_element& a) const {
    check(a);
    if (!a.rep().has_free(i)) return a;
    return element(exists(i, a.rep()));
  }
  formula_element diagonal(var_index i, var_index j) const {
    if (mode_ != algebra_mode::ca) throw error(errc::diagonal_in_qpa_mode, "diagonals exist only in CA mode");
    if (i == j) return one();
    return element(formula::equal(i, j));
  }
  formula_element substitute(const transformation& t, const formula_element& a) const {
    check(a);
    return formula_element(henkin::substitute(t, a.rep()), id_);
  }

  bool equal(const formula_element& a, const formula_element& b) const {
    check(a, b);
    return oracle_->entails_equal(a.rep(), b.rep());
  }
  bool leq(const formula_element& a, const formula_element& b) const {
    check(a, b);
    return oracle_->entails(a.rep(), b.rep());
  }
  bool is_zero(const formula_element& a) const {
    check(a);
    return a.rep().is_false() || !oracle_->is_consistent(a.rep());
  }
  bool is_one(const formula_element& a) const {
    check(a);
    return a.rep().is_true() || !oracle_->is_consistent(neg(a.rep()));
  }

  /// Δx = {i : c_i x ≠ x}. Only free variables can be in it.
  var_set dimension_set(const formula_element& a) const {
    check(a);
    var_set out;
    for (auto i : a.rep().free_vars())
      if (!oracle_->entails_equal(exists(i, a.rep()), a.rep())) out.insert(i);
    return out;
  }

  /// x ∈ Nr_n A.
  bool in_neat_reduct(const formula_element& a, var_index n) const {
    for (auto i : dimension_set(a))
      if (i >= n) return false;
    return true;
  }

  void check(const formula_element& a) const {
    if (a.algebra_id() != id_) throw error(errc::mixed_algebras, "element belongs to another algebra");
  }
  void check(const formula_element& a, const formula_element& b) const {
    check(a);
    check(b);
  }

private:
  static std::uint64_t next_id() {
    static std::atomic<std::uint64_t> counter{1};
    return counter++;
  }

  signature sig_;
  oracle_ptr oracle_;
  algebra_mode mode_;
  std::uint64_t id_;
};

}  // namespace henkin

#endif
