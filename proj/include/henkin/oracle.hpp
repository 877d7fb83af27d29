#ifndef HENKIN_ORACLE_HPP
#define HENKIN_ORACLE_HPP

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "henkin/error.hpp"
#include "henkin/finite_model.hpp"
#include "henkin/formula.hpp"
#include "henkin/parse.hpp"
#include "henkin/signature.hpp"

namespace henkin {

/// Decides consistency with, and provable equivalence modulo, a theory T.
/// This is everything a Lindenbaum-Tarski algebra needs from T.
///
/// Implementations must be reentrant: concurrent queries behave like
/// some serial order of the same queries.
class theory_oracle {
public:
  virtual ~theory_oracle() = default;

  virtual const signature& sig() const = 0;

  /// "finite-models", "dlo-qe" or "external".
  virtual std::string kind() const = 0;

  /// Whether the presented theory is complete.
  virtual bool complete() const = 0;

  /// Is the conjunction of fs consistent with T?
  virtual bool is_consistent_all(const std::vector<formula>& fs) const = 0;

  bool is_consistent(const formula& f) const { return is_consistent_all({f}); }

  /// T ⊢ f ↔ g (universally closed).
  virtual bool entails_equal(const formula& f, const formula& g) const {
    if (f == g) {
      validate(f, sig());
      return true;
    }
    return !is_consistent(exclusive_or(f, g));
  }

  /// T ⊢ f → g.
  bool entails(const formula& f, const formula& g) const { return !is_consistent_all({f, neg(g)}); }

  algebra_mode mode() const { return sig().mode(); }
};

using oracle_ptr = std::shared_ptr<const theory_oracle>;

/// Presents T as the common theory of a nonempty list of finite models.
/// Complete exactly when the list has one model.
class finite_model_oracle final : public theory_oracle {
public:
  finite_model_oracle(signature sig, std::vector<finite_model> models)
      : sig_(std::move(sig)), models_(std::move(models)) {
    if (models_.empty()) throw error(errc::config_error, "finite-model oracle needs at least one model");
    for (const auto& m : models_)
      if (!(m.sig() == sig_))
        throw error(errc::signature_mismatch, "model " + m.name() + " is not over signature " + sig_.name());
  }

  const signature& sig() const override { return sig_; }
  std::string kind() const override { return "finite-models"; }
  bool complete() const override { return models_.size() == 1; }
  const std::vector<finite_model>& models() const { return models_; }

  bool is_consistent_all(const std::vector<formula>& fs) const override {
    for (const auto& f : fs) validate(f, sig_);
    for (const auto& m : models_)
      if (m.find_assignment(fs)) return true;
    return false;
  }

private:
  signature sig_;
  std::vector<finite_model> models_;
};

}  // namespace henkin

#endif
