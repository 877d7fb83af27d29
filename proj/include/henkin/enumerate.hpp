#ifndef HENKIN_ENUMERATE_HPP
#define HENKIN_ENUMERATE_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "henkin/error.hpp"
#include "henkin/formula.hpp"
#include "henkin/signature.hpp"

namespace henkin {

/// Enumerates all formulas over `sig` whose variables are below
/// `var_bound`, ordered by depth and then by canonical text.
///
/// Each depth level is materialized when first reached. A level whose
/// size would exceed `level_cap` raises capacity_exceeded instead.
class formula_enumerator {
public:
  formula_enumerator(signature sig, var_index var_bound, std::size_t level_cap = 2'000'000)
      : sig_(std::move(sig)), vars_(var_bound), cap_(level_cap) {}

  /// The n-th formula of the enumeration.
  const formula& at(std::size_t n) {
    while (n >= flat_.size()) grow();
    return flat_[n].first;
  }

  /// First `count` formulas.
  std::vector<formula> take(std::size_t count) {
    std::vector<formula> out;
    out.reserve(count);
    for (std::size_t n = 0; n < count; ++n) out.push_back(at(n));
    return out;
  }

  /// Every formula of depth ≤ d.
  std::vector<formula> up_to_depth(unsigned d) {
    while (levels_.size() <= d) grow();
    std::vector<formula> out;
    for (unsigned k = 0; k <= d; ++k)
      for (const auto& f : levels_[k]) out.push_back(f.first);
    return out;
  }

  std::size_t level_size(unsigned d) {
    while (levels_.size() <= d) grow();
    return levels_[d].size();
  }

  const signature& sig() const { return sig_; }
  var_index var_bound() const { return vars_; }

private:
  using entry = std::pair<formula, std::string>;

  void push(std::vector<entry>& level, formula f) {
    if (level.size() >= cap_)
      throw error(errc::capacity_exceeded, "formula enumeration level " + std::to_string(levels_.size()) +
                                               " exceeds " + std::to_string(cap_) + " formulas");
    std::string text = to_string(f);
    level.emplace_back(std::move(f), std::move(text));
  }

  void atoms(std::vector<entry>& level) {
    push(level, formula::top());
    push(level, formula::bottom());
    for (const auto& r : sig_.relations()) {
      std::vector<var_index> args(r.arity, 0);
      if (vars_ == 0) continue;
      for (;;) {
        push(level, formula::atom(r.name, args));
        std::size_t k = 0;
        while (k < args.size() && ++args[k] == vars_) args[k++] = 0;
        if (k == args.size()) break;
      }
    }
    if (sig_.equality())
      for (var_index i = 0; i < vars_; ++i)
        for (var_index j = 0; j < vars_; ++j) push(level, formula::equal(i, j));
  }

  void grow() {
    std::vector<entry> level;
    unsigned d = static_cast<unsigned>(levels_.size());
    if (d == 0) {
      atoms(level);
    } else {
      const auto& prev = levels_[d - 1];
      for (const auto& f : prev) push(level, neg(f.first));
      for (var_index v = 0; v < vars_; ++v)
        for (const auto& f : prev) push(level, exists(v, f.first));
      // binary: at least one side of depth exactly d-1
      for (unsigned da = 0; da < d; ++da)
        for (unsigned db = 0; db < d; ++db) {
          if (da != d - 1 && db != d - 1) continue;
          for (const auto& a : levels_[da])
            for (const auto& b : levels_[db]) {
              push(level, conj(a.first, b.first));
              push(level, disj(a.first, b.first));
            }
        }
    }
    std::sort(level.begin(), level.end(), [](const entry& a, const entry& b) { return a.second < b.second; });
    for (const auto& e : level) flat_.push_back(e);
    levels_.push_back(std::move(level));
  }

  signature sig_;
  var_index vars_;
  std::size_t cap_;
  std::vector<std::vector<entry>> levels_;
  std::vector<entry> flat_;
};

}  // namespace henkin

#endif
