#ifndef HENKIN_DISTINGUISH_HPP
#define HENKIN_DISTINGUISH_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "henkin/denotation.hpp"
#include "henkin/enumerate.hpp"
#include "henkin/error.hpp"
#include "henkin/finite_model.hpp"
#include "henkin/formula.hpp"
#include "henkin/generic_filter.hpp"
#include "henkin/kcode.hpp"
#include "henkin/parse.hpp"
#include "henkin/repr.hpp"

namespace henkin {

/// Exact(n), or AtLeast(n) when only assignments below a horizon were seen.
struct count_result {
  bool exact = true;
  std::uint64_t n = 0;
  unsigned horizon = 0;  // AtLeast only

  static count_result exactly(std::uint64_t n) { return {true, n, 0}; }
  static count_result at_least(std::uint64_t n, unsigned B) { return {false, n, B}; }

  std::string to_string() const {
    if (exact) return "Exact(" + std::to_string(n) + ")";
    return "AtLeast(" + std::to_string(n) + " at horizon " + std::to_string(horizon) + ")";
  }
  friend bool operator==(const count_result&, const count_result&) = default;
};

/// Sat(a) = {t|Δa : t satisfies a}: the tuples are maps on exactly Δa,
/// listed as value vectors in the order of `dims`.
struct sat_table {
  std::vector<var_index> dims;
  std::vector<std::vector<unsigned>> tuples;
  count_result count;
};

/// Finite model: exhaustive. Δa is a's dimension set in M's set algebra.
inline sat_table make_sat_table(const finite_model& M, const formula& a) {
  validate(a, M.sig());
  set_element d = denotation(M, a);
  sat_table t;
  t.dims = d.dims();
  t.tuples = d.tuples();
  t.count = count_result::exactly(t.tuples.size());
  return t;
}

/// Extracted model of a frozen filter: Δa from the theory oracle, tuples
/// with entries below B. The count is exact only when Δa is empty.
inline sat_table make_sat_table(generic_filter& F, const formula& a, unsigned B) {
  validate(a, F.oracle()->sig());
  auto r = rep(F, a);
  sat_table t;
  t.dims.assign(r.dims().begin(), r.dims().end());
  detail::for_each_map(t.dims, B, [&](const transformation& tau) {
    if (!r.member(tau)) return;
    std::vector<unsigned> vals;
    for (auto d : t.dims) vals.push_back(tau(d));
    t.tuples.push_back(std::move(vals));
  });
  if (t.dims.empty())
    t.count = count_result::exactly(t.tuples.size());
  else
    t.count = count_result::at_least(t.tuples.size(), B);
  return t;
}

/// A model to compare: a finite model, or the extracted model of a filter
/// read at horizon B.
class model_ref {
public:
  model_ref(const finite_model& m) : finite_(&m) {}  // NOLINT(google-explicit-constructor)
  model_ref(generic_filter& F, unsigned B) : filter_(&F), horizon_(B) {}

  const signature& sig() const { return finite_ ? finite_->sig() : filter_->oracle()->sig(); }
  sat_table sat(const formula& a) const { return finite_ ? make_sat_table(*finite_, a) : make_sat_table(*filter_, a, horizon_); }

private:
  const finite_model* finite_ = nullptr;
  generic_filter* filter_ = nullptr;
  unsigned horizon_ = 0;
};

struct infinite_verdict {
  bool saturated = false;                    // SaturatedUpTo(horizon)
  std::optional<std::uint64_t> stabilized;   // StabilizedAt(n0); nullopt with no member at all
  std::uint64_t horizon = 0;
  std::uint64_t members = 0;

  std::string to_string() const {
    if (saturated) return "SaturatedUpTo(" + std::to_string(horizon) + ")";
    if (stabilized) return "StabilizedAt(" + std::to_string(*stabilized) + ")";
    return "StabilizedAt(none)";
  }
};

/// Bounded replay of "X is infinite iff ∀n ∃m>n μ(m) ∈ X" with n, m ≤ H:
/// saturated when some member lies in the final window (H-window, H],
/// otherwise stabilized at the last member found.
inline infinite_verdict infinite_criterion(const std::function<bool(const kcode&)>& in_x, std::uint64_t H,
                                           std::uint64_t window = 1) {
  infinite_verdict v;
  v.horizon = H;
  std::optional<std::uint64_t> last;
  for (std::uint64_t m = 0; m <= H; ++m)
    if (in_x(mu(m))) {
      ++v.members;
      last = m;
    }
  if (last && *last + window > H)
    v.saturated = true;
  else
    v.stabilized = last;
  return v;
}

struct equinumerous_verdict {
  bool witness = false;
  std::size_t n = 0;
  std::vector<kcode> f, g;
  std::size_t n_max = 0;

  std::string to_string() const {
    if (!witness) return "NoWitnessUpTo(" + std::to_string(n_max) + ")";
    return "Witness(" + std::to_string(n) + ")";
  }
};

namespace detail {

// Calls fn on each k-subset of {0..n-1} in lexicographic order until fn
// returns true.
inline bool for_each_subset(std::size_t n, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& fn) {
  if (k > n) return false;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    if (fn(idx)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

/// Looks for n ≤ n_max and injections f, g : n → K with
/// f*(g⁻¹(Y)) = X and g*(f⁻¹(X)) = Y, i.e. X ⊆ im f, Y ⊆ im g and
/// f(i) ∈ X ⇔ g(i) ∈ Y for every i < n.
///
/// f and g range over the pool X ∪ Y plus the first max(0, n − |X∪Y|)
/// codes under μ outside X ∪ Y. Reindexing i permutes both maps together,
/// so f may be taken increasing in pool order, and g increasing on the
/// slots where f hits X and on the others; the search is complete on
/// those canonical forms.
inline equinumerous_verdict equinumerous_witness(const std::set<kcode>& X, const std::set<kcode>& Y, std::size_t n_max) {
  equinumerous_verdict v;
  v.n_max = n_max;
  std::set<kcode> uni = X;
  uni.insert(Y.begin(), Y.end());
  for (std::size_t n = 0; n <= n_max; ++n) {
    std::vector<kcode> pool(uni.begin(), uni.end());
    for (std::uint64_t m = 0; pool.size() < std::max(n, uni.size()); ++m) {
      kcode c = mu(m);
      if (!uni.count(c)) pool.push_back(c);
    }
    std::vector<std::size_t> y_idx, non_y_idx;
    for (std::size_t p = 0; p < pool.size(); ++p) (Y.count(pool[p]) ? y_idx : non_y_idx).push_back(p);
    bool found = detail::for_each_subset(pool.size(), n, [&](const std::vector<std::size_t>& fs) {
      std::size_t in_x = 0;
      for (auto p : fs) in_x += X.count(pool[p]);
      if (in_x != X.size()) return false;  // X ⊄ im f
      std::size_t rest = n - in_x;
      // g on X-slots: in_x distinct members of Y covering all of Y
      if (in_x > y_idx.size() || rest > non_y_idx.size()) return false;
      return detail::for_each_subset(y_idx.size(), in_x, [&](const std::vector<std::size_t>& gy) {
        if (gy.size() != Y.size()) return false;  // Y ⊄ im g
        return detail::for_each_subset(non_y_idx.size(), rest, [&](const std::vector<std::size_t>& gn) {
          std::vector<kcode> f, g;
          std::size_t a = 0, b = 0;
          for (auto p : fs) {
            f.push_back(pool[p]);
            if (X.count(pool[p]))
              g.push_back(pool[y_idx[gy[a++]]]);
            else
              g.push_back(pool[non_y_idx[gn[b++]]]);
          }
          v.witness = true;
          v.n = n;
          v.f = std::move(f);
          v.g = std::move(g);
          return true;
        });
      });
    });
    if (found) return v;
  }
  return v;
}

/// Encodes the tuples of a sat table as functions dims → values.
inline std::set<kcode> sat_codes(const sat_table& t) {
  std::set<kcode> out;
  for (const auto& vals : t.tuples) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> ps;
    for (std::size_t k = 0; k < t.dims.size(); ++k) ps.emplace_back(t.dims[k], vals[k]);
    out.insert(kcode(std::move(ps)));
  }
  return out;
}

struct distinguish_verdict {
  bool distinguished = false;
  std::optional<formula> a;  // the first distinguishing formula
  count_result c0, c1;
  std::size_t budget = 0;
  unsigned horizon = 0;
  std::size_t inconclusive = 0;    // comparisons that could not be settled
  std::optional<bool> second_opinion;  // equinumerous_witness found a witness (small exact tables only)

  std::string to_string() const {
    if (distinguished)
      return "Distinguished(" + henkin::to_string(*a) + ", " + c0.to_string() + ", " + c1.to_string() + ")";
    return "IndistinguishableUpTo(" + std::to_string(budget) + ", " + std::to_string(horizon) + ")";
  }
};

/// 1 distinguishes, 0 agrees, -1 cannot tell.
inline int compare_counts(const count_result& x, const count_result& y) {
  if (x.exact && y.exact) return x.n != y.n ? 1 : 0;
  if (x.exact) return y.n > x.n ? 1 : -1;
  if (y.exact) return x.n > y.n ? 1 : -1;
  return -1;
}

/// Walks the first `budget` formulas (depth, then text) over
/// v0..v(var_bound-1) and stops at the first whose realization counts
/// differ.
inline distinguish_verdict distinguishable(const model_ref& M0, const model_ref& M1, std::size_t budget, unsigned B,
                                           var_index var_bound = 2) {
  if (!(M0.sig() == M1.sig())) throw error(errc::signature_mismatch, "models over different signatures");
  distinguish_verdict v;
  v.budget = budget;
  v.horizon = B;
  formula_enumerator en(M0.sig(), var_bound);
  for (std::size_t n = 0; n < budget; ++n) {
    const formula& a = en.at(n);
    auto t0 = M0.sat(a), t1 = M1.sat(a);
    int c = compare_counts(t0.count, t1.count);
    if (c < 0) ++v.inconclusive;
    if (c == 1) {
      v.distinguished = true;
      v.a = a;
      v.c0 = t0.count;
      v.c1 = t1.count;
      if (t0.count.exact && t1.count.exact && t0.tuples.size() <= 4 && t1.tuples.size() <= 4) {
        auto X = sat_codes(t0), Y = sat_codes(t1);
        v.second_opinion = equinumerous_witness(X, Y, std::max(X.size(), Y.size()) + 1).witness;
      }
      return v;
    }
  }
  return v;
}

}  // namespace henkin

#endif
