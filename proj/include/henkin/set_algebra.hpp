#ifndef HENKIN_SET_ALGEBRA_HPP
#define HENKIN_SET_ALGEBRA_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <iterator>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "henkin/error.hpp"
#include "henkin/signature.hpp"
#include "henkin/transformation.hpp"

namespace henkin {

/// A subset of ^ω U for a finite base U = {0..m-1} that depends on
/// finitely many coordinates. Stored as a table over its dimension set:
/// cell Σ_k s(dims[k])·m^k says whether s is in the set.
///
/// Tables are always reduced: no coordinate in `dims` is dummy. So dims
/// is exactly Δx = {i : c_i x ≠ x}, and equal sets have equal
/// representations.
class set_element {
public:
  set_element() = default;

  set_element(unsigned base, algebra_mode mode, std::vector<var_index> dims, std::vector<bool> table)
      : base_(base), mode_(mode), dims_(std::move(dims)), table_(std::move(table)) {
    if (base_ == 0) throw error(errc::config_error, "set algebra base must be nonempty");
    if (!std::is_sorted(dims_.begin(), dims_.end()) ||
        std::adjacent_find(dims_.begin(), dims_.end()) != dims_.end())
      throw error(errc::internal_error, "set_element dims must be sorted and distinct");
    if (table_.size() != cells(base_, dims_.size()))
      throw error(errc::size_mismatch, "set_element table has the wrong size");
    reduce();
  }

  static set_element zero(unsigned base, algebra_mode mode) { return set_element(base, mode, {}, {false}); }
  static set_element one(unsigned base, algebra_mode mode) { return set_element(base, mode, {}, {true}); }

  /// {s : pred(s(dims[0]), …, s(dims[k-1]))}; dims need not be sorted.
  template <class Pred>
  static set_element from_predicate(unsigned base, algebra_mode mode, std::vector<var_index> dims, Pred pred) {
    std::vector<var_index> sorted = dims;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<bool> t(cells(base, sorted.size()));
    std::vector<unsigned> vals(sorted.size(), 0), args(dims.size());
    for (std::size_t idx = 0; idx < t.size(); ++idx) {
      decode(idx, base, vals);
      for (std::size_t k = 0; k < dims.size(); ++k)
        args[k] = vals[static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), dims[k]) - sorted.begin())];
      t[idx] = pred(static_cast<const std::vector<unsigned>&>(args));
    }
    return set_element(base, mode, std::move(sorted), std::move(t));
  }

  unsigned base() const { return base_; }
  algebra_mode mode() const { return mode_; }
  const std::vector<var_index>& dims() const { return dims_; }
  const std::vector<bool>& table() const { return table_; }
  var_set dimension_set() const { return var_set(dims_.begin(), dims_.end()); }

  bool is_zero() const { return dims_.empty() && !table_[0]; }
  bool is_one() const { return dims_.empty() && table_[0]; }

  /// s ∈ x, where s(i) is given by `value(i)` for the coordinates in dims.
  template <class Value>
  bool contains(Value value) const {
    std::size_t idx = 0, mul = 1;
    for (auto d : dims_) {
      unsigned v = value(d);
      if (v >= base_) throw error(errc::horizon_exceeded, "assignment value outside the base");
      idx += v * mul;
      mul *= base_;
    }
    return table_[idx];
  }

  bool contains_values(const std::map<var_index, unsigned>& s) const {
    return contains([&](var_index d) {
      auto it = s.find(d);
      return it == s.end() ? 0u : it->second;
    });
  }

  /// Rows of the table that are in the set, each as values over dims.
  std::vector<std::vector<unsigned>> tuples() const {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> vals(dims_.size());
    for (std::size_t idx = 0; idx < table_.size(); ++idx)
      if (table_[idx]) {
        decode(idx, base_, vals);
        out.push_back(vals);
      }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t k = 0; k < dims_.size(); ++k) s += (k ? "," : "") + std::to_string(dims_[k]);
    s += "}:";
    for (bool b : table_) s += b ? '1' : '0';
    return s;
  }

  friend bool operator==(const set_element& a, const set_element& b) {
    return a.base_ == b.base_ && a.mode_ == b.mode_ && a.dims_ == b.dims_ && a.table_ == b.table_;
  }
  friend bool operator!=(const set_element& a, const set_element& b) { return !(a == b); }
  friend bool operator<(const set_element& a, const set_element& b) {
    if (a.dims_ != b.dims_) return a.dims_ < b.dims_;
    return a.table_ < b.table_;
  }

  std::size_t hash() const {
    std::size_t h = std::hash<std::vector<bool>>{}(table_);
    for (auto d : dims_) h ^= d + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h ^ (static_cast<std::size_t>(base_) << 20);
  }

  static std::size_t cells(unsigned base, std::size_t ndims) {
    std::size_t c = 1;
    for (std::size_t k = 0; k < ndims; ++k) {
      c *= base;
      if (c > (std::size_t{1} << 24)) throw error(errc::capacity_exceeded, "set_element table too large");
    }
    return c;
  }

  static void decode(std::size_t idx, unsigned base, std::vector<unsigned>& vals) {
    for (auto& v : vals) {
      v = static_cast<unsigned>(idx % base);
      idx /= base;
    }
  }

  /// The same set as a (possibly unreduced) table over `target` ⊇ dims.
  std::vector<bool> expand(const std::vector<var_index>& target) const {
    std::vector<std::size_t> pos;
    for (auto d : dims_) {
      auto it = std::lower_bound(target.begin(), target.end(), d);
      if (it == target.end() || *it != d) throw error(errc::internal_error, "expand target misses a dimension");
      pos.push_back(static_cast<std::size_t>(it - target.begin()));
    }
    std::vector<bool> out(cells(base_, target.size()));
    std::vector<unsigned> vals(target.size());
    for (std::size_t idx = 0; idx < out.size(); ++idx) {
      decode(idx, base_, vals);
      std::size_t src = 0, mul = 1;
      for (auto p : pos) {
        src += vals[p] * mul;
        mul *= base_;
      }
      out[idx] = table_[src];
    }
    return out;
  }

private:
  void reduce() {
    bool changed = true;
    while (changed) {
      changed = false;
      std::size_t stride = 1;
      for (std::size_t k = 0; k < dims_.size(); ++k, stride *= base_) {
        if (dummy(k, stride)) {
          drop(k, stride);
          changed = true;
          break;
        }
      }
    }
  }

  bool dummy(std::size_t, std::size_t stride) const {
    for (std::size_t idx = 0; idx < table_.size(); ++idx) {
      std::size_t digit = (idx / stride) % base_;
      if (digit == 0) continue;
      if (table_[idx] != table_[idx - digit * stride]) return false;
    }
    return true;
  }

  void drop(std::size_t k, std::size_t stride) {
    std::vector<bool> t;
    t.reserve(table_.size() / base_);
    for (std::size_t idx = 0; idx < table_.size(); ++idx)
      if ((idx / stride) % base_ == 0) t.push_back(table_[idx]);
    table_ = std::move(t);
    dims_.erase(dims_.begin() + static_cast<std::ptrdiff_t>(k));
  }

  unsigned base_ = 1;
  algebra_mode mode_ = algebra_mode::ca;
  std::vector<var_index> dims_;
  std::vector<bool> table_{false};
};

struct set_element_hash {
  std::size_t operator()(const set_element& x) const { return x.hash(); }
};

namespace detail {

inline void same_algebra(const set_element& a, const set_element& b) {
  if (a.base() != b.base() || a.mode() != b.mode())
    throw error(errc::mixed_algebras, "set elements over different bases or modes");
}

inline std::vector<var_index> union_dims(const set_element& a, const set_element& b) {
  std::vector<var_index> out;
  std::set_union(a.dims().begin(), a.dims().end(), b.dims().begin(), b.dims().end(), std::back_inserter(out));
  return out;
}

template <class Op>
set_element combine(const set_element& a, const set_element& b, Op op) {
  same_algebra(a, b);
  auto dims = union_dims(a, b);
  auto ta = a.expand(dims), tb = b.expand(dims);
  std::vector<bool> t(ta.size());
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = op(ta[k], tb[k]);
  return set_element(a.base(), a.mode(), std::move(dims), std::move(t));
}

}  // namespace detail

inline set_element meet(const set_element& a, const set_element& b) {
  return detail::combine(a, b, [](bool x, bool y) { return x && y; });
}
inline set_element join(const set_element& a, const set_element& b) {
  return detail::combine(a, b, [](bool x, bool y) { return x || y; });
}
inline set_element complement(const set_element& a) {
  std::vector<bool> t = a.table();
  t.flip();
  return set_element(a.base(), a.mode(), a.dims(), std::move(t));
}
inline bool leq(const set_element& a, const set_element& b) { return meet(a, complement(b)).is_zero(); }

/// c_i x: existential projection along coordinate i.
inline set_element cylindrify(var_index i, const set_element& a) {
  auto it = std::lower_bound(a.dims().begin(), a.dims().end(), i);
  if (it == a.dims().end() || *it != i) return a;
  std::size_t k = static_cast<std::size_t>(it - a.dims().begin());
  std::size_t stride = 1;
  for (std::size_t j = 0; j < k; ++j) stride *= a.base();
  std::vector<var_index> dims = a.dims();
  dims.erase(dims.begin() + static_cast<std::ptrdiff_t>(k));
  std::vector<bool> t(set_element::cells(a.base(), dims.size()), false);
  for (std::size_t idx = 0; idx < a.table().size(); ++idx) {
    if (!a.table()[idx]) continue;
    std::size_t lo = idx % stride, hi = idx / (stride * a.base());
    t[lo + hi * stride] = true;
  }
  return set_element(a.base(), a.mode(), std::move(dims), std::move(t));
}

/// d_ij = {s : s(i) = s(j)}; only in CA mode.
inline set_element diagonal(unsigned base, algebra_mode mode, var_index i, var_index j) {
  if (mode != algebra_mode::ca) throw error(errc::diagonal_in_qpa_mode, "diagonals exist only in CA mode");
  if (i == j) return set_element::one(base, mode);
  return set_element::from_predicate(base, mode, {i, j}, [](const std::vector<unsigned>& v) { return v[0] == v[1]; });
}

/// s_τ x = {s : s∘τ ∈ x}.
inline set_element substitute(const transformation& t, const set_element& a) {
  if (t.is_identity()) return a;
  std::vector<var_index> src;
  for (auto d : a.dims()) src.push_back(t(d));
  return set_element::from_predicate(a.base(), a.mode(), src, [&](const std::vector<unsigned>& vals) {
    std::size_t idx = 0, mul = 1;
    for (auto v : vals) {
      idx += v * mul;
      mul *= a.base();
    }
    return static_cast<bool>(a.table()[idx]);
  });
}

inline var_set dimension_set(const set_element& a) { return a.dimension_set(); }

/// A finite set algebra: a list of elements over base {0..m-1}, closed
/// under the operations of its mode with indices below `dim_bound`.
class set_algebra {
public:
  enum class closure { boolean, full };

  /// Every element with dims ⊆ {0..n-1}: 2^(m^n) of them.
  static set_algebra full(unsigned base, algebra_mode mode, var_index n, std::size_t cap = 1u << 16) {
    std::size_t cells = set_element::cells(base, n);
    if (cells >= 63 || (std::size_t{1} << cells) > cap)
      throw error(errc::capacity_exceeded, "full set algebra over base " + std::to_string(base) + " with " +
                                               std::to_string(n) + " dimensions has too many elements");
    std::vector<var_index> dims;
    for (var_index k = 0; k < n; ++k) dims.push_back(k);
    set_algebra A(base, mode, n);
    for (std::size_t mask = 0; mask < (std::size_t{1} << cells); ++mask) {
      std::vector<bool> t(cells);
      for (std::size_t c = 0; c < cells; ++c) t[c] = (mask >> c) & 1u;
      A.insert(set_element(base, mode, dims, std::move(t)));
    }
    A.sort();
    return A;
  }

  /// Closure of the generators under the chosen operations (indices < n).
  static set_algebra generated(unsigned base, algebra_mode mode, var_index n, const std::vector<set_element>& gens,
                               closure ops = closure::full, std::size_t cap = 1u << 16) {
    set_algebra A(base, mode, n);
    A.insert(set_element::zero(base, mode));
    A.insert(set_element::one(base, mode));
    for (const auto& g : gens) {
      if (g.base() != base || g.mode() != mode) throw error(errc::mixed_algebras, "generator from another algebra");
      for (auto d : g.dims())
        if (d >= n) throw error(errc::config_error, "generator has a dimension outside the bound");
      A.insert(g);
    }
    if (ops == closure::full && mode == algebra_mode::ca)
      for (var_index i = 0; i < n; ++i)
        for (var_index j = 0; j < n; ++j) A.insert(henkin::diagonal(base, mode, i, j));
    std::vector<transformation> subs;
    if (ops == closure::full)
      for (var_index i = 0; i < n; ++i)
        for (var_index j = 0; j < n; ++j)
          if (i != j) {
            subs.push_back(transformation::replacement(i, j));
            if (i < j) subs.push_back(transformation::transposition(i, j));
          }
    std::size_t done = 0;
    while (done < A.elems_.size()) {
      set_element x = A.elems_[done];
      A.insert(henkin::complement(x));
      for (std::size_t k = 0; k <= done; ++k) {
        set_element y = A.elems_[k];
        A.insert(henkin::meet(x, y));
        A.insert(henkin::join(x, y));
      }
      if (ops == closure::full) {
        for (var_index i = 0; i < n; ++i) A.insert(henkin::cylindrify(i, x));
        for (const auto& t : subs) A.insert(henkin::substitute(t, x));
      }
      if (A.elems_.size() > cap) throw error(errc::capacity_exceeded, "generated set algebra exceeds the cap");
      ++done;
    }
    A.sort();
    return A;
  }

  /// Nr_k: elements with Δ ⊆ {0..k-1}, operations below k.
  static set_algebra neat_reduct(const set_algebra& A, var_index k) {
    set_algebra R(A.base_, A.mode_, std::min(k, A.dim_bound_));
    for (const auto& x : A.elems_) {
      bool inside = std::all_of(x.dims().begin(), x.dims().end(), [&](var_index d) { return d < k; });
      if (inside) R.insert(x);
    }
    R.sort();
    return R;
  }

  unsigned base() const { return base_; }
  algebra_mode mode() const { return mode_; }
  var_index dim_bound() const { return dim_bound_; }
  std::size_t size() const { return elems_.size(); }
  const std::vector<set_element>& elements() const { return elems_; }
  const set_element& element(std::size_t k) const { return elems_.at(k); }
  bool contains(const set_element& x) const { return index_.count(x) > 0; }
  std::size_t index_of(const set_element& x) const {
    auto it = index_.find(x);
    if (it == index_.end()) throw error(errc::mixed_algebras, "element " + x.to_string() + " not in the algebra");
    return it->second;
  }

  set_element zero() const { return set_element::zero(base_, mode_); }
  set_element one() const { return set_element::one(base_, mode_); }
  set_element meet(const set_element& a, const set_element& b) const { return henkin::meet(a, b); }
  set_element join(const set_element& a, const set_element& b) const { return henkin::join(a, b); }
  set_element complement(const set_element& a) const { return henkin::complement(a); }
  bool leq(const set_element& a, const set_element& b) const { return henkin::leq(a, b); }
  set_element substitute(const transformation& t, const set_element& a) const { return henkin::substitute(t, a); }

  /// Whether every element stays inside under every operation.
  bool closed() const {
    for (const auto& x : elems_) {
      if (!contains(complement(x))) return false;
      for (var_index i = 0; i < dim_bound_; ++i) {
        if (!contains(cylindrify(i, x))) return false;
        for (var_index j = 0; j < dim_bound_; ++j)
          if (i != j && !contains(henkin::substitute(transformation::replacement(i, j), x))) return false;
      }
      for (const auto& y : elems_)
        if (!contains(henkin::meet(x, y))) return false;
    }
    return true;
  }

private:
  set_algebra(unsigned base, algebra_mode mode, var_index n) : base_(base), mode_(mode), dim_bound_(n) {}

  void insert(const set_element& x) {
    if (index_.emplace(x, elems_.size()).second) elems_.push_back(x);
  }

  // canonical order: by dims, then table
  void sort() {
    std::sort(elems_.begin(), elems_.end());
    index_.clear();
    for (std::size_t k = 0; k < elems_.size(); ++k) index_.emplace(elems_[k], k);
  }

  unsigned base_;
  algebra_mode mode_;
  var_index dim_bound_;
  std::vector<set_element> elems_;
  std::unordered_map<set_element, std::size_t, set_element_hash> index_;
};

/// An element of a weak set algebra ⊆ ℘(^ωω^(Id)). Assignments are the
/// finite-support maps, i.e. transformations; membership is read from a
/// table over dims with values below the horizon B.
class weak_element {
public:
  weak_element(set_element table, unsigned horizon) : table_(std::move(table)), horizon_(horizon) {
    if (table_.base() != horizon_) throw error(errc::size_mismatch, "weak table base must equal its horizon");
  }

  const set_element& table() const { return table_; }
  unsigned horizon() const { return horizon_; }
  const std::vector<var_index>& dims() const { return table_.dims(); }

  /// τ ∈ x for the finite-support assignment τ.
  bool member(const transformation& tau) const {
    for (auto d : table_.dims())
      if (tau(d) >= horizon_)
        throw error(errc::horizon_exceeded, "assignment sends v" + std::to_string(d) + " beyond horizon " +
                                                std::to_string(horizon_));
    return table_.contains([&](var_index d) { return tau(d); });
  }

private:
  set_element table_;
  unsigned horizon_;
};

}  // namespace henkin

#endif
