#ifndef HENKIN_TRANSFORMATION_HPP
#define HENKIN_TRANSFORMATION_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "henkin/error.hpp"

namespace henkin {

using var_index = unsigned;
using var_set = std::set<var_index>;

/// A map on variable indices that moves only finitely many points.
///
/// Stored as the sorted list of pairs (i, τ(i)) with τ(i) ≠ i; every
/// other index is fixed. This is the index type for substitutions s_τ
/// and, read as an assignment ω → ω, for finite-support assignments.
class transformation {
public:
  using pair_type = std::pair<var_index, var_index>;

  transformation() = default;

  /// Builds from arbitrary (index, image) pairs; identity pairs are dropped.
  static transformation from_pairs(std::vector<pair_type> pairs) {
    std::sort(pairs.begin(), pairs.end());
    for (std::size_t k = 1; k < pairs.size(); ++k)
      if (pairs[k].first == pairs[k - 1].first)
        throw error(errc::config_error,
                    "transformation maps index " + std::to_string(pairs[k].first) + " twice");
    transformation t;
    for (const auto& p : pairs)
      if (p.first != p.second) t.pairs_.push_back(p);
    return t;
  }

  /// s^i_j: sends i to j.
  static transformation replacement(var_index i, var_index j) { return from_pairs({{i, j}}); }

  /// [i,j]: swaps i and j.
  static transformation transposition(var_index i, var_index j) {
    if (i == j) return {};
    return from_pairs({{i, j}, {j, i}});
  }

  var_index operator()(var_index i) const {
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), pair_type{i, 0},
                               [](const pair_type& a, const pair_type& b) { return a.first < b.first; });
    return (it != pairs_.end() && it->first == i) ? it->second : i;
  }

  const std::vector<pair_type>& pairs() const { return pairs_; }
  bool is_identity() const { return pairs_.empty(); }

  var_set support() const {
    var_set s;
    for (const auto& p : pairs_) s.insert(p.first);
    return s;
  }

  var_set moved_images() const {
    var_set s;
    for (const auto& p : pairs_) s.insert(p.second);
    return s;
  }

  /// Bijective on ω iff the support is mapped onto itself injectively.
  bool is_bijective() const {
    std::vector<var_index> images;
    for (const auto& p : pairs_) images.push_back(p.second);
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end()) return false;
    auto supp = support();
    return std::all_of(images.begin(), images.end(), [&](var_index v) { return supp.count(v) > 0; });
  }

  transformation inverse() const {
    if (!is_bijective()) throw error(errc::non_bijective, "transformation " + to_string() + " is not a bijection");
    std::vector<pair_type> inv;
    for (const auto& p : pairs_) inv.emplace_back(p.second, p.first);
    return from_pairs(std::move(inv));
  }

  /// Copy with index i sent to j (j == i removes i from the support).
  transformation with(var_index i, var_index j) const {
    std::vector<pair_type> ps;
    for (const auto& p : pairs_)
      if (p.first != i) ps.push_back(p);
    ps.emplace_back(i, j);
    return from_pairs(std::move(ps));
  }

  /// Copy that fixes i.
  transformation without(var_index i) const { return with(i, i); }

  /// Restriction to the given indices; identity elsewhere.
  transformation restricted_to(const var_set& keep) const {
    std::vector<pair_type> ps;
    for (const auto& p : pairs_)
      if (keep.count(p.first)) ps.push_back(p);
    return from_pairs(std::move(ps));
  }

  /// `id`, `[i|j]` and `[i,j]` for the generator shapes, `{i->j,...}` otherwise.
  std::string to_string() const {
    if (pairs_.empty()) return "id";
    if (pairs_.size() == 1)
      return "[" + std::to_string(pairs_[0].first) + "|" + std::to_string(pairs_[0].second) + "]";
    if (pairs_.size() == 2 && pairs_[0].second == pairs_[1].first && pairs_[1].second == pairs_[0].first)
      return "[" + std::to_string(pairs_[0].first) + "," + std::to_string(pairs_[0].second) + "]";
    std::string s = "{";
    for (std::size_t k = 0; k < pairs_.size(); ++k) {
      if (k) s += ",";
      s += std::to_string(pairs_[k].first) + "->" + std::to_string(pairs_[k].second);
    }
    return s + "}";
  }

  friend bool operator==(const transformation&, const transformation&) = default;
  friend bool operator<(const transformation& a, const transformation& b) { return a.pairs_ < b.pairs_; }

private:
  std::vector<pair_type> pairs_;
};

/// τ1 ∘ τ2, i.e. i ↦ τ1(τ2(i)).
inline transformation compose(const transformation& t1, const transformation& t2) {
  var_set pts = t1.support();
  for (auto i : t2.support()) pts.insert(i);
  std::vector<transformation::pair_type> ps;
  for (auto i : pts) ps.emplace_back(i, t1(t2(i)));
  return transformation::from_pairs(std::move(ps));
}

namespace detail {

inline void skip_ws(const std::string& s, std::size_t& p) {
  while (p < s.size() && (s[p] == ' ' || s[p] == '\t')) ++p;
}

inline var_index read_index(const std::string& s, std::size_t& p) {
  skip_ws(s, p);
  std::size_t start = p;
  unsigned long v = 0;
  while (p < s.size() && s[p] >= '0' && s[p] <= '9') {
    v = v * 10 + static_cast<unsigned long>(s[p] - '0');
    if (v > 1000000) throw error(errc::syntax_error, "index too large", start);
    ++p;
  }
  if (p == start) throw error(errc::syntax_error, "expected an index", p);
  return static_cast<var_index>(v);
}

inline void expect(const std::string& s, std::size_t& p, char c) {
  skip_ws(s, p);
  if (p >= s.size() || s[p] != c)
    throw error(errc::syntax_error, std::string("expected '") + c + "'", p);
  ++p;
}

}  // namespace detail

/// Parses a transformation literal. Factors are `[i|j]`, `[i,j]` or
/// `{i->j,...}`; juxtaposed factors multiply as composition, so `AB`
/// denotes A∘B. `id` and the empty string denote the identity.
inline transformation parse_transformation(const std::string& text) {
  std::size_t p = 0;
  transformation acc;
  bool any = false;
  for (;;) {
    detail::skip_ws(text, p);
    if (p >= text.size()) break;
    transformation factor;
    if (text.compare(p, 2, "id") == 0) {
      p += 2;
    } else if (text[p] == '[') {
      ++p;
      var_index i = detail::read_index(text, p);
      detail::skip_ws(text, p);
      if (p >= text.size()) throw error(errc::syntax_error, "unterminated transformation literal", p);
      char sep = text[p++];
      var_index j = detail::read_index(text, p);
      detail::expect(text, p, ']');
      if (sep == '|')
        factor = transformation::replacement(i, j);
      else if (sep == ',')
        factor = transformation::transposition(i, j);
      else
        throw error(errc::syntax_error, "expected '|' or ','", p - 1);
    } else if (text[p] == '{') {
      ++p;
      std::vector<transformation::pair_type> ps;
      detail::skip_ws(text, p);
      if (p < text.size() && text[p] == '}') {
        ++p;
      } else {
        for (;;) {
          var_index i = detail::read_index(text, p);
          detail::expect(text, p, '-');
          detail::expect(text, p, '>');
          var_index j = detail::read_index(text, p);
          ps.emplace_back(i, j);
          detail::skip_ws(text, p);
          if (p < text.size() && text[p] == ',') {
            ++p;
            continue;
          }
          detail::expect(text, p, '}');
          break;
        }
      }
      factor = transformation::from_pairs(std::move(ps));
    } else {
      throw error(errc::syntax_error, "unexpected character in transformation literal", p);
    }
    acc = any ? compose(acc, factor) : factor;
    any = true;
  }
  return acc;
}

/// Splits a comma-separated list of literals, ignoring commas inside brackets.
inline std::vector<transformation> parse_transformation_list(const std::string& text) {
  std::vector<transformation> out;
  int depth = 0;
  std::string cur;
  auto flush = [&] {
    bool blank = std::all_of(cur.begin(), cur.end(), [](char c) { return c == ' ' || c == '\t'; });
    if (!blank) out.push_back(parse_transformation(cur));
    cur.clear();
  };
  for (char c : text) {
    if (c == '[' || c == '{') ++depth;
    if (c == ']' || c == '}') --depth;
    if (c == ',' && depth == 0)
      flush();
    else
      cur += c;
  }
  flush();
  return out;
}

struct transformation_hash {
  std::size_t operator()(const transformation& t) const {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (const auto& p : t.pairs()) {
      h ^= std::hash<unsigned>{}(p.first) + 0x9e3779b9 + (h << 6) + (h >> 2);
      h ^= std::hash<unsigned>{}(p.second) + 0x9e3779b9 + (h << 6) + (h >> 2);
    }
    return h;
  }
};

}  // namespace henkin

#endif
