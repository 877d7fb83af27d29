#ifndef HENKIN_KCODE_HPP
#define HENKIN_KCODE_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "henkin/error.hpp"

namespace henkin {

/// A function from a finite subset of ω to ω, as sorted (key, value) pairs.
struct kcode {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;

  kcode() = default;
  explicit kcode(std::vector<std::pair<std::uint64_t, std::uint64_t>> ps) : pairs(std::move(ps)) {
    std::sort(pairs.begin(), pairs.end());
    for (std::size_t k = 1; k < pairs.size(); ++k)
      if (pairs[k].first == pairs[k - 1].first) throw error(errc::config_error, "kcode has a repeated key");
  }

  bool empty() const { return pairs.empty(); }

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t k = 0; k < pairs.size(); ++k)
      s += (k ? "," : "") + std::to_string(pairs[k].first) + ":" + std::to_string(pairs[k].second);
    return s + "}";
  }

  friend bool operator==(const kcode&, const kcode&) = default;
  friend bool operator<(const kcode& a, const kcode& b) { return a.pairs < b.pairs; }
};

namespace detail {

constexpr unsigned kcode_bits = 62;

inline std::uint64_t cantor_pair(std::uint64_t k, std::uint64_t v) { return (k + v) * (k + v + 1) / 2 + v; }

inline std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t c) {
  std::uint64_t w = 0;
  while ((w + 1) * (w + 2) / 2 <= c) ++w;
  std::uint64_t v = c - w * (w + 1) / 2;
  return {w - v, v};
}

struct kcode_tables {
  std::uint64_t key[64];
  // below[b][k]: how many bit positions c < b code a pair with key k
  unsigned below[65][12];
  kcode_tables() : key{}, below{} {
    for (unsigned b = 0; b < 64; ++b) key[b] = cantor_unpair(b).first;
    for (unsigned b = 0; b < 64; ++b)
      for (unsigned k = 0; k < 12; ++k) below[b + 1][k] = below[b][k] + (key[b] == k ? 1u : 0u);
  }
};

inline const kcode_tables& tables() {
  static const kcode_tables t;
  return t;
}

// How many naturals M < N decode to a set of pairs with distinct keys.
// Walks N's bits from the top: whenever N has a 1 we count the numbers
// that agree above, have 0 there, and are free below (one pair at most
// per key not already used above).
inline std::uint64_t kept_below(std::uint64_t N) {
  const auto& t = tables();
  std::uint64_t count = 0;
  bool used[12] = {};
  for (int b = 63; b >= 0; --b) {
    if (!((N >> b) & 1u)) continue;
    std::uint64_t ways = 1;
    for (unsigned k = 0; k < 12; ++k)
      if (!used[k]) ways *= 1 + t.below[b][k];
    count += ways;
    auto k = t.key[b];
    if (used[k]) return count;  // every larger prefix repeats key k
    used[k] = true;
  }
  return count;
}

inline bool kept(std::uint64_t N) {
  const auto& t = tables();
  bool used[12] = {};
  for (unsigned b = 0; b < 64; ++b)
    if ((N >> b) & 1u) {
      if (used[t.key[b]]) return false;
      used[t.key[b]] = true;
    }
  return true;
}

}  // namespace detail

/// The natural number coding k: Σ 2^p(key, value) over its pairs.
inline std::uint64_t kcode_number(const kcode& k) {
  std::uint64_t n = 0;
  for (const auto& [key, val] : k.pairs) {
    std::uint64_t c = detail::cantor_pair(key, val);
    if (c > detail::kcode_bits) throw error(errc::capacity_exceeded, "kcode " + k.to_string() + " is too large to rank");
    n |= std::uint64_t{1} << c;
  }
  return n;
}

inline kcode decode_kcode_number(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> ps;
  for (unsigned b = 0; b <= detail::kcode_bits; ++b)
    if ((n >> b) & 1u) ps.push_back(detail::cantor_unpair(b));
  return kcode(std::move(ps));
}

/// μ⁻¹: the rank of k's number among the kept naturals.
inline std::uint64_t mu_inverse(const kcode& k) { return detail::kept_below(kcode_number(k)); }

/// μ(n): the n-th natural, in increasing order, whose bits code pairs with
/// distinct keys, decoded.
inline kcode mu(std::uint64_t n) {
  std::uint64_t hi = std::uint64_t{1} << (detail::kcode_bits + 1);
  if (detail::kept_below(hi) <= n) throw error(errc::capacity_exceeded, "mu(" + std::to_string(n) + ") is out of range");
  // largest N with kept_below(N) <= n
  std::uint64_t lo = 0;
  while (hi - lo > 1) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    if (detail::kept_below(mid) <= n)
      lo = mid;
    else
      hi = mid;
  }
  return decode_kcode_number(lo);
}

}  // namespace henkin

#endif
