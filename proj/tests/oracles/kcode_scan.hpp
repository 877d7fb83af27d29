// Kept codes found by scanning naturals one at a time, and a checker for
// equinumerosity witnesses. Independent of the library's coding.
#ifndef HENKIN_TEST_KCODE_SCAN_HPP
#define HENKIN_TEST_KCODE_SCAN_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "henkin/distinguish.hpp"

namespace kscan {

using henkin::equinumerous_verdict;
using henkin::kcode;

// The first `count` kept codes, by scanning naturals one at a time.
inline std::vector<kcode> scan_codes(std::size_t count) {
  std::vector<kcode> out;
  for (std::uint64_t N = 0; out.size() < count; ++N) {
    std::map<std::uint64_t, std::uint64_t> f;
    bool ok = true;
    for (unsigned c = 0; c < 64 && ok; ++c) {
      if (!((N >> c) & 1u)) continue;
      auto w = static_cast<std::uint64_t>((std::sqrt(8.0 * c + 1) - 1) / 2);
      std::uint64_t v = c - w * (w + 1) / 2, k = w - v;
      ok = f.emplace(k, v).second;
    }
    if (!ok) continue;
    out.push_back(kcode({f.begin(), f.end()}));
  }
  return out;
}

inline bool valid_witness(const equinumerous_verdict& v, const std::set<kcode>& X, const std::set<kcode>& Y) {
  if (v.f.size() != v.n || v.g.size() != v.n) return false;
  if (std::set<kcode>(v.f.begin(), v.f.end()).size() != v.n) return false;
  if (std::set<kcode>(v.g.begin(), v.g.end()).size() != v.n) return false;
  for (const auto& x : X)
    if (std::find(v.f.begin(), v.f.end(), x) == v.f.end()) return false;
  for (const auto& y : Y)
    if (std::find(v.g.begin(), v.g.end(), y) == v.g.end()) return false;
  for (std::size_t i = 0; i < v.n; ++i)
    if (X.count(v.f[i]) != Y.count(v.g[i])) return false;
  return true;
}

}  // namespace kscan

#endif
