#ifndef HENKIN_TEST_ORBIT_BRUTE_HPP
#define HENKIN_TEST_ORBIT_BRUTE_HPP

#include <cstddef>
#include <set>
#include <vector>

#include "henkin/formula.hpp"

namespace orbit_brute {

using henkin::var_index;

// Orbits of assignments s : n -> base under s ~ s∘π, counted directly.
inline std::size_t brute_orbits(unsigned base, var_index n, const std::vector<std::vector<var_index>>& group) {
  std::set<std::vector<unsigned>> seen;
  std::size_t count = 0;
  std::vector<unsigned> s(n, 0);
  for (;;) {
    if (!seen.count(s)) {
      ++count;
      for (const auto& pi : group) {
        std::vector<unsigned> t(n);
        for (var_index k = 0; k < n; ++k) t[k] = s[pi[k]];
        seen.insert(t);
      }
    }
    var_index k = 0;
    while (k < n && ++s[k] == base) s[k++] = 0;
    if (k == n) break;
  }
  return count;
}

}  // namespace orbit_brute

#endif
