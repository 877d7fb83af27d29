#ifndef HENKIN_DENOTATION_HPP
#define HENKIN_DENOTATION_HPP

#include <vector>

#include "henkin/finite_model.hpp"
#include "henkin/formula.hpp"
#include "henkin/set_algebra.hpp"

namespace henkin {

/// f^M = {s ∈ ^ω M : M ⊨ f[s]} as an element of the full set algebra
/// over M's base.
inline set_element denotation(const finite_model& m, const formula& f) {
  std::vector<var_index> dims(f.free_vars().begin(), f.free_vars().end());
  std::vector<unsigned> a(f.var_bound(), 0);
  return set_element::from_predicate(m.size(), m.sig().mode(), dims, [&](const std::vector<unsigned>& vals) {
    for (std::size_t k = 0; k < dims.size(); ++k) a[dims[k]] = vals[k];
    return m.eval(f, a);
  });
}

}  // namespace henkin

#endif
