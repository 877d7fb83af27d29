#ifndef HENKIN_TESTS_SUPPORT_HPP
#define HENKIN_TESTS_SUPPORT_HPP

#include <string>

#include "henkin/henkin.hpp"

namespace support {

inline henkin::theory sample(const std::string& name) {
  return henkin::load_theory(std::string(SAMPLES_DIR) + "/theories/" + name + ".thy");
}

inline henkin::type_set sample_type(const std::string& name, const henkin::signature& sig) {
  return henkin::parse_type_file(name, henkin::read_file(std::string(SAMPLES_DIR) + "/types/" + name + ".typ"), sig);
}

inline henkin::formula_algebra algebra_of(const henkin::theory& th) {
  return henkin::formula_algebra(th.sig, th.make_oracle(), th.sig.mode());
}

inline henkin::generic_filter build(const henkin::theory& th, henkin::henkin_mode mode, std::size_t budget,
                                    henkin::var_index horizon, const std::string& seed = "true",
                                    std::vector<henkin::type_set> omit = {}) {
  auto A = algebra_of(th);
  henkin::build_options opt;
  opt.mode = mode;
  opt.budget = budget;
  opt.horizon = horizon;
  opt.omit = std::move(omit);
  return henkin::henkin_build(A, A.element(seed), opt);
}

template <class Fn>
henkin::errc code_of(Fn&& fn) {
  try {
    fn();
  } catch (const henkin::error& e) {
    return e.code();
  }
  return henkin::errc::internal_error;
}

}  // namespace support

#endif
