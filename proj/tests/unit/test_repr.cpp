#include <catch_amalgamated.hpp>

#include <random>

#include "support.hpp"

using namespace henkin;
using support::build;
using support::code_of;
using support::sample;

namespace {

finite_model binary(const signature& sig, unsigned n, unsigned mask) {
  finite_model m("m" + std::to_string(mask), sig, n);
  for (unsigned a = 0; a < n; ++a)
    for (unsigned b = 0; b < n; ++b)
      if ((mask >> (a * n + b)) & 1u) m.add("r", {a, b});
  return m;
}

}  // namespace

TEST_CASE("rep needs a frozen filter") {
  auto th = sample("dlo");
  generic_filter F(th.make_oracle(), henkin_mode::h_prime, 4);
  CHECK(code_of([&] { rep(F, formula::top()); }) == errc::unfrozen_filter);
  F.freeze();
  CHECK(rep(F, formula::top()).member(transformation{}));
}

TEST_CASE("rep examples on the DLO filter") {
  auto th = sample("dlo");
  auto F = build(th, henkin_mode::h_prime, 64, 8);
  auto one = rep(F, formula::top());
  auto zero = rep(F, formula::bottom());
  auto lt = rep(F, parse_formula("lt(v0,v1)", th.sig));
  CHECK(lt.dims() == var_set{0, 1});
  detail::for_each_map({0, 1}, 8, [&](const transformation& t) {
    CHECK(one.member(t));
    CHECK_FALSE(zero.member(t));
    CHECK(lt.member(t) == (t(0) < t(1)));
  });
  // v2 = v2 adds a free variable but no dimension
  auto padded = rep(F, parse_formula("lt(v0,v1) & v2 = v2", th.sig));
  CHECK(padded.dims() == var_set{0, 1});
}

TEST_CASE("rep is regular: only the dimension set matters") {
  std::mt19937 rng(7);
  for (const char* name : {"dlo", "edges"}) {
    auto th = sample(name);
    bool ca = th.sig.equality();
    auto F = build(th, ca ? henkin_mode::h_prime : henkin_mode::h, 48, 6);
    std::string r = ca ? "lt" : "adj";
    std::vector<formula> xs{
        parse_formula(r + "(v0,v1) & (" + r + "(v2,v3) | ~" + r + "(v2,v3))", th.sig),
        parse_formula("E v3 " + r + "(v0,v3) | (" + r + "(v1,v2) & ~" + r + "(v1,v2))", th.sig),
        parse_formula(r + "(v1,v0) & E v2 " + r + "(v2,v2) | " + r + "(v1,v0) & ~E v2 " + r + "(v2,v2)", th.sig),
    };
    for (const auto& x : xs) {
      auto rx = rep(F, x);
      auto fv = x.free_vars();
      for (int trial = 0; trial < 60; ++trial) {
        std::vector<transformation::pair_type> a, b;
        for (auto v : fv) {
          unsigned u = rng() % 6;
          a.emplace_back(v, u);
          b.emplace_back(v, rx.dims().count(v) ? u : static_cast<unsigned>(rng() % 6));
        }
        CHECK(rx.member(transformation::from_pairs(a)) == rx.member(transformation::from_pairs(b)));
      }
    }
  }
}

TEST_CASE("extracted models") {
  auto dlo = sample("dlo");
  auto F = build(dlo, henkin_mode::h_prime, 64, 8);
  auto M = extract_model(F, dlo.sig, 6);
  CHECK(M.base_size == 6);
  std::vector<tuple> want;
  for (unsigned a = 0; a < 6; ++a)
    for (unsigned b = a + 1; b < 6; ++b) want.push_back({a, b});
  CHECK(M.relations["lt"] == want);
  CHECK(code_of([&] { extract_model(F, dlo.sig, 9); }) == errc::horizon_exceeded);
  CHECK(extract_model(F, dlo.sig, 0).relations["lt"].empty());

  auto edges = sample("edges");
  auto G = build(edges, henkin_mode::h, 64, 6);
  for (unsigned B = 1; B <= 6; ++B) {
    auto E = extract_model(G, edges.sig, B).as_finite_model();
    for (unsigned a = 0; a < B; ++a) {
      CHECK_FALSE(E.holds("adj", {a, a}));
      for (unsigned b = 0; b < B; ++b) CHECK(E.holds("adj", {a, b}) == E.holds("adj", {b, a}));
    }
  }

  auto one = sample("one");
  auto H = build(one, henkin_mode::h, 16, 4);
  auto Q = extract_model_quotient(H, one.sig, 4);
  CHECK(Q.base_size == 1);
  CHECK(Q.relations["p"] == std::vector<tuple>{{0}});
  CHECK(code_of([&] { extract_model_quotient(G, edges.sig, 3); }) == errc::diagonal_in_qpa_mode);
}

TEST_CASE("rep is a homomorphism on sampled formulas") {
  for (const char* name : {"dlo", "edges", "chains"}) {
    auto th = sample(name);
    auto F = build(th, th.sig.equality() ? henkin_mode::h_prime : henkin_mode::h, 64, 6);
    formula_enumerator en(th.sig, 3);
    auto report = check_homomorphism(F, en.take(24), 4);
    INFO(name);
    for (const auto& n : report.notes) INFO(n);
    CHECK(report.violations == 0);
    CHECK(report.checks > 1000);
  }
}

TEST_CASE("rep separates inequivalent formulas of a complete theory") {
  auto edges = sample("edges");
  signature sig = edges.sig;
  auto K3 = edges.model("K3");
  auto oracle = std::make_shared<finite_model_oracle>(sig, std::vector<finite_model>{K3});
  formula_algebra A(sig, oracle, sig.mode());
  build_options opt;
  opt.mode = henkin_mode::h;
  opt.budget = 64;
  opt.horizon = 6;
  auto F = henkin_build(A, A.one(), opt);
  formula_enumerator en(sig, 2);
  auto xs = en.take(40);
  auto table = [&](const formula& x) {
    std::vector<bool> t;
    detail::for_each_map({0, 1}, 6, [&](const transformation& tau) { t.push_back(rep(F, x).member(tau)); });
    return t;
  };
  for (std::size_t a = 0; a < xs.size(); ++a)
    for (std::size_t b = a + 1; b < xs.size(); ++b)
      CHECK((table(xs[a]) == table(xs[b])) == oracle->entails_equal(xs[a], xs[b]));
}

TEST_CASE("iso correspondence examples") {
  signature sig("r2", {{"r", 2}}, true);
  auto chain2 = binary(sig, 2, 0b0010);  // r(0,1)
  auto flipped = binary(sig, 2, 0b0100); // r(1,0)
  CHECK(iso_correspondence_check(chain2, chain2, {0, 1}) == std::pair{true, true});
  CHECK(iso_correspondence_check(chain2, chain2, {1, 0}) == std::pair{false, false});
  CHECK(iso_correspondence_check(chain2, flipped, {1, 0}) == std::pair{true, true});
  CHECK(code_of([&] { iso_correspondence_check(chain2, binary(sig, 3, 0), {0, 1}); }) == errc::size_mismatch);
  CHECK(code_of([&] { iso_correspondence_check(chain2, chain2, {0, 0}); }) == errc::non_bijective);
}

TEST_CASE("iso correspondence: both sides agree on every pair of 2-point structures") {
  signature sig("r2", {{"r", 2}}, true);
  for (unsigned m0 = 0; m0 < 16; ++m0)
    for (unsigned m1 = 0; m1 < 16; ++m1)
      for (auto rho : {std::vector<unsigned>{0, 1}, std::vector<unsigned>{1, 0}}) {
        auto [left, right] = iso_correspondence_check(binary(sig, 2, m0), binary(sig, 2, m1), rho);
        CHECK(left == right);
      }
}
