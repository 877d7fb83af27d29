#include <catch_amalgamated.hpp>

#include <map>
#include <random>
#include <sstream>

#include "henkin/dlo.hpp"
#include "henkin/enumerate.hpp"
#include "henkin/external_oracle.hpp"
#include "henkin/oracle.hpp"
#include "henkin/order_types.hpp"
#include "oracles/brute.hpp"
#include "oracles/dlo_brute.hpp"

using namespace henkin;

namespace {

const signature ord_eq("ord", {{"lt", 2}}, true);

finite_model chain(unsigned n) {
  finite_model m("chain" + std::to_string(n), ord_eq, n);
  for (unsigned a = 0; a < n; ++a)
    for (unsigned b = a + 1; b < n; ++b) m.add("lt", {a, b});
  return m;
}

brute::model as_brute(const finite_model& m) {
  brute::model b;
  b.size = m.size();
  for (const auto& r : m.sig().relations())
    for (const auto& t : m.tuples(r.name)) b.rel[r.name].insert(t);
  return b;
}

formula P(const std::string& s) { return parse_formula(s, dlo_signature()); }

// truth table over assignments of {v0,v1} into m
std::vector<bool> table(const formula& f, const brute::model& m) {
  std::vector<bool> out;
  brute::for_each_assignment({0, 1}, m.size, [&](const std::map<var_index, unsigned>& s) { out.push_back(brute::eval(f, m, s)); });
  return out;
}

}  // namespace

TEST_CASE("finite-model oracle examples") {
  finite_model_oracle o(ord_eq, {chain(2)});
  CHECK(o.complete());
  CHECK(o.kind() == "finite-models");
  formula lt01 = parse_formula("lt(v0,v1)", ord_eq);
  CHECK(o.entails_equal(lt01, lt01));

  formula f = parse_formula("E v1 lt(v0,v1)", ord_eq);
  formula g = parse_formula("~E v1 lt(v1,v0) & ~lt(v0,v0)", ord_eq);
  bool brute_same = true;
  auto bm = as_brute(chain(2));
  brute::for_each_assignment({0}, 2, [&](const std::map<var_index, unsigned>& s) {
    if (brute::eval(f, bm, s) != brute::eval(g, bm, s)) brute_same = false;
  });
  CHECK(o.entails_equal(f, g) == brute_same);
  CHECK(brute_same);

  finite_model_oracle two(ord_eq, {chain(2), chain(3)});
  CHECK_FALSE(two.complete());
  CHECK(two.entails_equal(parse_formula("lt(v0,v0)", ord_eq), formula::bottom()));
  // true in the 2-chain, not in the 3-chain
  formula two_points = parse_formula("A v0 A v1 A v2 (v0 = v1 | v1 = v2 | v0 = v2)", ord_eq);
  CHECK(two.is_consistent(two_points));
  CHECK(two.is_consistent(neg(two_points)));
  CHECK_FALSE(two.entails_equal(two_points, formula::top()));

  const signature other("other", {{"r", 1}}, false);
  CHECK_THROWS_AS(o.is_consistent(formula::atom("r", {0})), error);
  CHECK_THROWS_AS(finite_model_oracle(ord_eq, {}), error);
}

TEST_CASE("single-model oracle equivalence = equal truth tables (depth <= 2, base 2)") {
  finite_model m("m", ord_eq, 2);
  m.add("lt", {0, 1});
  m.add("lt", {1, 1});
  finite_model_oracle o(ord_eq, {m});
  auto bm = as_brute(m);
  formula_enumerator en(ord_eq, 2);
  auto all = en.up_to_depth(2);
  std::map<std::vector<bool>, formula> rep;
  std::size_t checked = 0;
  for (const auto& f : all) {
    auto t = table(f, bm);
    auto [it, fresh] = rep.emplace(t, f);
    if (!fresh) REQUIRE(o.entails_equal(f, it->second));
    ++checked;
  }
  // one representative per table: pairwise inequivalent
  std::vector<formula> reps;
  for (const auto& [t, f] : rep) reps.push_back(f);
  for (std::size_t a = 0; a < reps.size(); ++a)
    for (std::size_t b = a + 1; b < reps.size(); ++b) REQUIRE_FALSE(o.entails_equal(reps[a], reps[b]));
  CHECK(checked == all.size());
  CHECK(reps.size() <= 16);
}

TEST_CASE("weak orderings: Fubini numbers") {
  const std::size_t fubini[] = {1, 1, 3, 13, 75, 541, 4683};
  for (unsigned n = 0; n <= 6; ++n) {
    std::vector<var_index> vars;
    for (unsigned k = 0; k < n; ++k) vars.push_back(2 * k + 1);
    std::size_t count = 0;
    std::set<std::vector<int>> seen;
    for_each_order_type(vars, [&](const order_type& o) {
      ++count;
      seen.insert(o.rank);
      return false;
    });
    CHECK(count == fubini[n]);
    CHECK(seen.size() == fubini[n]);
  }
}

TEST_CASE("dlo_qe examples") {
  CHECK(dlo_qe(P("E v1 (lt(v0,v1))")).is_true());
  formula refl = dlo_qe(P("E v0 (lt(v0,v0))"));
  CHECK(refl.is_false());
  // cross-check on {0..5} with the usual order
  brute::model q6;
  q6.size = 6;
  for (unsigned a = 0; a < 6; ++a)
    for (unsigned b = a + 1; b < 6; ++b) q6.rel["lt"].insert({a, b});
  CHECK_FALSE(brute::eval(P("E v0 (lt(v0,v0))"), q6, {}));

  formula qf = P("lt(v0,v1) & ~v1 = v2");
  CHECK(dlo_qe(qf) == qf);
  CHECK(dlo_qe(P("E v1 (lt(v0,v1) & lt(v1,v2))")) == P("lt(v0,v2)"));
  CHECK(dlo_qe(P("E v1 (v1 = v0 & lt(v1,v2))")) == P("lt(v0,v2)"));
  CHECK_THROWS_AS(dlo_qe(formula::atom("r", {0})), error);
  CHECK_THROWS_AS(dlo_qe(formula::atom("lt", {0, 1, 2})), error);
}

TEST_CASE("dlo_qe agrees with evaluation in Q on random formulas") {
  std::mt19937 rng(2024);
  for (int k = 0; k < 1500; ++k) {
    formula f = brute::random_formula(rng, 4, 4, true);
    formula g = dlo_qe(f);
    bool qfree = true;
    std::vector<formula> stack{g};
    while (!stack.empty()) {
      formula h = stack.back();
      stack.pop_back();
      if (h.kind() == formula_kind::exists) qfree = false;
      if (h.kind() == formula_kind::negation) stack.push_back(h.child());
      if (h.kind() == formula_kind::conjunction || h.kind() == formula_kind::disjunction) {
        stack.push_back(h.lhs());
        stack.push_back(h.rhs());
      }
    }
    REQUIRE(qfree);
    for (auto v : g.free_vars()) REQUIRE(f.has_free(v));
    INFO(to_string(f) << "  ->  " << to_string(g));
    REQUIRE(brute::equivalent_q(f, g));
  }
}

TEST_CASE("dlo oracle: consistency and equivalence match Q") {
  dlo_oracle o;
  CHECK(o.complete());
  CHECK(o.kind() == "dlo-qe");
  CHECK_FALSE(o.entails_equal(P("lt(v0,v1)"), P("lt(v1,v0)")));
  CHECK_FALSE(o.is_consistent(P("lt(v0,v1) & lt(v1,v0)")));
  CHECK(o.entails_equal(P("lt(v0,v1)"), P("lt(v0,v1)")));
  std::mt19937 rng(99);
  for (int k = 0; k < 1000; ++k) {
    formula f = brute::random_formula(rng, 4, 4, true);
    formula g = brute::random_formula(rng, 2, 3, true);
    REQUIRE(o.is_consistent(f) == brute::sat_q(f));
    REQUIRE(o.is_consistent(f) == !o.entails_equal(f, formula::bottom()));
    REQUIRE(o.entails_equal(f, g) == brute::equivalent_q(f, g));
  }
}

TEST_CASE("dlo oracle proves the DLO axioms") {
  dlo_oracle o;
  auto theorem = [&](const std::string& s) { return o.entails_equal(P(s), formula::top()); };
  CHECK(theorem("~lt(v0,v0)"));
  CHECK(theorem("~(lt(v0,v1) & lt(v1,v2)) | lt(v0,v2)"));
  CHECK(theorem("lt(v0,v1) | v0 = v1 | lt(v1,v0)"));
  CHECK(theorem("~lt(v0,v1) | E v2 (lt(v0,v2) & lt(v2,v1))"));
  CHECK(theorem("E v1 lt(v0,v1)"));
  CHECK(theorem("E v1 lt(v1,v0)"));
  CHECK(theorem("A v0 A v1 A v2 (~(lt(v0,v1) & lt(v1,v2)) | lt(v0,v2))"));
  CHECK_FALSE(o.is_consistent(P("E v0 A v1 ~lt(v0,v1)")));
  CHECK_FALSE(o.is_consistent(P("E v0 A v1 ~lt(v1,v0)")));
}

TEST_CASE("congruence of oracle equivalence") {
  dlo_oracle o;
  std::mt19937 rng(5);
  for (int k = 0; k < 300; ++k) {
    formula f = brute::random_formula(rng, 3, 3, true);
    formula g = dlo_qe(neg(neg(f)));
    REQUIRE(o.entails_equal(f, g));
    formula h = brute::random_formula(rng, 2, 3, true);
    var_index v = brute::pick(rng, 3);
    REQUIRE(o.entails_equal(neg(f), neg(g)));
    REQUIRE(o.entails_equal(conj(f, h), conj(g, h)));
    REQUIRE(o.entails_equal(exists(v, f), exists(v, g)));
  }
  // finite models: collect equivalent pairs from a random pool
  finite_model_oracle fm(ord_eq, {chain(2), chain(3)});
  std::vector<formula> pool;
  for (int k = 0; k < 150; ++k) pool.push_back(brute::random_formula(rng, 2, 2, true));
  int pairs = 0;
  for (std::size_t a = 0; a < pool.size(); ++a)
    for (std::size_t b = a + 1; b < pool.size(); ++b) {
      if (!fm.entails_equal(pool[a], pool[b])) continue;
      ++pairs;
      formula h = pool[(a + b) % pool.size()];
      REQUIRE(fm.entails_equal(neg(pool[a]), neg(pool[b])));
      REQUIRE(fm.entails_equal(conj(pool[a], h), conj(pool[b], h)));
      REQUIRE(fm.entails_equal(exists(0, pool[a]), exists(0, pool[b])));
      REQUIRE(fm.entails_equal(exists(1, pool[a]), exists(1, pool[b])));
    }
  CHECK(pairs > 10);
}

TEST_CASE("external oracle protocol") {
  external_oracle yes(dlo_signature(), "while read l; do echo YES; done");
  CHECK(yes.is_consistent(P("lt(v0,v1)")));
  CHECK(yes.entails_equal(P("lt(v0,v1)"), P("lt(v1,v0)")));
  CHECK(yes.kind() == "external");

  external_oracle err(dlo_signature(), "while read l; do echo 'ERR nope'; done");
  CHECK_THROWS_AS(err.is_consistent(P("lt(v0,v1)")), error);
  external_oracle dead(dlo_signature(), "exit 0");
  CHECK_THROWS_AS(dead.is_consistent(P("lt(v0,v1)")), error);

  // the server side, answered by the DLO oracle
  dlo_oracle d;
  std::istringstream in("SAT lt(v0,v1) & lt(v1,v0)\nEQ E v1 lt(v0,v1) ;; true\nSAT gt(v0)\nBOGUS\n");
  std::ostringstream out;
  serve_oracle(d, in, out);
  std::istringstream replies(out.str());
  std::string a, b, c, e;
  std::getline(replies, a);
  std::getline(replies, b);
  std::getline(replies, c);
  std::getline(replies, e);
  CHECK(a == "NO");
  CHECK(b == "YES");
  CHECK(c.rfind("ERR", 0) == 0);
  CHECK(e.rfind("ERR", 0) == 0);
}

TEST_CASE("dlo consistency: literal search agrees with weak-ordering search") {
  std::mt19937 rng(4242);
  for (int k = 0; k < 1500; ++k) {
    std::vector<formula> qf;
    int count = 1 + static_cast<int>(brute::pick(rng, 5));
    for (int j = 0; j < count; ++j) qf.push_back(dlo_qe(brute::random_formula(rng, 3, 6, true)));
    bool by_orders = satisfying_order(qf).has_value();
    REQUIRE(detail::order_formulas_consistent(qf) == by_orders);
  }
}

TEST_CASE("dlo oracle on long chains") {
  dlo_oracle o;
  const var_index n = 14;
  std::vector<formula> chainf;
  for (var_index i = 0; i < n; ++i)
    for (var_index j = i + 1; j < n; ++j) chainf.push_back(neg(formula::equal(i, j)));
  for (var_index i = 0; i + 1 < n; ++i) chainf.push_back(formula::atom("lt", {i, i + 1}));
  CHECK(o.is_consistent_all(chainf));
  auto with = [&](formula f) {
    auto c = chainf;
    c.push_back(std::move(f));
    return o.is_consistent_all(c);
  };
  CHECK_FALSE(with(formula::atom("lt", {n - 1, 0})));
  CHECK_FALSE(with(formula::equal(3, 9)));
  CHECK(with(P("E v20 (lt(v3,v20) & lt(v20,v4))")));
  CHECK_FALSE(with(P("~E v20 (lt(v3,v20) & lt(v20,v4))")));
  CHECK(with(P("lt(v20,v0) | lt(v13,v20)")));
  CHECK_FALSE(with(P("(lt(v5,v2) | v1=v7) & ~lt(v30,v30)")));
}
