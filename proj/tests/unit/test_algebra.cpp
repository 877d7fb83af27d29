#include <catch_amalgamated.hpp>

#include <memory>
#include <random>

#include "checks/ca_axioms.hpp"
#include "henkin/denotation.hpp"
#include "henkin/dlo.hpp"
#include "henkin/enumerate.hpp"
#include "henkin/formula_algebra.hpp"
#include "henkin/set_algebra.hpp"
#include "oracles/cs_brute.hpp"

using namespace henkin;

namespace {

constexpr auto CA = algebra_mode::ca;
constexpr auto QPA = algebra_mode::qpa;

set_element tuples(unsigned base, std::vector<var_index> dims, std::vector<std::vector<unsigned>> rows,
                   algebra_mode mode = CA) {
  return set_element::from_predicate(base, mode, dims, [&](const std::vector<unsigned>& v) {
    return std::find(rows.begin(), rows.end(), v) != rows.end();
  });
}

// the brute-force set of assignments over W = {0..w-1}
brute::cs::set to_brute(const brute::cs& C, const set_element& x) {
  brute::cs::set s(C.n);
  for (std::size_t k = 0; k < C.n; ++k) {
    auto a = C.assignment(k);
    s[k] = x.contains([&](var_index d) { return a.at(d); });
  }
  return s;
}

std::shared_ptr<const dlo_oracle> dlo() { return std::make_shared<dlo_oracle>(); }

}  // namespace

TEST_CASE("boolean operations") {
  auto a = tuples(2, {0, 1}, {{0, 1}});
  CHECK(meet(a, complement(a)).is_zero());
  auto z0 = tuples(2, {0}, {{0}}), z1 = tuples(2, {0}, {{1}});
  auto u = join(z0, z1);
  CHECK(u.is_one());
  CHECK(u.dims().empty());
  CHECK_THROWS_AS(meet(a, set_element::one(3, CA)), error);
  CHECK_THROWS_AS(meet(a, set_element::one(2, QPA)), error);
  CHECK(leq(meet(a, z0), a));

  formula_algebra A(dlo_signature(), dlo(), CA);
  auto x = A.element("lt(v0,v1)"), y = A.element("lt(v1,v0)");
  CHECK(A.is_zero(A.meet(x, y)));
  CHECK(A.meet(x, y).rep().is_false());
  CHECK(A.is_zero(A.meet(x, A.complement(x))));
}

TEST_CASE("cylindrification") {
  auto a = tuples(2, {0, 1}, {{0, 1}});
  auto c = cylindrify(0, a);
  CHECK(c.dims() == std::vector<var_index>{1});
  CHECK(c.tuples() == std::vector<std::vector<unsigned>>{{1}});
  CHECK(cylindrify(0, set_element::zero(2, CA)).is_zero());
  CHECK(cylindrify(0, diagonal(2, CA, 0, 1)).is_one());
  CHECK(cylindrify(5, a) == a);

  formula_algebra A(dlo_signature(), dlo(), CA);
  CHECK(A.is_one(A.cylindrify(1, A.element("lt(v0,v1)"))));
  CHECK(A.is_zero(A.cylindrify(0, A.zero())));
}

TEST_CASE("diagonals") {
  CHECK(diagonal(2, CA, 0, 0).is_one());
  auto d = diagonal(2, CA, 0, 1);
  CHECK(d.tuples() == std::vector<std::vector<unsigned>>{{0, 0}, {1, 1}});
  CHECK_THROWS_AS(diagonal(2, QPA, 0, 1), error);
  // c_1(d_01 & a) is the image of a under s^1_0, base <= 3
  for (unsigned m = 1; m <= 3; ++m) {
    auto A = set_algebra::full(m, CA, 2, 1u << 10);
    for (const auto& x : A.elements())
      REQUIRE(cylindrify(1, meet(diagonal(m, CA, 0, 1), x)) == substitute(transformation::replacement(1, 0), x));
  }
  formula_algebra Q(signature("q", {{"r", 2}}, false), std::make_shared<finite_model_oracle>(
      signature("q", {{"r", 2}}, false), std::vector<finite_model>{finite_model("m", signature("q", {{"r", 2}}, false), 2)}), QPA);
  CHECK_THROWS_AS(Q.diagonal(0, 1), error);
}

TEST_CASE("substitution") {
  auto a = tuples(2, {0, 1}, {{0, 1}});
  CHECK(substitute(transformation(), a) == a);
  CHECK(substitute(transformation::transposition(0, 1), a).tuples() == std::vector<std::vector<unsigned>>{{1, 0}});
  // s_[0|1] a = c_0(d_01 & a): all a with dims in {0,1,2}, base <= 2; base 3 with dims in {0,1}
  for (auto [m, n] : {std::pair<unsigned, var_index>{1, 3}, {2, 3}, {3, 2}}) {
    auto A = set_algebra::full(m, CA, n, 1u << 10);
    for (const auto& x : A.elements())
      REQUIRE(substitute(transformation::replacement(0, 1), x) == cylindrify(0, meet(diagonal(m, CA, 0, 1), x)));
  }
  std::mt19937_64 rng(1);
  for (int k = 0; k < 3000; ++k) {
    auto x = checks::random_element(3, 3, rng);
    REQUIRE(substitute(transformation::replacement(0, 1), x) == cylindrify(0, meet(diagonal(3, CA, 0, 1), x)));
  }
  // substitution is a Boolean endomorphism
  auto A = set_algebra::full(2, QPA, 2);
  auto t = transformation::from_pairs({{0, 1}, {1, 3}});
  for (const auto& x : A.elements())
    for (const auto& y : A.elements()) {
      REQUIRE(substitute(t, meet(x, y)) == meet(substitute(t, x), substitute(t, y)));
      REQUIRE(substitute(t, complement(x)) == complement(substitute(t, x)));
    }
}

TEST_CASE("dimension sets") {
  CHECK(dimension_set(diagonal(2, CA, 0, 0)).empty());
  CHECK(dimension_set(diagonal(2, CA, 0, 2)) == var_set{0, 2});
  formula_algebra A(dlo_signature(), dlo(), CA);
  CHECK(A.dimension_set(A.element("lt(v0,v0)")).empty());
  CHECK(A.dimension_set(A.element(formula::atom("lt", {0, 0}))).empty());
  CHECK(A.dimension_set(A.element("lt(v0,v1)")) == var_set{0, 1});
  // free but semantically idle
  CHECK(A.dimension_set(A.element("lt(v0,v1) | ~lt(v0,v1) & lt(v2,v3)")) == var_set{0, 1, 2, 3});
  CHECK(A.dimension_set(A.element("lt(v0,v1) | ~lt(v0,v1)")).empty());
  CHECK(A.dimension_set(A.element("E v1 (lt(v0,v1) & v2 = v2)")).empty());
  CHECK(A.in_neat_reduct(A.element("lt(v0,v1)"), 2));
  CHECK_FALSE(A.in_neat_reduct(A.element("lt(v0,v2)"), 2));
}

TEST_CASE("neat reducts") {
  auto A = set_algebra::full(2, CA, 2);
  auto R0 = set_algebra::neat_reduct(A, 0);
  REQUIRE(R0.size() == 2);
  CHECK(R0.contains(A.zero()));
  CHECK(R0.contains(A.one()));
  auto R1 = set_algebra::neat_reduct(A, 1);
  CHECK(R1.size() == 4);
  auto R2 = set_algebra::neat_reduct(A, 2);
  CHECK(R2.size() == A.size());
  for (const auto& R : {R0, R1, R2}) {
    CHECK(R.contains(A.zero()));
    CHECK(R.contains(A.one()));
    CHECK(R.closed());
  }
  // Nr_2 of the three-dimensional algebra
  auto B = set_algebra::full(2, CA, 3);
  auto N = set_algebra::neat_reduct(B, 2);
  CHECK(N.size() == 16);
  for (const auto& x : N.elements()) {
    CHECK(N.contains(cylindrify(0, x)));
    CHECK(N.contains(cylindrify(1, x)));
  }
  CHECK(N.closed());
}

TEST_CASE("formula algebra") {
  formula_algebra A(dlo_signature(), dlo(), CA);
  CHECK(A.is_one(A.element("true")));
  CHECK(A.is_zero(A.element("false")));
  CHECK(A.element("lt(v0,v1) | lt(v1,v0) | v0 = v1").rep().is_true());
  CHECK(A.equal(A.element("lt(v0,v1) & lt(v1,v2)"), A.element("lt(v1,v2) & lt(v0,v1)")));
  CHECK(A.equal(A.element("~~lt(v0,v1)"), A.element("lt(v0,v1)")));
  CHECK_FALSE(A.equal(A.element("lt(v0,v1)"), A.element("lt(v1,v0)")));
  CHECK(A.leq(A.element("lt(v0,v1) & lt(v1,v2)"), A.element("lt(v0,v2)")));
  CHECK(A.equal(A.substitute(transformation::transposition(0, 1), A.element("lt(v0,v1)")), A.element("lt(v1,v0)")));

  formula_algebra B(dlo_signature(), dlo(), CA);
  CHECK_THROWS_AS(A.meet(A.one(), B.one()), error);
  CHECK_THROWS_AS(formula_algebra(dlo_signature(), dlo(), QPA), error);
  const signature other("o", {{"r", 1}}, true);
  CHECK_THROWS_AS(formula_algebra(other, dlo(), CA), error);
}

TEST_CASE("extensional operations agree with the textbook set algebra") {
  for (auto [m, n] : {std::pair<unsigned, var_index>{2, 3}, {3, 2}}) {
    brute::cs C(m, n);
    auto A = set_algebra::full(m, CA, n, 1u << 10);
    REQUIRE(A.size() == (std::size_t{1} << C.n));
    for (const auto& x : A.elements()) {
      auto bx = to_brute(C, x);
      REQUIRE(to_brute(C, complement(x)) == C.complement(bx));
      auto delta = C.delta(bx);
      REQUIRE(std::vector<var_index>(delta.begin(), delta.end()) == x.dims());
      for (var_index i = 0; i < n; ++i) {
        REQUIRE(to_brute(C, cylindrify(i, x)) == C.cyl(i, bx));
        for (var_index j = 0; j < n; ++j) {
          REQUIRE(to_brute(C, diagonal(m, CA, i, j)) == C.diag(i, j));
          auto r = transformation::replacement(i, j), s = transformation::transposition(i, j);
          REQUIRE(to_brute(C, substitute(r, x)) == C.subst(r, bx));
          REQUIRE(to_brute(C, substitute(s, x)) == C.subst(s, bx));
        }
      }
    }
    std::mt19937_64 rng(m);
    for (int k = 0; k < 2000; ++k) {
      const auto& x = A.element(rng() % A.size());
      const auto& y = A.element(rng() % A.size());
      REQUIRE(to_brute(C, meet(x, y)) == C.meet(to_brute(C, x), to_brute(C, y)));
      REQUIRE(to_brute(C, join(x, y)) == C.join(to_brute(C, x), to_brute(C, y)));
    }
  }
}

TEST_CASE("CA axioms, exhaustive on small full algebras") {
  checks::axiom_tally t;
  checks::exhaustive(1, 3, t);
  checks::exhaustive(2, 2, t);
  checks::exhaustive(3, 1, t);
  INFO(t.first_failure);
  CHECK(t.failures == 0);
  CHECK(t.checks > 2000);
}

TEST_CASE("QPA substitution laws") {
  std::mt19937_64 rng(8);
  std::vector<transformation> ts;
  for (var_index i = 0; i < 3; ++i)
    for (var_index j = 0; j < 3; ++j) {
      ts.push_back(transformation::replacement(i, j));
      ts.push_back(transformation::transposition(i, j));
    }
  for (int k = 0; k < 2000; ++k) {
    auto x = checks::random_element(rng() % 2 + 2, 3, rng);
    const auto& a = ts[rng() % ts.size()];
    const auto& b = ts[rng() % ts.size()];
    // s_a s_b = s_{a∘b}
    REQUIRE(substitute(a, substitute(b, x)) == substitute(compose(a, b), x));
    REQUIRE(substitute(b, substitute(a, x)) == substitute(compose(b, a), x));
  }
}

TEST_CASE("local finiteness") {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 500; ++k) {
    auto x = checks::random_element(2, 3, rng);
    var_set d = dimension_set(x);
    for (var_index i = 0; i < 6; ++i)
      if (!d.count(i)) REQUIRE(cylindrify(i, x) == x);
  }
}

TEST_CASE("formula classes map isomorphically onto the set algebra of one model") {
  const signature sig("g", {{"lt", 2}}, true);
  finite_model m("m", sig, 2);
  m.add("lt", {0, 1});
  m.add("lt", {1, 1});
  auto o = std::make_shared<finite_model_oracle>(sig, std::vector<finite_model>{m});
  formula_algebra A(sig, o, CA);
  auto generated = set_algebra::generated(2, CA, 2, {denotation(m, formula::atom("lt", {0, 1}))});
  formula_enumerator en(sig, 2);
  auto fs = en.up_to_depth(2);
  std::map<set_element, formula> image;
  for (const auto& f : fs) {
    auto s = denotation(m, f);
    REQUIRE(generated.contains(s));
    auto [it, fresh] = image.emplace(s, f);
    if (!fresh) REQUIRE(A.equal(A.element(f), A.element(it->second)));
  }
  std::vector<formula> reps;
  for (const auto& [s, f] : image) reps.push_back(f);
  for (std::size_t a = 0; a < reps.size(); ++a)
    for (std::size_t b = a + 1; b < reps.size(); ++b) REQUIRE_FALSE(A.equal(A.element(reps[a]), A.element(reps[b])));
  // the map commutes with the operations
  std::mt19937 rng(6);
  for (int k = 0; k < 2000; ++k) {
    const auto& f = fs[rng() % fs.size()];
    const auto& g = fs[rng() % fs.size()];
    REQUIRE(denotation(m, conj(f, g)) == meet(denotation(m, f), denotation(m, g)));
    REQUIRE(denotation(m, neg(f)) == complement(denotation(m, f)));
    REQUIRE(denotation(m, exists(0, f)) == cylindrify(0, denotation(m, f)));
    REQUIRE(denotation(m, exists(1, f)) == cylindrify(1, denotation(m, f)));
    REQUIRE(denotation(m, henkin::substitute(transformation::transposition(0, 1), f)) ==
            substitute(transformation::transposition(0, 1), denotation(m, f)));
    REQUIRE(denotation(m, henkin::substitute(transformation::replacement(0, 1), f)) ==
            substitute(transformation::replacement(0, 1), denotation(m, f)));
  }
  CHECK(denotation(m, formula::equal(0, 1)) == diagonal(2, CA, 0, 1));
  CHECK(image.size() == generated.size());
}

TEST_CASE("weak elements") {
  auto t = tuples(4, {0, 1}, {{0, 1}, {2, 3}});
  weak_element w(t, 4);
  CHECK(w.member(transformation::from_pairs({{0, 2}, {1, 3}})));
  CHECK_FALSE(w.member(transformation::replacement(1, 0)));
  CHECK(w.member(transformation()));  // identity: (0,1)
  CHECK_THROWS_AS(w.member(transformation::replacement(1, 7)), error);
  CHECK_THROWS_AS(weak_element(t, 5), error);
}
