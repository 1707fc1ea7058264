#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gdf/bracket.hpp"
#include "gdf/lab.hpp"
#include "support.hpp"

using namespace gdf;

namespace {

Pattern pat(const std::string& text) { return Pattern{"p", parse_diagram(text, true)}; }

}  // namespace

TEST_CASE("wildcards expand in documented order") {
  const auto v = expand_wildcards(parse_diagram("comp1: T1 T2\ncomp2: H1 H2\nsigns: 1:? 2:?\n", true));
  REQUIRE(v.size() == 4);
  CHECK(v[0].arrow(1).sign == Sign::plus);
  CHECK(v[0].arrow(2).sign == Sign::plus);
  CHECK(v[1].arrow(2).sign == Sign::minus);
  CHECK(v[2].arrow(1).sign == Sign::minus);
  CHECK(v[3].arrow(2).sign == Sign::minus);
}

TEST_CASE("linking number of Hopf diagrams") {
  const auto lk = testing::shipped("lk");
  for (Sign a : {Sign::plus, Sign::minus}) {
    for (Sign b : {Sign::plus, Sign::minus}) {
      const GaussDiagram h = make_hopf(a, b);
      // Hand count: each inter-component crossing contributes its sign once.
      const int expect = (to_int(a) + to_int(b)) / 2;
      const auto v = evaluate_all(lk, h);
      CHECK(v[0] == expect);
      CHECK(v[1] == expect);
    }
  }
}

TEST_CASE("bracket counts sign products") {
  // The two-arrow shape is symmetric, so the +- and -+ expansions of the
  // wildcard pattern both match the single (+,-) sub-diagram.
  const GaussDiagram g = parse_diagram("comp1: T1 T2\ncomp2: H1 H2\nsigns: 1:+ 2:-\n");
  const Formula f = single_term("f", pat("comp1: T1 T2\ncomp2: H1 H2\nsigns: 1:? 2:?\n"));
  CHECK(evaluate(f, g) == -2);
  CHECK(evaluate(f, g.with_sign(2, Sign::plus)) == 1);
  const Formula fixed = single_term("g", pat("comp1: T1 T2\ncomp2: H1 H2\nsigns: 1:+ 2:+\n"));
  CHECK(evaluate(fixed, g) == 0);
  CHECK(evaluate(fixed, g.with_sign(2, Sign::plus)) == 1);
}

TEST_CASE("evaluate agrees with the brute-force oracle") {
  std::vector<Formula> formulas;
  for (const char* stem : {"theorem1_all", "theorem2_all", "triple_sum", "lk"}) {
    for (auto& f : testing::shipped(stem)) formulas.push_back(f);
  }
  Rng rng(17);
  for (int i = 0; i < 150; ++i) {
    const GaussDiagram d = testing::random_diagram(rng, 7);
    const auto all = evaluate_all(formulas, d);
    for (std::size_t k = 0; k < formulas.size(); ++k) {
      const BracketValue e = evaluate(formulas[k], d);
      CHECK(e == brute_force_oracle(formulas[k], d));
      CHECK(all[k] == e);
    }
  }
}

TEST_CASE("rational coefficients") {
  Formula f = single_term("third", pat("comp1: T1\ncomp2: H1\nsigns: 1:?\n"));
  f.terms[0].coefficient = mpq_class(1, 3);
  CHECK(evaluate(f, make_hopf(Sign::plus, Sign::plus)) == mpq_class(1, 3));
  CHECK(to_string(mpq_class(-2, 6)) == "-1/3");
}

TEST_CASE("formula validation") {
  Formula zero = single_term("z", pat("comp1: T1\ncomp2: H1\nsigns: 1:+\n"));
  zero.terms[0].coefficient = 0;
  CHECK_THROWS_AS(validate_formula(zero), std::invalid_argument);
  const Pattern five = pat("comp1: T1 T2 T3 T4 T5\ncomp2: H1 H2 H3 H4 H5\nsigns: 1:+ 2:+ 3:+ 4:+ 5:+\n");
  CHECK_THROWS_AS(validate_pattern(five), std::invalid_argument);
  CHECK_NOTHROW(validate_pattern(five, BracketConfig{5}));
  const GaussDiagram big = make_L_mn(7, 7);
  CHECK_THROWS(brute_force_oracle(testing::shipped_one("lk", "lk12"), big));
}

TEST_CASE("subdiagram profile matches per-pattern brackets") {
  const PatternBasis basis = enumerate_patterns(2);
  Rng rng(3);
  for (int i = 0; i < 30; ++i) {
    const GaussDiagram d = testing::random_diagram(rng, 6);
    const Profile p = subdiagram_profile(d, 2);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const auto it = p.find(basis.keys[k]);
      const std::int64_t v = it == p.end() ? 0 : it->second;
      CHECK(bracket(basis.patterns[k], d) == v);
    }
  }
}
