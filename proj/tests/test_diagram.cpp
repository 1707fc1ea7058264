#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gdf/diagram.hpp"
#include "support.hpp"

using namespace gdf;

TEST_CASE("parse and serialize round trip") {
  const GaussDiagram d = parse_diagram("comp1: T1 H2 T3\ncomp2: H1 T2 H3\nsigns: 1:+ 2:- 3:+\n");
  CHECK(d.size() == 3);
  CHECK(d.arrow(2).sign == Sign::minus);
  CHECK(d.arrow(1).tail.component == 0);
  CHECK(d.arrow(1).head.component == 1);
  const std::string s = serialize(d);
  CHECK(serialize(parse_diagram(s)) == s);
}

TEST_CASE("canonical form ignores rotation and labels") {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const GaussDiagram d = testing::random_diagram(rng, 6);
    const std::string key = canonical_form(d);
    for (int c = 0; c < 2; ++c) {
      if (d.circle(c).empty()) continue;
      const GaussDiagram r = rotate(d, c, rng.below(d.circle(c).size()));
      CHECK(canonical_form(r) == key);
      CHECK(isomorphic(r, d));
    }
    CHECK(canonical_form(renumber(d)) == key);
  }
}

TEST_CASE("circle order matters") {
  const GaussDiagram a = parse_diagram("comp1: T1\ncomp2: H1\nsigns: 1:+\n");
  const GaussDiagram b = swap_components(a);
  CHECK_FALSE(isomorphic(a, b));
  CHECK(isomorphic(swap_components(b), a));
}

TEST_CASE("crossing switch reverses and negates") {
  const GaussDiagram d = parse_diagram("comp1: T1 H2\ncomp2: H1 T2\nsigns: 1:+ 2:+\n");
  const GaussDiagram s = switch_crossing(d, 1);
  CHECK(s.arrow(1).sign == Sign::minus);
  CHECK(s.arrow(1).tail.component == 1);
  CHECK(serialize(switch_crossing(s, 1)) == serialize(d));
}

TEST_CASE("delete and restrict are complementary") {
  const GaussDiagram d = parse_diagram("comp1: T1 H2 T3\ncomp2: H1 T2 H3\nsigns: 1:+ 2:- 3:+\n");
  const std::vector<int> one{2};
  const std::vector<int> rest{1, 3};
  CHECK(isomorphic(delete_arrows(d, one), restrict_to(d, rest)));
  CHECK(restrict_to(d, one).size() == 1);
}

TEST_CASE("malformed documents raise positioned errors") {
  CHECK_THROWS_AS(parse_diagram("comp1: T1\ncomp2:\nsigns: 1:+\n"), DiagramError);
  CHECK_THROWS_AS(parse_diagram("comp1: T1 H1\ncomp2:\nsigns: 1:?\n"), DiagramError);
  CHECK_NOTHROW(parse_diagram("comp1: T1 H1\ncomp2:\nsigns: 1:?\n", true));
  try {
    parse_diagram("comp1: T1 X1\ncomp2: H1\nsigns: 1:+\n");
    FAIL("expected an error");
  } catch (const DiagramError& e) {
    CHECK(e.line() == 1);
  }
}
