#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "gdf/lab.hpp"
#include "support.hpp"

using namespace gdf;

namespace {

// All labeled diagrams with k arrows (sign +), reduced by canonical form.
std::size_t count_shapes(int k) {
  std::set<std::string> keys;
  std::vector<Token> slots;
  for (int id = 1; id <= k; ++id) {
    slots.push_back({id, End::tail});
    slots.push_back({id, End::head});
  }
  std::sort(slots.begin(), slots.end(), [](const Token& a, const Token& b) {
    return std::pair(a.id, a.end) < std::pair(b.id, b.end);
  });
  std::map<int, Sign> signs;
  for (int id = 1; id <= k; ++id) signs[id] = Sign::plus;
  do {
    for (std::size_t cut = 0; cut <= slots.size(); ++cut) {
      CircleSeq a(slots.begin(), slots.begin() + static_cast<std::ptrdiff_t>(cut));
      CircleSeq b(slots.begin() + static_cast<std::ptrdiff_t>(cut), slots.end());
      keys.insert(canonical_form(GaussDiagram({a, b}, signs)));
    }
  } while (std::next_permutation(slots.begin(), slots.end(), [](const Token& a, const Token& b) {
    return std::pair(a.id, a.end) < std::pair(b.id, b.end);
  }));
  return keys.size();
}

}  // namespace

TEST_CASE("pattern basis sizes") {
  const PatternBasis b1 = enumerate_patterns(1);
  // T1/H1 and H1/T1 across, a kink on either circle; two signs each.
  CHECK(b1.size() == 8);
  // Signs only multiply the shape count when every arrow is distinguishable
  // under automorphisms, so compare the unsigned part at arity 2.
  const PatternBasis b2 = enumerate_patterns(2);
  std::set<std::string> unsigned_shapes;
  for (const auto& p : b2.patterns) {
    if (p.size() != 2) continue;
    GaussDiagram q = p;
    for (const auto& a : p.arrows()) q = q.with_sign(a.id, Sign::plus);
    unsigned_shapes.insert(canonical_form(q));
  }
  CHECK(unsigned_shapes.size() == count_shapes(2));
  for (std::size_t i = 0; i < b2.size(); ++i) CHECK(b2.index.at(b2.keys[i]) == i);
}

TEST_CASE("basis vectors round trip") {
  const PatternBasis b = enumerate_patterns(3);
  for (const char* stem : {"theorem1_all", "theorem2_all", "lk"}) {
    for (const auto& f : testing::shipped(stem)) {
      const auto v = to_basis_vector(b, f);
      REQUIRE(v.has_value());
      const Formula back = from_basis_vector(b, *v, f.name);
      CHECK(formula_vector(back) == formula_vector(f));
    }
  }
}

TEST_CASE("order check") {
  const Formula lk12 = testing::shipped_one("lk", "lk12");
  const GaussDiagram h = make_hopf(Sign::plus, Sign::plus);
  // One switch turns lk 1 into 0.
  CHECK(order_check(lk12, h, {1}) == 1);
  CHECK(order_check(lk12, h, {1, 2}) == 0);
  const Formula f1p = testing::shipped_one("f1p", "f1p");
  const GaussDiagram d = make_L_mn(3, 3);
  std::vector<int> ids;
  for (const auto& a : d.arrows()) ids.push_back(a.id);
  CHECK(order_check(f1p, d, {ids[0], ids[3], ids[5], ids[9]}) == 0);
}

TEST_CASE("constraint rows describe bracket differences") {
  const PatternBasis b = enumerate_patterns(2);
  const GaussDiagram d = make_L_mn(1, 1);
  Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    const auto m = random_move(d, rng);
    REQUIRE(m.has_value());
    const SparseRow row = constraint_row(b, d, *m);
    const GaussDiagram e = apply(d, *m);
    std::vector<std::int64_t> dense(b.size(), 0);
    for (const auto& [c, v] : row) dense[c] = v;
    for (std::size_t c = 0; c < b.size(); ++c) {
      CHECK(dense[c] == bracket(b.patterns[c], d) - bracket(b.patterns[c], e));
    }
  }
}

TEST_CASE("solver at arity one finds the linking numbers") {
  SolveConfig cfg;
  cfg.max_arity = 1;
  const PatternBasis b = enumerate_patterns(1);
  const auto r = run_solver(cfg, b, solver_seeds(1, 4));
  CHECK(r.vectors.size() == 2);
  for (const auto& f : testing::shipped("lk")) CHECK(in_span(r.vectors, *to_basis_vector(b, f)));
  for (const auto& v : r.verification.per_vector) CHECK_FALSE(v.has_value());
}

TEST_CASE("verification catches a non-invariant vector") {
  const PatternBasis b = enumerate_patterns(1);
  RationalVector v(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    const Arrow& a = b.patterns[i].arrows()[0];
    if (a.tail.component == a.head.component && a.sign == Sign::plus) {
      v[i] = 1;
      break;
    }
  }
  std::vector<GaussDiagram> seeds;
  for (const auto& [name, d] : standard_seeds()) seeds.push_back(d);
  const auto res = verify_vectors(b, {v}, seeds, 2, 20, 5);
  REQUIRE(res.per_vector.size() == 1);
  REQUIRE(res.per_vector[0].has_value());
  // The transcript replays to the offending diagram.
  const auto& viol = *res.per_vector[0];
  const auto moves = parse_transcript(viol.transcript);
  const auto path = replay(parse_diagram(viol.seed_diagram), moves);
  CHECK(serialize(path[path.size() - 2]) == serialize(parse_diagram(viol.before)));
}
