#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gdf/nullspace.hpp"
#include "gdf/rng.hpp"

using namespace gdf;

namespace {

std::vector<SparseRow> random_rows(Rng& rng, std::size_t rows, std::size_t cols, int range) {
  std::vector<SparseRow> out;
  for (std::size_t r = 0; r < rows; ++r) {
    SparseRow row;
    for (std::size_t c = 0; c < cols; ++c) {
      if (rng.below(3) != 0) continue;
      const auto v = static_cast<std::int64_t>(rng.below(2 * range + 1)) - range;
      if (v != 0) row.emplace_back(c, v);
    }
    out.push_back(row);
  }
  return out;
}

}  // namespace

TEST_CASE("hand example") {
  // x0 + x1 = 0, x2 free.
  const std::vector<SparseRow> rows = {{{0, 1}, {1, 1}}};
  const auto ns = nullspace_rational(rows, 3);
  REQUIRE(ns.size() == 2);
  CHECK(ns[0] == RationalVector{-1, 1, 0});
  CHECK(ns[1] == RationalVector{0, 0, 1});
}

TEST_CASE("modular and rational eliminations agree") {
  Rng rng(12);
  for (int t = 0; t < 60; ++t) {
    const std::size_t cols = 1 + rng.below(14);
    const std::size_t nrows = rng.below(18);
    const auto rows = random_rows(rng, nrows, cols, t % 2 ? 3 : 1000000);
    const auto a = nullspace_rational(rows, cols);
    const auto b = nullspace_modular(rows, cols);
    CHECK(a == b);
    for (const auto& v : a) CHECK(annihilates(rows, v));
    CHECK(rank_mod_p(rows, cols) + a.size() == cols);
  }
}

TEST_CASE("annihilates is exact") {
  const std::vector<SparseRow> rows = {{{0, 3}, {1, -1}}};
  CHECK(annihilates(rows, RationalVector{mpq_class(1, 3), 1}));
  CHECK_FALSE(annihilates(rows, RationalVector{mpq_class(1, 3), mpq_class(101, 100)}));
}

TEST_CASE("empty system") {
  const auto ns = nullspace_modular({}, 2);
  REQUIRE(ns.size() == 2);
  CHECK(ns[0] == RationalVector{1, 0});
}
