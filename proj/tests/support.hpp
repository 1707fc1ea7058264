#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gdf/bracket.hpp"
#include "gdf/families.hpp"
#include "gdf/formula_io.hpp"
#include "gdf/rng.hpp"

#ifndef GDF_DATA_DIR
#define GDF_DATA_DIR "data"
#endif

namespace gdf::testing {

inline std::vector<Formula> shipped(const std::string& stem) {
  return load_formula_file(std::filesystem::path(GDF_DATA_DIR) / "formulas" /
                           (stem + ".formula"));
}

inline Formula shipped_one(const std::string& stem, const std::string& name) {
  for (auto& f : shipped(stem)) {
    if (f.name == name) return f;
  }
  throw std::runtime_error("no formula " + name + " in " + stem);
}

// Arbitrary (usually virtual) diagram: endpoints shuffled over both circles.
inline GaussDiagram random_diagram(Rng& rng, std::size_t max_arrows) {
  const int n = static_cast<int>(rng.below(max_arrows + 1));
  std::vector<Token> slots;
  std::map<int, Sign> signs;
  for (int id = 1; id <= n; ++id) {
    slots.push_back({id, End::tail});
    slots.push_back({id, End::head});
    signs[id] = rng.coin() ? Sign::plus : Sign::minus;
  }
  for (std::size_t i = slots.size(); i > 1; --i) {
    std::swap(slots[i - 1], slots[rng.below(i)]);
  }
  const std::size_t cut = rng.below(slots.size() + 1);
  CircleSeq a(slots.begin(), slots.begin() + static_cast<std::ptrdiff_t>(cut));
  CircleSeq b(slots.begin() + static_cast<std::ptrdiff_t>(cut), slots.end());
  return GaussDiagram({a, b}, signs);
}

// Random two-component braid or plat closure, so always classical.
inline GaussDiagram random_classical(Rng& rng, std::size_t max_letters = 10) {
  for (;;) {
    const bool plat = rng.coin();
    const int strands = plat ? 4 + 2 * static_cast<int>(rng.below(2))
                             : 2 + static_cast<int>(rng.below(3));
    const std::size_t len = 1 + rng.below(max_letters);
    std::vector<int> word;
    for (std::size_t i = 0; i < len; ++i) {
      const int g = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(strands - 1)));
      word.push_back(rng.coin() ? g : -g);
    }
    try {
      return plat ? plat_closure(strands, word) : braid_closure(strands, word);
    } catch (const std::invalid_argument&) {
      // wrong number of components; draw again
    }
  }
}

}  // namespace gdf::testing
