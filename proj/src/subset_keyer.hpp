#pragma once

#include <array>
#include <span>
#include <vector>

#include "gdf/diagram.hpp"

namespace gdf::detail {

// Computes canonical keys of sub-diagrams of a fixed diagram, selected by
// arrow index, without materializing GaussDiagram values.
class SubsetKeyer {
 public:
  explicit SubsetKeyer(const GaussDiagram& g) : local_(g.size(), -1) {
    signs_.reserve(g.size());
    for (const auto& a : g.arrows()) signs_.push_back(a.sign);
    for (int c = 0; c < kComponents; ++c) {
      for (const auto& t : g.circle(c)) {
        slots_[c].push_back({static_cast<std::uint16_t>(*g.index_of(t.id)), t.end});
      }
    }
  }

  CanonicalForm key(std::span<const std::size_t> subset) {
    for (std::size_t i = 0; i < subset.size(); ++i) {
      local_[subset[i]] = static_cast<int>(i);
    }
    sub_signs_.resize(subset.size());
    for (std::size_t i = 0; i < subset.size(); ++i) sub_signs_[i] = signs_[subset[i]];
    for (int c = 0; c < kComponents; ++c) {
      sub_[c].clear();
      for (const auto& t : slots_[c]) {
        const int l = local_[t.label];
        if (l >= 0) sub_[c].push_back({static_cast<std::uint16_t>(l), t.end});
      }
    }
    for (std::size_t i : subset) local_[i] = -1;
    return canonical_key(sub_[0], sub_[1], sub_signs_);
  }

  int sign(std::span<const std::size_t> subset) const {
    int s = 1;
    for (std::size_t i : subset) s *= to_int(signs_[i]);
    return s;
  }

 private:
  std::array<std::vector<LocalToken>, kComponents> slots_;
  std::vector<Sign> signs_;
  std::vector<int> local_;
  std::array<std::vector<LocalToken>, kComponents> sub_;
  std::vector<Sign> sub_signs_;
};

}  // namespace gdf::detail
