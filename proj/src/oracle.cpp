// Reference evaluator.  Deliberately shares nothing with the subset keyer or
// canonical forms: it enumerates every arrow subset by bitmask and decides
// (A, z) by trying every rotation pair and building the arrow bijection.

#include <map>
#include <stdexcept>

#include "gdf/bracket.hpp"

namespace gdf {

namespace {

struct Small {
  std::array<std::vector<Token>, kComponents> circles;
  std::map<int, Sign> signs;
};

Small extract(const GaussDiagram& g, unsigned mask) {
  Small z;
  std::map<int, bool> keep;
  unsigned bit = 0;
  for (const auto& a : g.arrows()) {
    keep[a.id] = (mask >> bit) & 1u;
    if (keep[a.id]) z.signs[a.id] = a.sign;
    ++bit;
  }
  for (int c = 0; c < kComponents; ++c) {
    for (const auto& t : g.circle(c)) {
      if (keep[t.id]) z.circles[c].push_back(t);
    }
  }
  return z;
}

bool equal_under(const Small& z, std::size_t r1, std::size_t r2, const Small& a) {
  std::map<int, int> fwd, back;
  const std::size_t rot[kComponents] = {r1, r2};
  for (int c = 0; c < kComponents; ++c) {
    const auto& zc = z.circles[c];
    const auto& ac = a.circles[c];
    const std::size_t n = zc.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Token& zt = zc[(i + rot[c]) % n];
      const Token& at = ac[i];
      if (zt.end != at.end) return false;
      auto f = fwd.find(zt.id);
      auto b = back.find(at.id);
      if (f == fwd.end() && b == back.end()) {
        fwd[zt.id] = at.id;
        back[at.id] = zt.id;
      } else if (f == fwd.end() || b == back.end() || f->second != at.id) {
        return false;
      }
    }
  }
  for (const auto& [zid, aid] : fwd) {
    if (z.signs.at(zid) != a.signs.at(aid)) return false;
  }
  return true;
}

bool matches(const Small& z, const Small& a) {
  for (int c = 0; c < kComponents; ++c) {
    if (z.circles[c].size() != a.circles[c].size()) return false;
  }
  if (z.signs.size() != a.signs.size()) return false;
  const std::size_t n1 = std::max<std::size_t>(z.circles[0].size(), 1);
  const std::size_t n2 = std::max<std::size_t>(z.circles[1].size(), 1);
  for (std::size_t r1 = 0; r1 < n1; ++r1) {
    for (std::size_t r2 = 0; r2 < n2; ++r2) {
      if (equal_under(z, r1, r2, a)) return true;
    }
  }
  return false;
}

}  // namespace

BracketValue brute_force_oracle(const Formula& f, const GaussDiagram& g) {
  if (g.size() > kOracleMaxArrows) {
    throw std::invalid_argument("oracle limited to " +
                                std::to_string(kOracleMaxArrows) + " arrows, got " +
                                std::to_string(g.size()));
  }
  std::vector<Small> subs;
  std::vector<int> sub_sign;
  for (unsigned mask = 0; mask < (1u << g.size()); ++mask) {
    subs.push_back(extract(g, mask));
    int s = 1;
    for (const auto& [id, sign] : subs.back().signs) s *= to_int(sign);
    sub_sign.push_back(s);
  }
  BracketValue total = 0;
  for (const auto& term : f.terms) {
    for (const auto& p : expand_wildcards(term.pattern.diagram)) {
      Small a;
      a.circles = {p.circle(0), p.circle(1)};
      a.signs = p.sign_map();
      long count = 0;
      for (std::size_t i = 0; i < subs.size(); ++i) {
        if (matches(subs[i], a)) count += sub_sign[i];
      }
      total += term.coefficient * count;
    }
  }
  total.canonicalize();
  return total;
}

}  // namespace gdf
