#include "gdf/bracket.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "subset_keyer.hpp"

namespace gdf {

std::size_t Formula::max_arity() const noexcept {
  std::size_t k = 0;
  for (const auto& t : terms) k = std::max(k, t.pattern.arity());
  return k;
}

void validate_pattern(const Pattern& p, const BracketConfig& cfg) {
  if (p.arity() < 1) {
    throw std::invalid_argument("pattern '" + p.name + "' has no arrows");
  }
  if (p.arity() > cfg.max_arity) {
    throw std::invalid_argument("pattern '" + p.name + "' has " +
                                std::to_string(p.arity()) +
                                " arrows, above the arity cap of " +
                                std::to_string(cfg.max_arity));
  }
}

void validate_formula(const Formula& f, const BracketConfig& cfg) {
  for (const auto& t : f.terms) {
    validate_pattern(t.pattern, cfg);
    if (t.coefficient == 0) {
      throw std::invalid_argument("formula '" + f.name + "' has a zero coefficient");
    }
  }
}

std::vector<GaussDiagram> expand_wildcards(const GaussDiagram& p) {
  std::vector<int> wild;
  for (const auto& a : p.arrows()) {
    if (a.sign == Sign::wild) wild.push_back(a.id);
  }
  const std::size_t w = wild.size();
  std::vector<GaussDiagram> out;
  out.reserve(std::size_t{1} << w);
  for (std::size_t mask = 0; mask < (std::size_t{1} << w); ++mask) {
    auto signs = p.sign_map();
    for (std::size_t i = 0; i < w; ++i) {
      const bool minus = (mask >> (w - 1 - i)) & 1;
      signs[wild[i]] = minus ? Sign::minus : Sign::plus;
    }
    out.emplace_back(std::array<CircleSeq, kComponents>{p.circle(0), p.circle(1)},
                     signs);
  }
  return out;
}

namespace {

// Calls fn(subset) for every k-subset of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  while (true) {
    fn(std::span<const std::size_t>(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

BracketValue bracket(const GaussDiagram& a, const GaussDiagram& g) {
  if (!a.is_fully_signed()) {
    throw std::invalid_argument("bracket requires a pattern without wildcards");
  }
  const std::size_t k = a.size();
  if (k == 0 || k > g.size()) return 0;
  const CanonicalForm target = canonical_form(a);
  detail::SubsetKeyer keyer(g);
  std::int64_t total = 0;
  for_each_combination(g.size(), k, [&](std::span<const std::size_t> s) {
    if (keyer.key(s) == target) total += keyer.sign(s);
  });
  return total;
}

std::unordered_map<CanonicalForm, mpq_class> formula_vector(const Formula& f) {
  std::unordered_map<CanonicalForm, mpq_class> v;
  for (const auto& t : f.terms) {
    for (const auto& p : expand_wildcards(t.pattern.diagram)) {
      v[canonical_form(p)] += t.coefficient;
    }
  }
  std::erase_if(v, [](const auto& kv) { return kv.second == 0; });
  return v;
}

BracketValue evaluate(const Formula& f, const GaussDiagram& g) {
  // Group the expanded patterns by arity so each subset size is walked once.
  std::vector<std::unordered_map<CanonicalForm, mpq_class>> by_arity;
  for (const auto& t : f.terms) {
    for (const auto& p : expand_wildcards(t.pattern.diagram)) {
      const std::size_t k = p.size();
      if (k == 0) continue;
      if (by_arity.size() <= k) by_arity.resize(k + 1);
      by_arity[k][canonical_form(p)] += t.coefficient;
    }
  }
  detail::SubsetKeyer keyer(g);
  BracketValue result = 0;
  for (std::size_t k = 1; k < by_arity.size(); ++k) {
    const auto& table = by_arity[k];
    if (table.empty()) continue;
    std::unordered_map<CanonicalForm, std::int64_t> counts;
    for_each_combination(g.size(), k, [&](std::span<const std::size_t> s) {
      auto key = keyer.key(s);
      if (table.contains(key)) counts[key] += keyer.sign(s);
    });
    for (const auto& [key, n] : counts) {
      result += table.at(key) * mpq_class(static_cast<long>(n));
    }
  }
  result.canonicalize();
  return result;
}

std::vector<BracketValue> evaluate_all(const std::vector<Formula>& formulas,
                                       const GaussDiagram& g) {
  // key -> (formula index, coefficient) per arity
  using Entry = std::vector<std::pair<std::size_t, mpq_class>>;
  std::vector<std::unordered_map<CanonicalForm, Entry>> by_arity;
  for (std::size_t i = 0; i < formulas.size(); ++i) {
    for (const auto& t : formulas[i].terms) {
      for (const auto& p : expand_wildcards(t.pattern.diagram)) {
        const std::size_t k = p.size();
        if (k == 0) continue;
        if (by_arity.size() <= k) by_arity.resize(k + 1);
        by_arity[k][canonical_form(p)].emplace_back(i, t.coefficient);
      }
    }
  }
  detail::SubsetKeyer keyer(g);
  std::vector<BracketValue> out(formulas.size(), 0);
  for (std::size_t k = 1; k < by_arity.size(); ++k) {
    const auto& table = by_arity[k];
    if (table.empty()) continue;
    std::unordered_map<CanonicalForm, std::int64_t> counts;
    for_each_combination(g.size(), k, [&](std::span<const std::size_t> s) {
      auto key = keyer.key(s);
      if (table.contains(key)) counts[key] += keyer.sign(s);
    });
    for (const auto& [key, n] : counts) {
      for (const auto& [i, c] : table.at(key)) out[i] += c * mpq_class(static_cast<long>(n));
    }
  }
  for (auto& v : out) v.canonicalize();
  return out;
}

Profile subdiagram_profile(const GaussDiagram& g, std::size_t max_arity,
                           const std::vector<int>& touching) {
  detail::SubsetKeyer keyer(g);
  std::vector<bool> touched(g.size(), touching.empty());
  for (int id : touching) {
    if (auto idx = g.index_of(id)) touched[*idx] = true;
  }
  Profile profile;
  for (std::size_t k = 1; k <= max_arity; ++k) {
    for_each_combination(g.size(), k, [&](std::span<const std::size_t> s) {
      if (!std::any_of(s.begin(), s.end(), [&](std::size_t i) { return touched[i]; })) {
        return;
      }
      profile[keyer.key(s)] += keyer.sign(s);
    });
  }
  std::erase_if(profile, [](const auto& kv) { return kv.second == 0; });
  return profile;
}

Formula single_term(std::string name, Pattern p) {
  Formula f;
  f.name = std::move(name);
  f.terms.push_back(Term{1, std::move(p)});
  return f;
}

std::string to_string(const BracketValue& v) {
  mpq_class c = v;
  c.canonicalize();
  return c.get_str();
}

}  // namespace gdf
