#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "gdf/diagram.hpp"

namespace gdf {

using BracketValue = mpq_class;

struct BracketConfig {
  std::size_t max_arity = 4;
};

// A small arrow diagram used as a template; signs may be Sign::wild.
struct Pattern {
  std::string name;
  GaussDiagram diagram;

  std::size_t arity() const noexcept { return diagram.size(); }
};

struct Term {
  mpq_class coefficient;
  Pattern pattern;
};

struct Formula {
  std::string name;
  std::vector<Term> terms;

  std::size_t max_arity() const noexcept;
};

// Throws std::invalid_argument unless 1 <= arity <= cfg.max_arity.
void validate_pattern(const Pattern& p, const BracketConfig& cfg = {});
// Also rejects zero coefficients.
void validate_formula(const Formula& f, const BracketConfig& cfg = {});

// All 2^w sign assignments of the wildcard arrows.  The lowest-id wildcard
// varies slowest and + precedes -, so two wildcards give ++, +-, -+, --.
std::vector<GaussDiagram> expand_wildcards(const GaussDiagram& p);

// Signed count of sub-diagrams of `g` isomorphic to the fully signed `a`.
BracketValue bracket(const GaussDiagram& a, const GaussDiagram& g);

BracketValue evaluate(const Formula& f, const GaussDiagram& g);
// Same values as calling evaluate per formula, with one pass over subsets.
std::vector<BracketValue> evaluate_all(const std::vector<Formula>& formulas,
                                       const GaussDiagram& g);

// Independent oracle: walks all 2^n arrow subsets of `g` and matches by
// explicit rotation search.  Requires g.size() <= kOracleMaxArrows.
constexpr std::size_t kOracleMaxArrows = 10;
BracketValue brute_force_oracle(const Formula& f, const GaussDiagram& g);

// Coefficients of a formula in the fully signed pattern basis, keyed by
// canonical form.  Wildcards are expanded; zero entries are dropped.
std::unordered_map<CanonicalForm, mpq_class> formula_vector(const Formula& f);

// Signed counts of every sub-diagram with 1..max_arity arrows, keyed by
// canonical form.  With `touching` non-empty, only subsets containing at
// least one of those arrow ids are counted.
using Profile = std::unordered_map<CanonicalForm, std::int64_t>;
Profile subdiagram_profile(const GaussDiagram& g, std::size_t max_arity,
                           const std::vector<int>& touching = {});

// Formula built from a single pattern with coefficient 1.
Formula single_term(std::string name, Pattern p);

std::string to_string(const BracketValue& v);

}  // namespace gdf
