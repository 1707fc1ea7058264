#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gdf/bracket.hpp"
#include "gdf/moves.hpp"
#include "gdf/nullspace.hpp"

namespace gdf {

// All pairwise non-isomorphic fixed-sign patterns with 1..max_arity arrows,
// ordered by (arity, canonical form).
struct PatternBasis {
  std::size_t max_arity = 0;
  std::vector<GaussDiagram> patterns;
  std::vector<CanonicalForm> keys;
  std::unordered_map<CanonicalForm, std::size_t> index;

  std::size_t size() const noexcept { return patterns.size(); }
};

PatternBasis enumerate_patterns(std::size_t k, const BracketConfig& cfg = {});

// Coordinates of a formula in the basis; nullopt if a pattern is outside it.
std::optional<RationalVector> to_basis_vector(const PatternBasis& basis,
                                              const Formula& f);

// Formula whose terms are the nonzero entries of `v`.
Formula from_basis_vector(const PatternBasis& basis, const RationalVector& v,
                          const std::string& name);

struct ConstraintRow {
  std::size_t corpus_index = 0;
  MoveInstance move;
  SparseRow entries;  // bracket(P, D_l) - bracket(P, D_r) per basis column
};

struct ConstraintMatrix {
  std::size_t columns = 0;
  std::vector<ConstraintRow> rows;

  std::vector<SparseRow> sparse_rows() const;
};

// Row for the move `m` applied to `d` (D_l = d, D_r = apply(d, m)).
SparseRow constraint_row(const PatternBasis& basis, const GaussDiagram& d,
                         const MoveInstance& m);

// Each sample draws a corpus diagram and one applicable move uniformly with
// the random-walk rule; reproducible from `seed`.
ConstraintMatrix build_constraints(const PatternBasis& basis,
                                   const std::vector<GaussDiagram>& corpus,
                                   std::size_t samples, std::uint64_t seed,
                                   const WalkConfig& walk = {});

std::vector<RationalVector> solve_nullspace(const ConstraintMatrix& m);

bool in_span(const std::vector<RationalVector>& nullspace, const RationalVector& c);

// The seeds plus diagrams visited by random walks from them, capped at
// `ceiling` arrows.
std::vector<GaussDiagram> build_corpus(const std::vector<GaussDiagram>& seeds,
                                       std::size_t walks_per_seed, std::size_t steps,
                                       std::uint64_t seed, std::size_t ceiling = 25);

// Alternating sum over all subsets S of `ids` of (-1)^|S| evaluate(f, d with
// the crossings in S switched).  Vanishing for every (n+1)-set is the order
// <= n condition.
BracketValue order_check(const Formula& f, const GaussDiagram& d,
                         const std::vector<int>& ids);

struct Violation {
  std::string seed_diagram;  // serialized start of the walk
  std::string transcript;    // moves up to and including the offending one
  std::string before;        // diagram before the offending move
  std::string move;
};

struct VerificationResult {
  std::size_t moves_checked = 0;
  std::vector<std::optional<Violation>> per_vector;  // nullopt = survived
};

// Fresh-seed fuzz: `walks` walks of `steps` moves from every corpus diagram;
// each vector must have a zero bracket difference across every move.
VerificationResult verify_vectors(const PatternBasis& basis,
                                  const std::vector<RationalVector>& vectors,
                                  const std::vector<GaussDiagram>& corpus,
                                  std::size_t walks, std::size_t steps,
                                  std::uint64_t seed, const WalkConfig& walk = {});

struct SolveConfig {
  std::size_t max_arity = 3;
  std::size_t samples = 0;  // 0 = 20 rows per basis column
  std::uint64_t seed = 1;
  std::uint64_t verify_seed = 2;
  std::size_t corpus_walks = 4;
  std::size_t corpus_steps = 12;
  std::size_t verify_walks = 2;
  std::size_t verify_steps = 25;
};

struct SolveReport {
  SolveConfig config;
  std::size_t basis_size = 0;
  std::size_t rows = 0;
  std::size_t corpus_size = 0;
  std::vector<RationalVector> vectors;
  VerificationResult verification;
};

SolveReport run_solver(const SolveConfig& cfg, const PatternBasis& basis,
                       const std::vector<GaussDiagram>& seeds);

std::string solve_report_json(const SolveReport& r, const PatternBasis& basis);

}  // namespace gdf
