#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace gdf {

// Sparse integer row: (column, value) pairs, columns strictly increasing.
using SparseRow = std::vector<std::pair<std::size_t, std::int64_t>>;
using RationalVector = std::vector<mpq_class>;

// Basis of {c : M c = 0} in reduced form: one vector per free (non-pivot)
// column of the reduced row echelon form of M, with a 1 at its own free
// column and 0 at every other free column.  Vectors are ordered by free
// column.  This basis is unique, so every correct solver returns it.

// Direct elimination over the rationals (pivot: first nonzero column, rows
// in order).  Intended for small matrices and as a cross-check.
std::vector<RationalVector> nullspace_rational(const std::vector<SparseRow>& rows,
                                               std::size_t cols);

// Elimination modulo word-sized primes, rational reconstruction, then an
// exact integer check of every vector against every row.  Falls back to
// more primes (combined by CRT) until the check passes.
std::vector<RationalVector> nullspace_modular(const std::vector<SparseRow>& rows,
                                              std::size_t cols);

// Exact test of M c = 0.
bool annihilates(const std::vector<SparseRow>& rows, const RationalVector& c);

// Rank of the rows modulo a fixed prime (a lower bound on the rational rank).
std::size_t rank_mod_p(const std::vector<SparseRow>& rows, std::size_t cols);

}  // namespace gdf
