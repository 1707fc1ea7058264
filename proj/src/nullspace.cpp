#include "gdf/nullspace.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

namespace gdf {

std::vector<RationalVector> nullspace_rational(const std::vector<SparseRow>& rows,
                                               std::size_t cols) {
  std::vector<RationalVector> m;
  m.reserve(rows.size());
  for (const auto& r : rows) {
    RationalVector dense(cols, 0);
    for (const auto& [c, v] : r) dense.at(c) = static_cast<long>(v);
    m.push_back(std::move(dense));
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < m.size(); ++col) {
    std::size_t pr = rank;
    while (pr < m.size() && m[pr][col] == 0) ++pr;
    if (pr == m.size()) continue;
    std::swap(m[rank], m[pr]);
    const mpq_class inv = 1 / m[rank][col];
    for (auto& x : m[rank]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][col] == 0) continue;
      const mpq_class f = m[r][col];
      for (std::size_t c = col; c < cols; ++c) {
        if (m[rank][c] != 0) m[r][c] -= f * m[rank][c];
      }
    }
    pivot_cols.push_back(col);
    ++rank;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  std::vector<RationalVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(cols, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -m[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

namespace {

using u64 = std::uint64_t;

// Primes just below 2^31; products of two residues fit in 64 bits.
constexpr u64 kPrimes[] = {2147483647ULL, 2147483629ULL, 2147483587ULL, 2147483579ULL,
                           2147483563ULL, 2147483549ULL, 2147483543ULL, 2147483497ULL};

u64 pow_mod(u64 b, u64 e, u64 p) {
  u64 r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

u64 inv_mod(u64 a, u64 p) { return pow_mod(a, p - 2, p); }

u64 to_mod(std::int64_t v, u64 p) {
  const std::int64_t r = v % static_cast<std::int64_t>(p);
  return static_cast<u64>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
}

struct ModResult {
  std::vector<std::size_t> free_cols;     // increasing
  std::vector<std::vector<u64>> vectors;  // one per free column
};

ModResult nullspace_mod(const std::vector<SparseRow>& rows, std::size_t cols, u64 p) {
  // Maintain a basis of the null space of the rows seen so far.
  std::vector<std::vector<u64>> basis(cols, std::vector<u64>(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) basis[i][i] = 1;
  std::vector<u64> dots;
  std::vector<std::pair<std::size_t, u64>> row_mod;
  for (const auto& r : rows) {
    if (basis.empty()) break;
    row_mod.clear();
    for (const auto& [c, v] : r) {
      const u64 m = to_mod(v, p);
      if (m) row_mod.emplace_back(c, m);
    }
    if (row_mod.empty()) continue;
    dots.assign(basis.size(), 0);
    std::optional<std::size_t> piv;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      u64 acc = 0;
      const auto& v = basis[j];
      for (const auto& [c, m] : row_mod) acc = (acc + m * v[c]) % p;
      dots[j] = acc;
      if (acc && !piv) piv = j;
    }
    if (!piv) continue;
    const auto& pv = basis[*piv];
    const u64 inv = inv_mod(dots[*piv], p);
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (j == *piv || dots[j] == 0) continue;
      const u64 f = dots[j] * inv % p;
      auto& v = basis[j];
      for (std::size_t c = 0; c < cols; ++c) {
        if (pv[c]) v[c] = (v[c] + (p - f) * pv[c]) % p;
      }
    }
    basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(*piv));
  }

  // Reduce to the canonical basis: free columns found from the right.
  ModResult out;
  std::vector<bool> assigned(basis.size(), false);
  std::vector<std::pair<std::size_t, std::size_t>> owner;  // (free col, vector)
  for (std::size_t col = cols; col-- > 0;) {
    std::optional<std::size_t> pick;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (!assigned[j] && basis[j][col]) {
        pick = j;
        break;
      }
    }
    if (!pick) continue;
    assigned[*pick] = true;
    auto& w = basis[*pick];
    const u64 inv = inv_mod(w[col], p);
    for (auto& x : w) x = x * inv % p;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (j == *pick || basis[j][col] == 0) continue;
      const u64 f = basis[j][col];
      for (std::size_t c = 0; c < cols; ++c) {
        if (w[c]) basis[j][c] = (basis[j][c] + (p - f) * w[c]) % p;
      }
    }
    owner.emplace_back(col, *pick);
  }
  std::reverse(owner.begin(), owner.end());
  for (const auto& [col, j] : owner) {
    out.free_cols.push_back(col);
    out.vectors.push_back(std::move(basis[j]));
  }
  return out;
}

// Smallest |n|/d with n = a d (mod m), |n|, d <= sqrt(m / 2).
std::optional<mpq_class> reconstruct(const mpz_class& a, const mpz_class& m) {
  mpz_class bound = sqrt(mpz_class(m / 2));
  mpz_class r0 = m, r1 = a;
  mpz_class t0 = 0, t1 = 1;
  while (r1 > bound) {
    mpz_class q = r0 / r1;
    mpz_class r2 = r0 - q * r1;
    mpz_class t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  mpz_class g = gcd(r1, t1);
  if (g != 1) return std::nullopt;
  mpq_class q(r1, t1);
  q.canonicalize();
  return q;
}

}  // namespace

bool annihilates(const std::vector<SparseRow>& rows, const RationalVector& c) {
  // Scale to an integer vector, then check every row.
  mpz_class den = 1;
  for (const auto& x : c) {
    if (x != 0) den = lcm(den, mpz_class(x.get_den()));
  }
  std::vector<mpz_class> ints(c.size());
  bool small = true;
  for (std::size_t i = 0; i < c.size(); ++i) {
    ints[i] = c[i].get_num() * (den / c[i].get_den());
    if (abs(ints[i]) > mpz_class("1000000000000000")) small = false;
  }
  if (small) {
    std::vector<std::int64_t> v(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) v[i] = ints[i].get_si();
    for (const auto& r : rows) {
      __int128 acc = 0;
      for (const auto& [col, x] : r) acc += static_cast<__int128>(x) * v.at(col);
      if (acc != 0) return false;
    }
    return true;
  }
  for (const auto& r : rows) {
    mpz_class acc = 0;
    for (const auto& [col, x] : r) acc += mpz_class(static_cast<long>(x)) * ints.at(col);
    if (acc != 0) return false;
  }
  return true;
}

std::vector<RationalVector> nullspace_modular(const std::vector<SparseRow>& rows,
                                              std::size_t cols) {
  // Identical rows add nothing.
  std::set<SparseRow> unique_rows;
  std::vector<SparseRow> work;
  for (const auto& r : rows) {
    SparseRow clean;
    for (const auto& e : r) {
      if (e.second != 0) clean.push_back(e);
    }
    if (!clean.empty() && unique_rows.insert(clean).second) work.push_back(clean);
  }

  std::optional<ModResult> acc;
  mpz_class modulus = 1;
  std::vector<std::vector<mpz_class>> residues;  // CRT-combined entries
  for (u64 p : kPrimes) {
    ModResult r = nullspace_mod(work, cols, p);
    if (acc) {
      if (r.free_cols.size() > acc->free_cols.size()) continue;  // unlucky prime
      if (r.free_cols.size() < acc->free_cols.size() || r.free_cols != acc->free_cols) {
        acc.reset();  // the earlier primes were the unlucky ones
      }
    }
    if (!acc) {
      acc = r;
      modulus = static_cast<unsigned long>(p);
      residues.assign(r.vectors.size(), std::vector<mpz_class>(cols));
      for (std::size_t i = 0; i < r.vectors.size(); ++i) {
        for (std::size_t c = 0; c < cols; ++c) {
          residues[i][c] = static_cast<unsigned long>(r.vectors[i][c]);
        }
      }
    } else {
      const mpz_class mp = static_cast<unsigned long>(p);
      mpz_class inv;
      mpz_invert(inv.get_mpz_t(), modulus.get_mpz_t(), mp.get_mpz_t());
      for (std::size_t i = 0; i < r.vectors.size(); ++i) {
        for (std::size_t c = 0; c < cols; ++c) {
          // x = a + M * ((b - a) * M^-1 mod p)
          mpz_class diff = mpz_class(static_cast<unsigned long>(r.vectors[i][c])) -
                           residues[i][c];
          mpz_class t = (diff * inv) % mp;
          if (t < 0) t += mp;
          residues[i][c] += modulus * t;
        }
      }
      modulus *= mp;
    }

    std::vector<RationalVector> candidate;
    bool ok = true;
    for (std::size_t i = 0; i < residues.size() && ok; ++i) {
      RationalVector v(cols);
      for (std::size_t c = 0; c < cols && ok; ++c) {
        if (residues[i][c] == 0) {
          v[c] = 0;
          continue;
        }
        auto q = reconstruct(residues[i][c], modulus);
        if (!q) ok = false;
        else v[c] = *q;
      }
      if (ok && !annihilates(work, v)) ok = false;
      candidate.push_back(std::move(v));
    }
    if (ok) return candidate;
  }
  // Out of primes: fall back to exact elimination.
  return nullspace_rational(work, cols);
}

std::size_t rank_mod_p(const std::vector<SparseRow>& rows, std::size_t cols) {
  return cols - nullspace_mod(rows, cols, kPrimes[0]).free_cols.size();
}

}  // namespace gdf
