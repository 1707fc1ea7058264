#include "gdf/lab.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "gdf/rng.hpp"

namespace gdf {

namespace {

GaussDiagram canonical_representative(const GaussDiagram& d) {
  return parse_diagram(serialize(d));
}

// Every way of adding one arrow (id max_id + 1, sign +) to `d`.
std::vector<GaussDiagram> one_arrow_extensions(const GaussDiagram& d) {
  const int id = d.max_id() + 1;
  std::vector<GaussDiagram> out;
  for (int ct = 0; ct < kComponents; ++ct) {
    for (int ch = 0; ch < kComponents; ++ch) {
      const CircleSeq& base_t = d.circle(ct);
      for (std::size_t i = 0; i <= base_t.size(); ++i) {
        std::array<CircleSeq, kComponents> circles{d.circle(0), d.circle(1)};
        auto& t = circles[static_cast<std::size_t>(ct)];
        t.insert(t.begin() + static_cast<std::ptrdiff_t>(i), Token{id, End::tail});
        const CircleSeq& base_h = circles[static_cast<std::size_t>(ch)];
        for (std::size_t j = 0; j <= base_h.size(); ++j) {
          auto copy = circles;
          auto& h = copy[static_cast<std::size_t>(ch)];
          h.insert(h.begin() + static_cast<std::ptrdiff_t>(j), Token{id, End::head});
          auto signs = d.sign_map();
          signs[id] = Sign::plus;
          out.emplace_back(copy, signs);
        }
      }
    }
  }
  return out;
}

std::vector<std::pair<std::size_t, mpq_class>> nonzero(const RationalVector& v) {
  std::vector<std::pair<std::size_t, mpq_class>> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) out.emplace_back(i, v[i]);
  }
  return out;
}

}  // namespace

PatternBasis enumerate_patterns(std::size_t k, const BracketConfig& cfg) {
  if (k < 1 || k > cfg.max_arity) {
    throw std::invalid_argument("pattern arity must be in 1.." +
                                std::to_string(cfg.max_arity) + ", got " +
                                std::to_string(k));
  }
  // Unsigned shapes (all signs +) level by level, then every sign choice.
  std::map<CanonicalForm, GaussDiagram> level{{canonical_form(GaussDiagram()), GaussDiagram()}};
  std::map<CanonicalForm, GaussDiagram> signed_patterns;
  for (std::size_t a = 1; a <= k; ++a) {
    std::map<CanonicalForm, GaussDiagram> next;
    for (const auto& [key, shape] : level) {
      for (const auto& ext : one_arrow_extensions(shape)) {
        auto r = canonical_representative(ext);
        next.try_emplace(canonical_form(r), std::move(r));
      }
    }
    std::map<CanonicalForm, GaussDiagram> this_arity;
    for (const auto& [key, shape] : next) {
      auto wild = shape.sign_map();
      for (auto& [id, s] : wild) s = Sign::wild;
      const GaussDiagram open({shape.circle(0), shape.circle(1)}, wild);
      for (const auto& p : expand_wildcards(open)) {
        this_arity.try_emplace(canonical_form(p), canonical_representative(p));
      }
    }
    signed_patterns.merge(this_arity);
    level = std::move(next);
  }
  // Order by arity first; std::map already sorts by key within an arity.
  std::vector<std::pair<CanonicalForm, GaussDiagram>> all(signed_patterns.begin(),
                                                          signed_patterns.end());
  std::stable_sort(all.begin(), all.end(), [](const auto& x, const auto& y) {
    return x.second.size() < y.second.size();
  });
  PatternBasis basis;
  basis.max_arity = k;
  for (auto& [key, p] : all) {
    basis.index.emplace(key, basis.patterns.size());
    basis.keys.push_back(key);
    basis.patterns.push_back(std::move(p));
  }
  return basis;
}

std::optional<RationalVector> to_basis_vector(const PatternBasis& basis,
                                              const Formula& f) {
  RationalVector v(basis.size(), 0);
  for (const auto& [key, c] : formula_vector(f)) {
    auto it = basis.index.find(key);
    if (it == basis.index.end()) return std::nullopt;
    v[it->second] = c;
  }
  return v;
}

Formula from_basis_vector(const PatternBasis& basis, const RationalVector& v,
                          const std::string& name) {
  Formula f;
  f.name = name;
  for (const auto& [i, c] : nonzero(v)) {
    f.terms.push_back(Term{c, Pattern{"p" + std::to_string(i), basis.patterns[i]}});
  }
  return f;
}

std::vector<SparseRow> ConstraintMatrix::sparse_rows() const {
  std::vector<SparseRow> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.entries);
  return out;
}

SparseRow constraint_row(const PatternBasis& basis, const GaussDiagram& d,
                         const MoveInstance& m) {
  const GaussDiagram after = apply(d, m);
  // Subsets avoiding the touched arrows are the same on both sides.
  std::vector<int> before_ids = touched_arrows(d, m);
  std::vector<int> after_ids = touched_arrows(after, inverse(d, m));
  std::map<std::size_t, std::int64_t> acc;
  auto add = [&](const Profile& p, std::int64_t scale) {
    for (const auto& [key, count] : p) {
      auto it = basis.index.find(key);
      if (it == basis.index.end()) {
        throw std::logic_error("sub-diagram outside the pattern basis");
      }
      acc[it->second] += scale * count;
    }
  };
  if (!before_ids.empty()) add(subdiagram_profile(d, basis.max_arity, before_ids), 1);
  if (!after_ids.empty()) add(subdiagram_profile(after, basis.max_arity, after_ids), -1);
  SparseRow row;
  for (const auto& [c, v] : acc) {
    if (v != 0) row.emplace_back(c, v);
  }
  return row;
}

ConstraintMatrix build_constraints(const PatternBasis& basis,
                                   const std::vector<GaussDiagram>& corpus,
                                   std::size_t samples, std::uint64_t seed,
                                   const WalkConfig& walk) {
  if (corpus.empty()) throw std::invalid_argument("empty corpus");
  ConstraintMatrix m;
  m.columns = basis.size();
  Rng rng(seed);
  m.rows.reserve(samples);
  while (m.rows.size() < samples) {
    const std::size_t i = rng.below(corpus.size());
    auto mv = random_move(corpus[i], rng, walk);
    if (!mv) continue;
    m.rows.push_back(ConstraintRow{i, *mv, constraint_row(basis, corpus[i], *mv)});
  }
  return m;
}

std::vector<RationalVector> solve_nullspace(const ConstraintMatrix& m) {
  return nullspace_modular(m.sparse_rows(), m.columns);
}

bool in_span(const std::vector<RationalVector>& nullspace, const RationalVector& c) {
  if (nullspace.empty()) {
    return std::all_of(c.begin(), c.end(), [](const mpq_class& x) { return x == 0; });
  }
  // Each canonical vector has a 1 at its own free column and 0 at the others,
  // so the only candidate combination reads its weights off those columns.
  const std::size_t cols = c.size();
  RationalVector sum(cols, 0);
  for (const auto& v : nullspace) {
    std::size_t free_col = cols;
    for (std::size_t i = cols; i-- > 0;) {
      if (v[i] != 0) {
        free_col = i;
        break;
      }
    }
    if (free_col == cols) continue;
    const mpq_class w = c[free_col];
    if (w == 0) continue;
    for (std::size_t i = 0; i < cols; ++i) sum[i] += w * v[i];
  }
  return sum == c;
}

std::vector<GaussDiagram> build_corpus(const std::vector<GaussDiagram>& seeds,
                                       std::size_t walks_per_seed, std::size_t steps,
                                       std::uint64_t seed, std::size_t ceiling) {
  std::vector<GaussDiagram> corpus;
  std::set<CanonicalForm> seen;
  auto keep = [&](const GaussDiagram& d) {
    if (d.size() <= ceiling && seen.insert(canonical_form(d)).second) corpus.push_back(d);
  };
  Rng rng(seed);
  WalkConfig cfg;
  cfg.size_ceiling = ceiling;
  for (const auto& s : seeds) {
    keep(s);
    for (std::size_t w = 0; w < walks_per_seed; ++w) {
      const Walk walk = random_walk(s, steps, rng.fork(), cfg);
      for (const auto& d : walk.diagrams) keep(d);
    }
  }
  return corpus;
}

BracketValue order_check(const Formula& f, const GaussDiagram& d,
                         const std::vector<int>& ids) {
  if (ids.size() > 20) throw std::invalid_argument("too many crossings for order check");
  BracketValue total = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << ids.size()); ++mask) {
    GaussDiagram g = d;
    int parity = 1;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if ((mask >> i) & 1) {
        g = switch_crossing(g, ids[i]);
        parity = -parity;
      }
    }
    total += parity * evaluate(f, g);
  }
  return total;
}

VerificationResult verify_vectors(const PatternBasis& basis,
                                  const std::vector<RationalVector>& vectors,
                                  const std::vector<GaussDiagram>& corpus,
                                  std::size_t walks, std::size_t steps,
                                  std::uint64_t seed, const WalkConfig& walk) {
  VerificationResult res;
  res.per_vector.assign(vectors.size(), std::nullopt);
  std::vector<std::vector<std::pair<std::size_t, mpq_class>>> sparse;
  for (const auto& v : vectors) sparse.push_back(nonzero(v));
  Rng rng(seed);
  for (const auto& start : corpus) {
    for (std::size_t w = 0; w < walks; ++w) {
      const Walk path = random_walk(start, steps, rng.fork(), walk);
      for (std::size_t s = 0; s < path.moves.size(); ++s) {
        const SparseRow row = constraint_row(basis, path.diagrams[s], path.moves[s]);
        ++res.moves_checked;
        std::map<std::size_t, std::int64_t> dense(row.begin(), row.end());
        for (std::size_t j = 0; j < vectors.size(); ++j) {
          if (res.per_vector[j]) continue;
          mpq_class dot = 0;
          for (const auto& [c, x] : sparse[j]) {
            auto it = dense.find(c);
            if (it != dense.end()) dot += x * static_cast<long>(it->second);
          }
          if (dot != 0) {
            std::vector<MoveInstance> prefix(path.moves.begin(),
                                             path.moves.begin() + static_cast<std::ptrdiff_t>(s) + 1);
            res.per_vector[j] = Violation{serialize(start), write_transcript(prefix),
                                          serialize(path.diagrams[s]),
                                          to_string(path.moves[s])};
          }
        }
      }
    }
  }
  return res;
}

SolveReport run_solver(const SolveConfig& cfg, const PatternBasis& basis,
                       const std::vector<GaussDiagram>& seeds) {
  SolveReport r;
  r.config = cfg;
  r.basis_size = basis.size();
  const auto corpus = build_corpus(seeds, cfg.corpus_walks, cfg.corpus_steps, cfg.seed);
  r.corpus_size = corpus.size();
  const std::size_t samples = cfg.samples ? cfg.samples : 20 * basis.size();
  const auto m = build_constraints(basis, corpus, samples, cfg.seed);
  r.rows = m.rows.size();
  r.vectors = solve_nullspace(m);
  // Fresh seed, fresh walks from the seeds themselves.
  r.verification = verify_vectors(basis, r.vectors, seeds, cfg.verify_walks,
                                  cfg.verify_steps, cfg.verify_seed);
  return r;
}

std::string solve_report_json(const SolveReport& r, const PatternBasis& basis) {
  nlohmann::ordered_json j;
  j["max_arity"] = r.config.max_arity;
  j["seed"] = r.config.seed;
  j["verify_seed"] = r.config.verify_seed;
  j["basis_size"] = r.basis_size;
  j["rows"] = r.rows;
  j["corpus_size"] = r.corpus_size;
  j["nullity"] = r.vectors.size();
  j["verification_moves"] = r.verification.moves_checked;
  auto vecs = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < r.vectors.size(); ++i) {
    nlohmann::ordered_json v;
    v["index"] = i;
    auto terms = nlohmann::ordered_json::array();
    for (const auto& [c, x] : nonzero(r.vectors[i])) {
      terms.push_back({{"coefficient", to_string(x)},
                       {"pattern", serialize(basis.patterns[c])}});
    }
    v["terms"] = terms;
    const auto& viol = r.verification.per_vector.at(i);
    v["verified"] = !viol.has_value();
    if (viol) {
      v["violation"] = {{"seed_diagram", viol->seed_diagram},
                        {"transcript", viol->transcript},
                        {"before", viol->before},
                        {"move", viol->move}};
    }
    vecs.push_back(v);
  }
  j["vectors"] = vecs;
  return j.dump(2) + "\n";
}

}  // namespace gdf
