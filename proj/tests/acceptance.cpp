// One PASS/FAIL line per acceptance criterion.  Exits 0 when every
// criterion passes.  --known-failures 4,5 instead requires the failing set
// to be exactly the listed criteria, so a known gap is still reported as
// FAIL but an unexpected change in either direction fails the run.
// --fast shrinks the walk counts.
#include <algorithm>
#include <chrono>
#include <cstring>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <iostream>
#include <sstream>

#include "gdf/lab.hpp"
#include "gdf/moves.hpp"
#include "gdf/planar.hpp"
#include "support.hpp"

using namespace gdf;
using gdf::testing::random_classical;
using gdf::testing::random_diagram;
using gdf::testing::shipped;
using gdf::testing::shipped_one;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::size_t g_walks = 100;
constexpr std::size_t kWalkSteps = 50;

std::vector<Formula> seven_formulas() {
  auto all = shipped("theorem1_all");
  for (auto& f : shipped("theorem2_all")) all.push_back(f);
  return all;
}

// Walks from every standard seed; returns the first variation found as a
// replayable transcript file path (empty when all values stay constant).
std::string walk_check(const std::vector<Formula>& formulas, std::uint64_t seed,
                       const std::string& tag, std::size_t* checks) {
  Rng rng(seed);
  for (const auto& [name, d] : standard_seeds()) {
    const auto base = evaluate_all(formulas, d);
    for (std::size_t w = 0; w < g_walks; ++w) {
      const std::uint64_t ws = rng.fork();
      const Walk walk = random_walk(d, kWalkSteps, ws);
      for (std::size_t s = 1; s < walk.diagrams.size(); ++s) {
        const auto v = evaluate_all(formulas, walk.diagrams[s]);
        *checks += v.size();
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (v[i] == base[i]) continue;
          const std::string path = "acceptance_" + tag + "_failure.txt";
          std::ofstream f(path);
          f << "# formula " << formulas[i].name << " changed from " << to_string(base[i])
            << " to " << to_string(v[i]) << " (walk seed " << ws << ")\n"
            << serialize(d) << "---\n"
            << write_transcript(std::vector<MoveInstance>(
                   walk.moves.begin(), walk.moves.begin() + static_cast<std::ptrdiff_t>(s)));
          return path;
        }
      }
    }
  }
  return {};
}

Outcome oracle_equivalence() {
  const auto t0 = Clock::now();
  std::vector<Formula> shipped_set;
  for (const char* stem : {"theorem1_all", "theorem2_all", "triple_sum", "lk", "writhe_self"}) {
    for (auto& f : shipped(stem)) shipped_set.push_back(f);
  }
  // Every fixed-sign pattern of arity <= 2 as a formula of its own, on the
  // random corpus.
  std::vector<Formula> wide = shipped_set;
  const PatternBasis small = enumerate_patterns(2);
  for (std::size_t i = 0; i < small.size(); ++i) {
    wide.push_back(single_term("p" + std::to_string(i), Pattern{"p", small.patterns[i]}));
  }
  std::size_t checked = 0, bad = 0;
  auto check = [&](const std::vector<Formula>& formulas, const GaussDiagram& d) {
    for (const auto& f : formulas) {
      ++checked;
      if (evaluate(f, d) != brute_force_oracle(f, d)) ++bad;
    }
  };
  const PatternBasis exhaustive = enumerate_patterns(4);
  check(shipped_set, GaussDiagram{});
  for (const auto& d : exhaustive.patterns) check(shipped_set, d);
  Rng rng(101);
  for (int i = 0; i < 1000; ++i) check(wide, random_diagram(rng, 8));
  const double t = seconds_since(t0);
  std::ostringstream os;
  os << exhaustive.size() + 1 << " exhaustive diagrams x " << shipped_set.size()
     << " shipped formulas, 1000 random diagrams x " << wide.size() << " formulas, " << bad
     << "/" << checked << " mismatches, " << t << " s (limit 60)";
  return {bad == 0 && t < 60.0, os.str()};
}

Outcome linking_number() {
  const auto t0 = Clock::now();
  const auto lk = shipped("lk");
  Rng rng(202);
  std::size_t disagree = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto v = evaluate_all(lk, random_classical(rng));
    if (v[0] != v[1]) ++disagree;
  }
  std::size_t checks = 0;
  const std::string failure = walk_check(lk, 203, "lk", &checks);
  const double t = seconds_since(t0);
  std::ostringstream os;
  os << disagree << "/1000 random closures with lk12 != lk21; " << checks
     << " walk values, " << (failure.empty() ? "all constant" : "variation in " + failure)
     << ", " << t << " s (limit 60)";
  return {disagree == 0 && failure.empty() && t < 60.0, os.str()};
}

Outcome invariance() {
  std::size_t checks = 0;
  const std::string failure = walk_check(seven_formulas(), 303, "invariance", &checks);
  std::ostringstream os;
  os << "7 formulas, " << g_walks << " walks x " << kWalkSteps << " moves from 9 seeds, "
     << checks << " values, " << (failure.empty() ? "all constant" : "transcript " + failure);
  return {failure.empty(), os.str()};
}

Outcome table1() {
  const auto t0 = Clock::now();
  auto formulas = seven_formulas();
  formulas.push_back(shipped_one("triple_sum", "triple"));
  const auto rows = table1_report(formulas, 7);
  std::size_t bad = 0;
  std::map<std::string, std::size_t> bad_by;
  for (const auto& r : rows) {
    if (r.value != r.expected) {
      ++bad;
      ++bad_by[r.formula];
    }
  }
  const double t = seconds_since(t0);
  std::ostringstream os;
  os << bad << "/" << rows.size() << " entries differ";
  if (bad) {
    os << " (";
    bool first = true;
    for (const auto& [name, c] : bad_by) {
      os << (first ? "" : " ") << name << ":" << c;
      first = false;
    }
    os << ")";
  }
  os << ", " << t << " s (limit 30)";
  return {bad == 0 && t < 30.0, os.str()};
}

Outcome separation() {
  const Formula triple = shipped_one("triple_sum", "triple");
  const auto t1 = shipped("theorem1_all");
  bool pass = true;
  std::ostringstream os;
  std::set<std::string> triple_values;
  for (int m = 1; m <= 7; m += 2) {
    triple_values.insert(to_string(evaluate(triple, make_L_mn(m, m))));
  }
  for (int m = 1; m <= 7; m += 2) {
    for (int n = m + 2; n <= 7; n += 2) {
      const GaussDiagram a = make_L_mn(m, m), b = make_L_mn(n, n);
      const BracketValue va = evaluate(triple, a), vb = evaluate(triple, b);
      const auto ta = evaluate_all(t1, a), tb = evaluate_all(t1, b);
      if (va != vb || va != 0 || ta == tb) pass = false;
    }
  }
  os << "triple sum on L(m,m) for m=1..7 takes {";
  bool first = true;
  for (const auto& v : triple_values) {
    os << (first ? "" : ",") << v;
    first = false;
  }
  os << "} (required: equal, and 0); theorem-1 values ";
  std::set<std::string> f1p;
  for (int m = 1; m <= 7; m += 2) {
    f1p.insert(to_string(evaluate(t1[0], make_L_mn(m, m))));
  }
  os << (f1p.size() == 4 ? "separate all pairs" : "do not separate all pairs");
  return {pass, os.str()};
}

std::vector<int> random_subset(Rng& rng, const GaussDiagram& d, std::size_t k) {
  std::vector<int> ids;
  for (const auto& a : d.arrows()) ids.push_back(a.id);
  for (std::size_t i = 0; i < k; ++i) std::swap(ids[i], ids[i + rng.below(ids.size() - i)]);
  ids.resize(k);
  std::sort(ids.begin(), ids.end());
  return ids;
}

Outcome order_property() {
  std::vector<GaussDiagram> seeds;
  for (const auto& [name, d] : standard_seeds()) seeds.push_back(d);
  for (int m = 1; m <= 5; m += 2) seeds.push_back(make_L_mn(m, 8 - m));
  std::vector<GaussDiagram> corpus;
  for (const auto& d : build_corpus(seeds, 4, 12, 404)) {
    if (d.size() >= 4) corpus.push_back(d);
  }
  const auto seven = seven_formulas();
  const auto lk = shipped("lk");
  Rng rng(405);
  std::size_t nonzero4 = 0, nonzero2 = 0;
  for (int s = 0; s < 200; ++s) {
    const GaussDiagram& d = corpus[rng.below(corpus.size())];
    const auto ids4 = random_subset(rng, d, 4);
    for (const auto& f : seven) nonzero4 += order_check(f, d, ids4) != 0;
    const auto ids2 = random_subset(rng, d, 2);
    for (const auto& f : lk) nonzero2 += order_check(f, d, ids2) != 0;
  }
  // Order exactly 3: a 3-set with a nonzero alternating sum.
  std::size_t witnessed = 0;
  std::ostringstream missing;
  for (const auto& f : seven) {
    bool found = false;
    for (std::size_t t = 0; t < 4000 && !found; ++t) {
      const GaussDiagram& d = corpus[rng.below(corpus.size())];
      found = order_check(f, d, random_subset(rng, d, 3)) != 0;
    }
    if (found) {
      ++witnessed;
    } else {
      missing << " " << f.name;
    }
  }
  std::ostringstream os;
  os << "200 pairs: " << nonzero4 << " nonzero 4-set sums, " << nonzero2
     << " nonzero lk 2-set sums; 3-set witnesses for " << witnessed << "/7";
  if (!missing.str().empty()) os << " (missing" << missing.str() << ")";
  return {nonzero4 == 0 && nonzero2 == 0 && witnessed == 7, os.str()};
}

Outcome solver() {
  const auto seeds = solver_seeds(1);
  std::ostringstream os;
  bool pass = true;

  SolveConfig k1;
  k1.max_arity = 1;
  k1.samples = 500;
  const PatternBasis b1 = enumerate_patterns(1);
  const auto r1 = run_solver(k1, b1, seeds);
  const auto lk = shipped("lk");
  std::size_t lk_in = 0;
  for (const auto& f : lk) lk_in += in_span(r1.vectors, *to_basis_vector(b1, f));
  std::size_t self_total = 0, self_in = 0;
  for (std::size_t i = 0; i < b1.size(); ++i) {
    const Arrow& a = b1.patterns[i].arrows()[0];
    if (a.tail.component != a.head.component) continue;
    ++self_total;
    RationalVector e(b1.size());
    e[i] = 1;
    self_in += in_span(r1.vectors, e);
  }
  std::size_t bad1 = 0;
  for (const auto& v : r1.verification.per_vector) bad1 += v.has_value();
  os << "k=1: " << r1.rows << " rows, nullity " << r1.vectors.size() << ", lk " << lk_in
     << "/2 in span, self patterns " << self_in << "/" << self_total << " in span; ";
  pass = pass && r1.rows >= 500 && lk_in == 2 && self_in == 0 && bad1 == 0;

  SolveConfig k3;
  const PatternBasis b3 = enumerate_patterns(3);
  const auto r3 = run_solver(k3, b3, seeds);
  // Rebuild the same constraint rows to test the formulas against them.
  const auto corpus = build_corpus(seeds, k3.corpus_walks, k3.corpus_steps, k3.seed);
  const auto rows = build_constraints(b3, corpus, r3.rows, k3.seed).sparse_rows();
  std::size_t satisfied = 0, spanned = 0;
  for (const auto& f : seven_formulas()) {
    const auto v = to_basis_vector(b3, f);
    satisfied += v && annihilates(rows, *v);
    spanned += v && in_span(r3.vectors, *v);
  }
  std::size_t bad3 = 0;
  for (const auto& v : r3.verification.per_vector) bad3 += v.has_value();
  os << "k=3: " << r3.rows << " rows, nullity " << r3.vectors.size() << ", formulas "
     << satisfied << "/7 satisfy all rows (" << spanned << "/7 in span); verification "
     << bad1 + bad3 << " violations over " << r1.verification.moves_checked + r3.verification.moves_checked
     << " moves";
  pass = pass && satisfied == 7 && bad3 == 0;
  return {pass, os.str()};
}

Outcome determinism() {
  auto reports = [] {
    std::string out;
    SolveConfig cfg;
    cfg.max_arity = 2;
    const PatternBasis b = enumerate_patterns(2);
    out += solve_report_json(run_solver(cfg, b, solver_seeds(7)), b);
    auto formulas = shipped("theorem1_all");
    out += table1_json(table1_report(formulas, 5));
    const Walk w = random_walk(make_L_mn(3, 1), 200, 9);
    out += write_transcript(w.moves) + serialize(w.diagrams.back());
    Rng rng(10);
    for (int i = 0; i < 50; ++i) out += serialize(random_classical(rng));
    return out;
  };
  const std::string a = reports(), b = reports();
  std::ostringstream os;
  os << "two runs of solver/table/walk/closure reports (" << a.size() << " bytes) "
     << (a == b ? "identical" : "differ");
  return {a == b, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> known;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--fast") == 0) {
      g_walks = 10;
    } else if (std::strcmp(argv[i], "--known-failures") == 0 && i + 1 < argc) {
      std::stringstream ss(argv[++i]);
      std::string item;
      while (std::getline(ss, item, ',')) known.insert(std::stoi(item));
    }
  }
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 oracle equivalence", oracle_equivalence},
      {"2 linking number relation", linking_number},
      {"3 invariance of the seven formulas", invariance},
      {"4 table values on L(m,n)", table1},
      {"5 separation from the three-arrow sum", separation},
      {"6 order property", order_property},
      {"7 solver sanity", solver},
      {"8 determinism", determinism},
  };
  int failed = 0;
  std::set<int> failing;
  int number = 0;
  for (const auto& [name, run] : criteria) {
    ++number;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    if (!o.pass) failing.insert(number);
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  }
  std::cout << (8 - failed) << "/8 criteria pass" << std::endl;
  if (!known.empty()) {
    std::cout << "failing set " << (failing == known ? "matches" : "differs from")
              << " the known failures" << std::endl;
    return failing == known ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
