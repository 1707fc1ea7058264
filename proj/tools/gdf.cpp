#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gdf/families.hpp"
#include "gdf/formula_io.hpp"
#include "gdf/lab.hpp"
#include "gdf/moves.hpp"
#include "gdf/rng.hpp"

#ifndef GDF_DATA_DIR
#define GDF_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using namespace gdf;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitViolation = 2;

struct Options {
  std::uint64_t seed = 1;
  std::size_t steps = 100;
  std::size_t samples = 0;
  std::size_t max_arity = 3;
  std::string format = "text";
  std::string out;
};

fs::path formula_dir() { return fs::path(GDF_DATA_DIR) / "formulas"; }

// A path, a shipped file stem (theorem1_all), the first formula of one
// (theorem1_first), or a formula name inside a shipped file (f1p).
std::vector<Formula> resolve_formulas(const std::string& arg) {
  if (fs::exists(arg)) return load_formula_file(arg);
  const fs::path stem = formula_dir() / (arg + ".formula");
  if (fs::exists(stem)) return load_formula_file(stem);
  if (arg.ends_with("_first")) {
    const fs::path base = formula_dir() / (arg.substr(0, arg.size() - 6) + "_all.formula");
    if (fs::exists(base)) return {load_formula_file(base).front()};
  }
  std::vector<fs::path> files;
  if (fs::is_directory(formula_dir())) {
    for (const auto& e : fs::directory_iterator(formula_dir())) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& p : files) {
    for (auto& f : load_formula_file(p)) {
      if (f.name == arg) return {f};
    }
  }
  throw std::invalid_argument("no formula file or shipped formula named '" + arg + "'");
}

Sign sign_from(char c) {
  if (c == 'p') return Sign::plus;
  if (c == 'm') return Sign::minus;
  throw std::invalid_argument(std::string("sign letter must be p or m, got '") + c + "'");
}

// A path, or one of unlink, hopf_pp (pm, mp, mm), L_<m>_<n>, twist_<k>_<p|m>.
std::pair<std::string, GaussDiagram> resolve_diagram(const std::string& arg) {
  if (fs::exists(arg)) return {arg, load_diagram_file(arg)};
  FamilySpec spec;
  if (arg == "unlink") {
    spec.family = Family::unlink;
  } else if (arg.size() == 7 && arg.starts_with("hopf_")) {
    spec.family = Family::hopf;
    spec.first = sign_from(arg[5]);
    spec.second = sign_from(arg[6]);
  } else if (arg.starts_with("L_") || arg.starts_with("twist_")) {
    const bool lmn = arg.starts_with("L_");
    const std::string rest = arg.substr(lmn ? 2 : 6);
    const auto us = rest.find('_');
    if (us == std::string::npos) throw std::invalid_argument("bad family name '" + arg + "'");
    spec.family = lmn ? Family::L_mn : Family::twist_chain;
    spec.m = std::stoi(rest.substr(0, us));
    if (lmn) {
      spec.n = std::stoi(rest.substr(us + 1));
    } else {
      if (rest.size() != us + 2) throw std::invalid_argument("bad family name '" + arg + "'");
      spec.first = sign_from(rest[us + 1]);
    }
  } else {
    throw std::invalid_argument("no diagram file or family named '" + arg + "'");
  }
  return {describe(spec), generate(spec)};
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + o.out);
  f << text;
}

std::string one_line(std::string s) {
  while (!s.empty() && s.back() == '\n') s.pop_back();
  std::replace(s.begin(), s.end(), '\n', ';');
  return s;
}

int cmd_eval(const Options& o, const std::string& formula_arg,
             const std::vector<std::string>& diagram_args) {
  const auto formulas = resolve_formulas(formula_arg);
  std::ostringstream out;
  json arr = json::array();
  if (o.format == "csv") out << "diagram,formula,value\n";
  for (const auto& a : diagram_args) {
    const auto [name, d] = resolve_diagram(a);
    const auto values = evaluate_all(formulas, d);
    for (std::size_t i = 0; i < formulas.size(); ++i) {
      const std::string v = to_string(values[i]);
      if (o.format == "json") {
        arr.push_back({{"diagram", name}, {"formula", formulas[i].name}, {"value", v}});
      } else if (o.format == "csv") {
        out << name << "," << formulas[i].name << "," << v << "\n";
      } else {
        out << name << "  " << formulas[i].name << " = " << v << "\n";
      }
    }
  }
  if (o.format == "json") out << arr.dump(2) << "\n";
  emit(o, out.str());
  return kExitOk;
}

int cmd_walk(const Options& o, const std::string& diagram_arg,
             const std::string& formula_arg) {
  const auto formulas = resolve_formulas(formula_arg);
  const auto [name, d] = resolve_diagram(diagram_arg);
  const Walk walk = random_walk(d, o.steps, o.seed);
  std::vector<BracketValue> lo = evaluate_all(formulas, d), hi = lo;
  const auto start = lo;
  std::size_t first_change = walk.moves.size();
  for (std::size_t s = 1; s < walk.diagrams.size(); ++s) {
    const auto v = evaluate_all(formulas, walk.diagrams[s]);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] < lo[i]) lo[i] = v[i];
      if (v[i] > hi[i]) hi[i] = v[i];
      if (v[i] != start[i] && first_change == walk.moves.size()) first_change = s - 1;
    }
  }
  const bool varied = first_change < walk.moves.size();
  std::string transcript;
  if (varied) {
    transcript = write_transcript(std::vector<MoveInstance>(
        walk.moves.begin(), walk.moves.begin() + static_cast<std::ptrdiff_t>(first_change) + 1));
  }
  std::ostringstream out;
  if (o.format == "json") {
    json j;
    j["diagram"] = name;
    j["seed"] = o.seed;
    j["steps"] = o.steps;
    json rows = json::array();
    for (std::size_t i = 0; i < formulas.size(); ++i) {
      rows.push_back({{"formula", formulas[i].name},
                      {"min", to_string(lo[i])},
                      {"max", to_string(hi[i])},
                      {"constant", lo[i] == hi[i]}});
    }
    j["formulas"] = rows;
    j["invariant"] = !varied;
    if (varied) {
      j["start"] = serialize(d);
      j["transcript"] = transcript;
    }
    out << j.dump(2) << "\n";
  } else if (o.format == "csv") {
    out << "diagram,seed,steps,formula,min,max\n";
    for (std::size_t i = 0; i < formulas.size(); ++i) {
      out << name << "," << o.seed << "," << o.steps << "," << formulas[i].name << ","
          << to_string(lo[i]) << "," << to_string(hi[i]) << "\n";
    }
  } else {
    out << "walk " << name << " seed=" << o.seed << " steps=" << o.steps << "\n";
    for (std::size_t i = 0; i < formulas.size(); ++i) {
      out << "  " << formulas[i].name << " min=" << to_string(lo[i])
          << " max=" << to_string(hi[i]) << (lo[i] == hi[i] ? "" : "  VARIED") << "\n";
    }
    if (varied) {
      out << "start:\n" << serialize(d) << "moves up to the first change:\n" << transcript;
    }
  }
  emit(o, out.str());
  return varied ? kExitViolation : kExitOk;
}

std::vector<Formula> table_formulas() {
  std::vector<Formula> all;
  for (const char* stem : {"theorem1_all", "theorem2_all", "triple_sum"}) {
    for (auto& f : load_formula_file(formula_dir() / (std::string(stem) + ".formula"))) {
      all.push_back(std::move(f));
    }
  }
  return all;
}

int cmd_table1(const Options& o, int max_param) {
  const auto rows = table1_report(table_formulas(), max_param);
  bool all_match = true;
  for (const auto& r : rows) {
    if (has_expected(r.formula) && r.value != r.expected) all_match = false;
  }
  std::ostringstream out;
  if (o.format == "json") {
    out << table1_json(rows);
  } else if (o.format == "csv") {
    out << table1_csv(rows);
  } else {
    for (const auto& r : rows) {
      out << "L(" << r.m << "," << r.n << ")  " << r.formula << " = " << to_string(r.value);
      if (has_expected(r.formula)) {
        out << "  table " << to_string(r.expected) << (r.value == r.expected ? "" : "  MISMATCH");
      }
      out << "\n";
    }
  }
  emit(o, out.str());
  return all_match ? kExitOk : kExitViolation;
}

int cmd_solve(const Options& o) {
  SolveConfig cfg;
  cfg.max_arity = o.max_arity;
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  cfg.verify_seed = o.seed + 1;
  const auto basis = enumerate_patterns(cfg.max_arity);
  const auto r = run_solver(cfg, basis, solver_seeds(o.seed));
  emit(o, solve_report_json(r, basis));
  const bool clean = std::none_of(r.verification.per_vector.begin(),
                                  r.verification.per_vector.end(),
                                  [](const auto& v) { return v.has_value(); });
  return clean ? kExitOk : kExitViolation;
}

int cmd_order(const Options& o, const std::string& formula_arg, std::size_t size) {
  const auto formulas = resolve_formulas(formula_arg);
  std::vector<GaussDiagram> seeds;
  for (const auto& [name, d] : standard_seeds()) seeds.push_back(d);
  const auto all = build_corpus(seeds, 4, 12, o.seed);
  std::vector<GaussDiagram> corpus;
  for (const auto& d : all) {
    if (d.size() >= size) corpus.push_back(d);
  }
  if (corpus.empty()) throw std::invalid_argument("no corpus diagram has enough crossings");
  const std::size_t samples = o.samples ? o.samples : 200;
  Rng rng(o.seed);
  struct Witness {
    std::string diagram;
    std::vector<int> ids;
    BracketValue value;
  };
  std::vector<std::size_t> nonzero(formulas.size(), 0);
  std::vector<std::optional<Witness>> first(formulas.size());
  for (std::size_t s = 0; s < samples; ++s) {
    const GaussDiagram& d = corpus[rng.below(corpus.size())];
    std::vector<int> ids;
    for (const auto& a : d.arrows()) ids.push_back(a.id);
    for (std::size_t i = 0; i < size; ++i) {
      std::swap(ids[i], ids[i + rng.below(ids.size() - i)]);
    }
    ids.resize(size);
    std::sort(ids.begin(), ids.end());
    for (std::size_t f = 0; f < formulas.size(); ++f) {
      const BracketValue v = order_check(formulas[f], d, ids);
      if (v == 0) continue;
      ++nonzero[f];
      if (!first[f]) first[f] = Witness{serialize(d), ids, v};
    }
  }
  std::ostringstream out;
  if (o.format == "json") {
    json j;
    j["seed"] = o.seed;
    j["size"] = size;
    j["samples"] = samples;
    json rows = json::array();
    for (std::size_t f = 0; f < formulas.size(); ++f) {
      json r{{"formula", formulas[f].name}, {"nonzero", nonzero[f]}};
      if (first[f]) {
        r["witness"] = {{"diagram", first[f]->diagram},
                        {"ids", first[f]->ids},
                        {"value", to_string(first[f]->value)}};
      }
      rows.push_back(r);
    }
    j["formulas"] = rows;
    out << j.dump(2) << "\n";
  } else if (o.format == "csv") {
    out << "formula,size,samples,seed,nonzero\n";
    for (std::size_t f = 0; f < formulas.size(); ++f) {
      out << formulas[f].name << "," << size << "," << samples << "," << o.seed << ","
          << nonzero[f] << "\n";
    }
  } else {
    out << "order size=" << size << " samples=" << samples << " seed=" << o.seed << "\n";
    for (std::size_t f = 0; f < formulas.size(); ++f) {
      out << "  " << formulas[f].name << " nonzero=" << nonzero[f] << "\n";
      if (first[f]) {
        out << "    witness value " << to_string(first[f]->value) << " on ids";
        for (int id : first[f]->ids) out << " " << id;
        out << " of " << one_line(first[f]->diagram) << "\n";
      }
    }
  }
  emit(o, out.str());
  const bool clean = std::all_of(nonzero.begin(), nonzero.end(),
                                 [](std::size_t n) { return n == 0; });
  return clean ? kExitOk : kExitViolation;
}

int cmd_family(const Options& o, const std::string& arg) {
  const auto [name, d] = resolve_diagram(arg);
  std::ostringstream out;
  if (o.format == "json") {
    json j{{"family", name}, {"arrows", d.size()}, {"diagram", serialize(d)}};
    out << j.dump(2) << "\n";
  } else {
    out << serialize(d);
  }
  emit(o, out.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gauss-diagram formulas for two-component links"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--seed", o.seed, "random seed")->capture_default_str();
  app.add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"text", "csv", "json"}))
      ->capture_default_str();
  app.add_option("--out", o.out, "write the report here instead of stdout");

  std::string formula_arg, diagram_arg;
  std::vector<std::string> diagram_args;

  auto* eval = app.add_subcommand("eval", "evaluate formulas on diagrams");
  eval->add_option("formula", formula_arg, "formula file or shipped name")->required();
  eval->add_option("diagrams", diagram_args, "diagram files or family names")->required();

  auto* walk = app.add_subcommand("walk", "check formulas along a random Reidemeister walk");
  walk->add_option("diagram", diagram_arg)->required();
  walk->add_option("formula", formula_arg)->required();
  walk->add_option("--steps", o.steps)->capture_default_str();

  int max_param = 7;
  auto* table1 = app.add_subcommand("table1", "values on L(m,n) against the table");
  table1->add_option("max", max_param, "largest odd m and n")->capture_default_str();

  auto* solve = app.add_subcommand("solve", "solve for invariant pattern combinations");
  solve->add_option("--max-arity", o.max_arity)->capture_default_str();
  solve->add_option("--samples", o.samples, "constraint rows (0 = 20 per pattern)")
      ->capture_default_str();

  std::size_t size = 4;
  auto* order = app.add_subcommand("order", "alternating sums over crossing switches");
  order->add_option("formula", formula_arg)->required();
  order->add_option("--size", size, "switch set size")->capture_default_str();
  order->add_option("--samples", o.samples, "(diagram, subset) pairs (0 = 200)")
      ->capture_default_str();

  auto* family = app.add_subcommand("family", "print a generated diagram");
  family->add_option("name", diagram_arg, "unlink, hopf_pp, L_3_5, twist_2_p ...")->required();

  // Subcommand-level copies of the global flags so they may follow the
  // subcommand name.
  for (auto* sub : {eval, walk, table1, solve, order, family}) {
    sub->add_option("--seed", o.seed);
    sub->add_option("--format", o.format)->check(CLI::IsMember({"text", "csv", "json"}));
    sub->add_option("--out", o.out);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*eval) return cmd_eval(o, formula_arg, diagram_args);
    if (*walk) return cmd_walk(o, diagram_arg, formula_arg);
    if (*table1) return cmd_table1(o, max_param);
    if (*solve) return cmd_solve(o);
    if (*order) return cmd_order(o, formula_arg, size);
    if (*family) return cmd_family(o, diagram_arg);
  } catch (const DiagramError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
