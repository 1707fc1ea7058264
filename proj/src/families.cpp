#include "gdf/families.hpp"

#include <cstdlib>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "gdf/rng.hpp"

namespace gdf {

std::string to_string(Family f) {
  switch (f) {
    case Family::L_mn: return "L_mn";
    case Family::hopf: return "hopf";
    case Family::unlink: return "unlink";
    case Family::twist_chain: return "twist_chain";
  }
  return "?";
}

Family parse_family(const std::string& s) {
  for (Family f : {Family::L_mn, Family::hopf, Family::unlink, Family::twist_chain}) {
    if (to_string(f) == s) return f;
  }
  throw std::invalid_argument("unknown family '" + s + "'");
}

std::string describe(const FamilySpec& spec) {
  switch (spec.family) {
    case Family::L_mn:
      return "L(" + std::to_string(spec.m) + "," + std::to_string(spec.n) + ")";
    case Family::hopf:
      return std::string("hopf(") + sign_char(spec.first) + "," +
             sign_char(spec.second) + ")";
    case Family::unlink: return "unlink";
    case Family::twist_chain:
      return "twist_chain(" + std::to_string(spec.m) + "," + sign_char(spec.first) + ")";
  }
  return "?";
}

GaussDiagram braid_closure(int strands, const std::vector<int>& word) {
  if (strands < 1) throw std::invalid_argument("braid needs at least one strand");
  // at[p] = strand (named by its start position) currently at position p.
  std::vector<int> at(static_cast<std::size_t>(strands));
  for (int p = 0; p < strands; ++p) at[static_cast<std::size_t>(p)] = p;
  std::vector<std::vector<Token>> events(static_cast<std::size_t>(strands));
  std::map<int, Sign> signs;
  int id = 0;
  for (int letter : word) {
    const int i = std::abs(letter) - 1;
    if (letter == 0 || i + 1 >= strands) {
      throw std::invalid_argument("braid letter " + std::to_string(letter) +
                                  " out of range");
    }
    ++id;
    const int left = at[static_cast<std::size_t>(i)];
    const int right = at[static_cast<std::size_t>(i) + 1];
    const bool left_over = letter > 0;
    events[static_cast<std::size_t>(left)].push_back(
        {id, left_over ? End::tail : End::head});
    events[static_cast<std::size_t>(right)].push_back(
        {id, left_over ? End::head : End::tail});
    signs[id] = letter > 0 ? Sign::plus : Sign::minus;
    std::swap(at[static_cast<std::size_t>(i)], at[static_cast<std::size_t>(i) + 1]);
  }
  // end_pos[s] = final position of strand s.
  std::vector<int> end_pos(static_cast<std::size_t>(strands));
  for (int p = 0; p < strands; ++p) end_pos[static_cast<std::size_t>(at[static_cast<std::size_t>(p)])] = p;

  std::vector<bool> used(static_cast<std::size_t>(strands), false);
  std::vector<CircleSeq> comps;
  for (int start = 0; start < strands; ++start) {
    if (used[static_cast<std::size_t>(start)]) continue;
    CircleSeq seq;
    int s = start;
    while (!used[static_cast<std::size_t>(s)]) {
      used[static_cast<std::size_t>(s)] = true;
      const auto& ev = events[static_cast<std::size_t>(s)];
      seq.insert(seq.end(), ev.begin(), ev.end());
      s = end_pos[static_cast<std::size_t>(s)];
    }
    comps.push_back(std::move(seq));
  }
  if (comps.size() != 2) {
    throw std::invalid_argument("braid closure has " + std::to_string(comps.size()) +
                                " components, expected 2");
  }
  return GaussDiagram({comps[0], comps[1]}, signs);
}

PlatCircles plat_circles(int strands, const std::vector<int>& word) {
  if (strands < 2 || strands % 2 != 0) {
    throw std::invalid_argument("plat needs an even positive strand count");
  }
  const auto S = static_cast<std::size_t>(strands);
  struct Event {
    int id;
    bool over;
    bool moves_right;
  };
  std::vector<int> at(S);
  for (std::size_t p = 0; p < S; ++p) at[p] = static_cast<int>(p);
  std::vector<std::vector<Event>> events(S);
  int id = 0;
  for (int letter : word) {
    const int i = std::abs(letter) - 1;
    if (letter == 0 || i + 1 >= strands) {
      throw std::invalid_argument("plat letter " + std::to_string(letter) + " out of range");
    }
    ++id;
    const auto ui = static_cast<std::size_t>(i);
    const bool left_over = letter > 0;
    events[static_cast<std::size_t>(at[ui])].push_back({id, left_over, true});
    events[static_cast<std::size_t>(at[ui + 1])].push_back({id, !left_over, false});
    std::swap(at[ui], at[ui + 1]);
  }
  std::vector<int> end_pos(S);
  for (std::size_t p = 0; p < S; ++p) end_pos[static_cast<std::size_t>(at[p])] = static_cast<int>(p);
  std::vector<int> start_at_bottom(S);
  for (std::size_t s = 0; s < S; ++s) start_at_bottom[static_cast<std::size_t>(end_pos[s])] = static_cast<int>(s);

  // Direction vectors (x right, y up) of each passage, keyed by crossing.
  struct Pass {
    int dx = 0, dy = 0;
    bool set = false;
  };
  std::map<int, std::pair<Pass, Pass>> geo;  // over, under
  std::vector<bool> used(S, false);
  std::vector<CircleSeq> comps;
  for (std::size_t start = 0; start < S; ++start) {
    if (used[start]) continue;
    CircleSeq seq;
    // Walk down strand s, cross the bottom cap, walk up, cross the top cap.
    std::size_t s = start;
    bool down = true;
    while (!used[s]) {
      used[s] = true;
      const auto& ev = events[s];
      auto visit = [&](const Event& e) {
        const int dx = (e.moves_right == down) ? 1 : -1;
        const int dy = down ? -1 : 1;
        auto& g = geo[e.id];
        (e.over ? g.first : g.second) = {dx, dy, true};
        seq.push_back({e.id, e.over ? End::tail : End::head});
      };
      if (down) {
        for (const auto& e : ev) visit(e);
        const int partner = end_pos[s] ^ 1;
        s = static_cast<std::size_t>(start_at_bottom[static_cast<std::size_t>(partner)]);
      } else {
        for (auto it = ev.rbegin(); it != ev.rend(); ++it) visit(*it);
        s = static_cast<std::size_t>(static_cast<int>(s) ^ 1);
      }
      down = !down;
    }
    comps.push_back(std::move(seq));
  }
  std::map<int, Sign> signs;
  for (const auto& [k, g] : geo) {
    const int cross = g.first.dx * g.second.dy - g.first.dy * g.second.dx;
    signs[k] = cross < 0 ? Sign::plus : Sign::minus;
  }
  return {std::move(comps), std::move(signs)};
}

GaussDiagram plat_closure(int strands, const std::vector<int>& word) {
  auto [comps, signs] = plat_circles(strands, word);
  if (comps.size() != 2) {
    throw std::invalid_argument("plat closure has " + std::to_string(comps.size()) +
                                " components, expected 2");
  }
  return GaussDiagram({comps[0], comps[1]}, signs);
}

GaussDiagram make_hopf(Sign first, Sign second) {
  if (first == Sign::wild || second == Sign::wild) {
    throw std::invalid_argument("hopf signs must be + or -");
  }
  // Two overlapping round circles crossing at P (sign `first`) and Q (sign
  // `second`).  Equal signs force the alternating (Hopf) diagram; unequal
  // signs force one circle over the other, which is a diagram of the unlink.
  // Circle 1 meets Q then P, circle 2 meets P then Q.
  const bool one_over_p = first == Sign::plus;
  const bool one_over_q = second == Sign::minus;
  auto end_for = [](bool over) { return over ? End::tail : End::head; };
  CircleSeq c1{{2, end_for(one_over_q)}, {1, end_for(one_over_p)}};
  CircleSeq c2{{1, end_for(!one_over_p)}, {2, end_for(!one_over_q)}};
  return GaussDiagram({c1, c2}, {{1, first}, {2, second}});
}

GaussDiagram make_twist_chain(int twists, Sign sign) {
  if (twists < 1) throw std::invalid_argument("twist_chain needs at least one twist");
  if (sign == Sign::wild) throw std::invalid_argument("twist_chain sign must be + or -");
  std::vector<int> word(static_cast<std::size_t>(2 * twists), sign == Sign::plus ? 1 : -1);
  return braid_closure(2, word);
}

GaussDiagram make_L_mn(int m, int n) {
  if (m < 1 || n < 1 || m % 2 == 0 || n % 2 == 0) {
    throw std::invalid_argument("L(m,n) needs odd positive m and n, got (" +
                                std::to_string(m) + "," + std::to_string(n) + ")");
  }
  // 8-plat.  Positions 1-4 carry the first component, a twist knot whose
  // twist region is sigma_2^m; positions 5-8 the second, a figure-eight
  // type knot with twist region sigma_6^n.  The four sigma_4 letters link
  // the two with linking number +1.
  std::vector<int> word{4};
  word.insert(word.end(), static_cast<std::size_t>(m), 2);
  for (int x : {-4, -1, 2}) word.push_back(x);
  word.insert(word.end(), static_cast<std::size_t>(n), 6);
  for (int x : {5, -6, -4, -4}) word.push_back(x);
  return plat_closure(8, word);
}

std::vector<std::pair<std::string, GaussDiagram>> standard_seeds() {
  std::vector<std::pair<std::string, GaussDiagram>> out;
  out.emplace_back("unlink", GaussDiagram());
  for (Sign a : {Sign::plus, Sign::minus}) {
    for (Sign b : {Sign::plus, Sign::minus}) {
      out.emplace_back(std::string("hopf(") + sign_char(a) + "," + sign_char(b) + ")",
                       make_hopf(a, b));
    }
  }
  for (auto [m, n] : {std::pair{1, 1}, {3, 1}, {1, 3}, {3, 3}}) {
    out.emplace_back("L(" + std::to_string(m) + "," + std::to_string(n) + ")",
                     make_L_mn(m, n));
  }
  return out;
}

std::vector<GaussDiagram> solver_seeds(std::uint64_t seed, std::size_t closures) {
  std::vector<GaussDiagram> out;
  for (const auto& [name, d] : standard_seeds()) out.push_back(d);
  for (int t = 1; t <= 3; ++t) {
    out.push_back(make_twist_chain(t, Sign::plus));
    out.push_back(make_twist_chain(t, Sign::minus));
  }
  // Random braid and plat closures bring R3 triangles and antiparallel
  // strands that walks from the families above rarely produce.
  Rng rng(seed);
  std::size_t braids = 0, plats = 0;
  while (braids < closures || plats < closures) {
    const bool plat = braids >= closures || (plats < closures && rng.coin());
    const int strands = plat ? 4 + 2 * static_cast<int>(rng.below(2))
                             : 3 + static_cast<int>(rng.below(2));
    const std::size_t len = 4 + rng.below(7);
    std::vector<int> word;
    for (std::size_t i = 0; i < len; ++i) {
      const int g = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(strands - 1)));
      word.push_back(rng.coin() ? g : -g);
    }
    try {
      out.push_back(plat ? plat_closure(strands, word) : braid_closure(strands, word));
    } catch (const std::invalid_argument&) {
      continue;  // wrong number of components
    }
    ++(plat ? plats : braids);
  }
  return out;
}

namespace {

// Table entries as functions of (m, n).
const std::map<std::string, BracketValue (*)(int, int)>& table_entries() {
  static const std::map<std::string, BracketValue (*)(int, int)> entries{
      {"f1p", [](int, int n) { return BracketValue(-n); }},
      {"f2p", [](int, int n) { return BracketValue(-n); }},
      {"f1m", [](int m, int) { return BracketValue(m); }},
      {"f2m", [](int m, int) { return BracketValue(m); }},
      {"A", [](int m, int n) { return BracketValue(m - n); }},
      {"B", [](int m, int n) { return BracketValue(m - n); }},
      {"CD", [](int, int) { return BracketValue(0); }},
      {"triple", [](int m, int n) { return BracketValue(2 * (m - n)); }},
  };
  return entries;
}

}  // namespace

bool has_expected(const std::string& formula_name) {
  return table_entries().count(formula_name) > 0;
}

BracketValue expected_value(const std::string& formula_name, int m, int n) {
  const auto it = table_entries().find(formula_name);
  if (it == table_entries().end()) {
    throw std::invalid_argument("no table entry for formula '" + formula_name + "'");
  }
  return it->second(m, n);
}

std::vector<Table1Row> table1_report(const std::vector<Formula>& formulas,
                                     int max_param) {
  std::vector<Table1Row> rows;
  for (int m = 1; m <= max_param; m += 2) {
    for (int n = 1; n <= max_param; n += 2) {
      const GaussDiagram d = make_L_mn(m, n);
      for (const auto& f : formulas) {
        Table1Row r{m, n, f.name, evaluate(f, d), 0};
        if (has_expected(f.name)) r.expected = expected_value(f.name, m, n);
        rows.push_back(std::move(r));
      }
    }
  }
  return rows;
}

std::string table1_csv(const std::vector<Table1Row>& rows) {
  std::string out = "family,m,n,formula,value\n";
  for (const auto& r : rows) {
    out += "L_mn," + std::to_string(r.m) + "," + std::to_string(r.n) + "," + r.formula +
           "," + to_string(r.value) + "\n";
  }
  return out;
}

std::string table1_json(const std::vector<Table1Row>& rows) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["family"] = "L_mn";
    j["m"] = r.m;
    j["n"] = r.n;
    j["formula"] = r.formula;
    j["value"] = to_string(r.value);
    if (has_expected(r.formula)) {
      j["expected"] = to_string(r.expected);
      j["match"] = r.value == r.expected;
    }
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

GaussDiagram generate(const FamilySpec& spec) {
  switch (spec.family) {
    case Family::L_mn: return make_L_mn(spec.m, spec.n);
    case Family::hopf: return make_hopf(spec.first, spec.second);
    case Family::unlink: return GaussDiagram();
    case Family::twist_chain: return make_twist_chain(spec.m, spec.first);
  }
  throw std::invalid_argument("unknown family");
}

}  // namespace gdf
