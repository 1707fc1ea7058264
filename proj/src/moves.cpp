#include "gdf/moves.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "gdf/planar.hpp"
#include "gdf/rng.hpp"

namespace gdf {

bool is_r3(MoveKind k) noexcept {
  return k == MoveKind::R3b || k == MoveKind::R3m || k == MoveKind::R3t ||
         k == MoveKind::R3s;
}

std::vector<Direction> directions_of(MoveKind k) {
  if (is_r3(k)) return {Direction::forward, Direction::backward};
  return {Direction::insert, Direction::remove};
}

int arrow_delta(MoveKind k, Direction dir) noexcept {
  if (is_r3(k)) return 0;
  const int n = k == MoveKind::R2 ? 2 : 1;
  return dir == Direction::insert ? n : -n;
}

std::string to_string(MoveKind k) {
  switch (k) {
    case MoveKind::R1a: return "R1a";
    case MoveKind::R1b: return "R1b";
    case MoveKind::R2: return "R2";
    case MoveKind::R3b: return "R3b";
    case MoveKind::R3m: return "R3m";
    case MoveKind::R3t: return "R3t";
    case MoveKind::R3s: return "R3s";
  }
  return "?";
}

std::string to_string(Direction d) {
  switch (d) {
    case Direction::insert: return "insert";
    case Direction::remove: return "remove";
    case Direction::forward: return "forward";
    case Direction::backward: return "backward";
  }
  return "?";
}

MoveKind parse_kind(std::string_view s) {
  for (MoveKind k : kAllKinds) {
    if (to_string(k) == s) return k;
  }
  throw std::invalid_argument("unknown move kind '" + std::string(s) + "'");
}

Direction parse_direction(std::string_view s) {
  for (Direction d : {Direction::insert, Direction::remove, Direction::forward,
                      Direction::backward}) {
    if (to_string(d) == s) return d;
  }
  throw std::invalid_argument("unknown move direction '" + std::string(s) + "'");
}

std::string to_string(const MoveInstance& m) {
  std::string out = to_string(m.kind) + " " + to_string(m.direction);
  for (const auto& g : m.gaps) {
    out += " g" + std::to_string(g.component + 1) + ":" + std::to_string(g.index);
  }
  for (int id : m.arrows) out += " a" + std::to_string(id);
  if (m.under_first) out += " under-first";
  return out;
}

MoveInstance parse_move(std::string_view line) {
  std::istringstream is{std::string(line)};
  std::string kind, dir;
  if (!(is >> kind >> dir)) {
    throw std::invalid_argument("malformed move record '" + std::string(line) + "'");
  }
  MoveInstance m;
  m.kind = parse_kind(kind);
  m.direction = parse_direction(dir);
  const auto allowed = directions_of(m.kind);
  if (std::find(allowed.begin(), allowed.end(), m.direction) == allowed.end()) {
    throw std::invalid_argument("direction " + dir + " not valid for " + kind);
  }
  for (std::string tok; is >> tok;) {
    try {
      if (tok == "under-first") {
        m.under_first = true;
      } else if (tok.size() > 1 && tok[0] == 'a') {
        m.arrows.push_back(std::stoi(tok.substr(1)));
      } else if (tok.size() > 3 && tok[0] == 'g' && tok[2] == ':' &&
                 (tok[1] == '1' || tok[1] == '2')) {
        m.gaps.push_back(Gap{tok[1] - '1', std::stoi(tok.substr(3))});
      } else {
        throw std::invalid_argument(tok);
      }
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed site token '" + tok + "'");
    }
  }
  return m;
}

namespace {

class Locator {
 public:
  explicit Locator(const GaussDiagram& d) : d_(d) {}

  const Token& at(const Endpoint& e) const {
    return d_.circle(e.component)[static_cast<std::size_t>(e.position)];
  }
  Endpoint next(const Endpoint& e) const {
    const int n = static_cast<int>(d_.circle(e.component).size());
    return {e.component, (e.position + 1) % n};
  }
  Endpoint prev(const Endpoint& e) const {
    const int n = static_cast<int>(d_.circle(e.component).size());
    return {e.component, (e.position + n - 1) % n};
  }
  Endpoint where(int id, End end) const {
    const Arrow& a = d_.arrow(id);
    return end == End::tail ? a.tail : a.head;
  }
  // True when slot `b` immediately follows slot `a` on the same circle.
  bool follows(const Endpoint& a, const Endpoint& b) const {
    return a.component == b.component && next(a) == b;
  }
  Sign sign(int id) const { return d_.arrow(id).sign; }

 private:
  const GaussDiagram& d_;
};

int gap_count(const GaussDiagram& d, int c) {
  return std::max<int>(static_cast<int>(d.circle(c).size()), 1);
}

std::vector<Gap> all_gaps(const GaussDiagram& d) {
  std::vector<Gap> gaps;
  for (int c = 0; c < kComponents; ++c) {
    for (int i = 0; i < gap_count(d, c); ++i) gaps.push_back({c, i});
  }
  return gaps;
}

bool valid_gap(const GaussDiagram& d, const Gap& g) {
  return g.component >= 0 && g.component < kComponents && g.index >= 0 &&
         g.index < gap_count(d, g.component);
}

bool r1_removable(const Locator& loc, const GaussDiagram& d, MoveKind kind, int id) {
  const Arrow& a = d.arrow(id);
  if (kind == MoveKind::R1a) {
    return a.sign == Sign::minus && loc.follows(a.tail, a.head);
  }
  return a.sign == Sign::plus && loc.follows(a.head, a.tail);
}

bool r2_removable(const Locator& loc, const GaussDiagram& d, int p, int q) {
  if (p == q || !d.index_of(p) || !d.index_of(q)) return false;
  const Arrow& ap = d.arrow(p);
  const Arrow& aq = d.arrow(q);
  return ap.sign == Sign::plus && aq.sign == Sign::minus &&
         loc.follows(ap.tail, aq.tail) && loc.follows(ap.head, aq.head);
}

// On a classical diagram the finger move needs a face that lies to the
// right of the over arc and to the left of the under arc.  Arcs in different
// pieces can always be brought next to each other.  Virtual input keeps the
// unrestricted Gauss-level move.
bool r2_realizable(const GaussDiagram& d, const std::optional<FaceMap>& faces,
                   const Gap& over, const Gap& under) {
  if (!faces) return true;
  // A lone round circle has different faces on its two sides.
  if (over.component == under.component && d.circle(over.component).empty()) {
    return false;
  }
  if (d.circle(over.component).empty() || d.circle(under.component).empty() ||
      !faces->same_piece(over.component, under.component)) {
    return true;
  }
  return faces->right_face(over.component, over.index) ==
         faces->left_face(under.component, under.index);
}

std::optional<FaceMap> classical_faces(const GaussDiagram& d) {
  FaceMap f(d);
  if (!f.planar()) return std::nullopt;
  return f;
}

MoveKind r3_kind(int top, int middle, int bottom) {
  if (top == middle && middle == bottom) return MoveKind::R3s;
  if (middle == bottom) return MoveKind::R3t;
  if (top == bottom) return MoveKind::R3m;
  return MoveKind::R3b;
}

// Checks the R3 local picture for arrows a (top->middle), b (top->bottom),
// c (middle->bottom) and returns the kind it realizes.
std::optional<MoveKind> r3_match(const Locator& loc, const GaussDiagram& d, int a,
                                 int b, int c, Direction dir) {
  if (a == b || b == c || a == c) return std::nullopt;
  if (!d.index_of(a) || !d.index_of(b) || !d.index_of(c)) return std::nullopt;
  if (loc.sign(a) != Sign::plus || loc.sign(b) != Sign::plus ||
      loc.sign(c) != Sign::minus) {
    return std::nullopt;
  }
  const Endpoint ta = loc.where(a, End::tail), ha = loc.where(a, End::head);
  const Endpoint tb = loc.where(b, End::tail), hb = loc.where(b, End::head);
  const Endpoint tc = loc.where(c, End::tail), hc = loc.where(c, End::head);
  bool ok;
  if (dir == Direction::forward) {
    ok = loc.follows(ta, tb) && loc.follows(tc, ha) && loc.follows(hc, hb);
  } else {
    ok = loc.follows(tb, ta) && loc.follows(ha, tc) && loc.follows(hb, hc);
  }
  if (!ok) return std::nullopt;
  return r3_kind(ta.component, tc.component, hb.component);
}

bool applicable(const GaussDiagram& d, const MoveInstance& m) {
  const Locator loc(d);
  const auto dirs = directions_of(m.kind);
  if (std::find(dirs.begin(), dirs.end(), m.direction) == dirs.end()) return false;
  if (m.direction == Direction::insert) {
    const std::size_t want = m.kind == MoveKind::R2 ? 2 : 1;
    if (m.gaps.size() != want || !m.arrows.empty()) return false;
    for (const auto& g : m.gaps) {
      if (!valid_gap(d, g)) return false;
    }
    if (m.under_first && (m.kind != MoveKind::R2 || m.gaps[0] != m.gaps[1])) {
      return false;
    }
    return m.kind != MoveKind::R2 ||
           r2_realizable(d, classical_faces(d), m.gaps[0], m.gaps[1]);
  }
  if (!m.gaps.empty() || m.under_first) return false;
  for (int id : m.arrows) {
    if (!d.index_of(id)) return false;
  }
  switch (m.kind) {
    case MoveKind::R1a:
    case MoveKind::R1b:
      return m.arrows.size() == 1 && r1_removable(loc, d, m.kind, m.arrows[0]);
    case MoveKind::R2:
      return m.arrows.size() == 2 && r2_removable(loc, d, m.arrows[0], m.arrows[1]);
    default: {
      if (m.arrows.size() != 3) return false;
      auto k = r3_match(loc, d, m.arrows[0], m.arrows[1], m.arrows[2], m.direction);
      return k && *k == m.kind;
    }
  }
}

}  // namespace

std::vector<MoveInstance> enumerate_sites(const GaussDiagram& d, MoveKind kind,
                                          Direction direction) {
  std::vector<MoveInstance> out;
  const auto dirs = directions_of(kind);
  if (std::find(dirs.begin(), dirs.end(), direction) == dirs.end()) return out;
  const Locator loc(d);

  if (kind == MoveKind::R1a || kind == MoveKind::R1b) {
    if (direction == Direction::insert) {
      for (const auto& g : all_gaps(d)) out.push_back({kind, direction, {g}, false, {}});
    } else {
      for (const auto& a : d.arrows()) {
        if (r1_removable(loc, d, kind, a.id)) {
          out.push_back({kind, direction, {}, false, {a.id}});
        }
      }
    }
    return out;
  }

  if (kind == MoveKind::R2) {
    if (direction == Direction::insert) {
      const auto gaps = all_gaps(d);
      const auto faces = classical_faces(d);
      for (const auto& over : gaps) {
        for (const auto& under : gaps) {
          if (!r2_realizable(d, faces, over, under)) continue;
          out.push_back({kind, direction, {over, under}, false, {}});
          if (over == under) out.push_back({kind, direction, {over, under}, true, {}});
        }
      }
    } else {
      for (const auto& a : d.arrows()) {
        if (a.sign != Sign::plus) continue;
        const int q = loc.at(loc.next(a.tail)).id;
        if (r2_removable(loc, d, a.id, q)) {
          out.push_back({kind, direction, {}, false, {a.id, q}});
        }
      }
    }
    return out;
  }

  // R3: anchor on arrow a and follow adjacencies to b and c.
  for (const auto& arrow_a : d.arrows()) {
    if (arrow_a.sign != Sign::plus) continue;
    const Token& nb = direction == Direction::forward ? loc.at(loc.next(arrow_a.tail))
                                                      : loc.at(loc.prev(arrow_a.tail));
    if (nb.end != End::tail) continue;
    const int b = nb.id;
    const Endpoint hb = loc.where(b, End::head);
    const Token& nc =
        direction == Direction::forward ? loc.at(loc.prev(hb)) : loc.at(loc.next(hb));
    if (nc.end != End::head) continue;
    const int c = nc.id;
    auto k = r3_match(loc, d, arrow_a.id, b, c, direction);
    if (k && *k == kind) out.push_back({kind, direction, {}, false, {arrow_a.id, b, c}});
  }
  return out;
}

GaussDiagram apply(const GaussDiagram& d, const MoveInstance& m) {
  if (!applicable(d, m)) {
    throw std::invalid_argument("move '" + to_string(m) + "' is not applicable");
  }
  std::array<CircleSeq, kComponents> circles{d.circle(0), d.circle(1)};
  auto signs = d.sign_map();

  if (m.direction == Direction::remove) {
    return delete_arrows(d, m.arrows);
  }
  if (is_r3(m.kind)) {
    const Locator loc(d);
    const int a = m.arrows[0], b = m.arrows[1], c = m.arrows[2];
    const std::pair<Endpoint, Endpoint> pairs[] = {
        {loc.where(a, End::tail), loc.where(b, End::tail)},
        {loc.where(c, End::tail), loc.where(a, End::head)},
        {loc.where(c, End::head), loc.where(b, End::head)}};
    for (const auto& [x, y] : pairs) {
      std::swap(circles[x.component][static_cast<std::size_t>(x.position)],
                circles[y.component][static_cast<std::size_t>(y.position)]);
    }
    return GaussDiagram(std::move(circles), signs);
  }

  const int p = d.max_id() + 1;
  auto insert_at = [&](const Gap& g, std::initializer_list<Token> toks) {
    auto& c = circles[g.component];
    c.insert(c.begin() + g.index, toks);
  };
  if (m.kind == MoveKind::R1a || m.kind == MoveKind::R1b) {
    if (m.kind == MoveKind::R1a) {
      insert_at(m.gaps[0], {{p, End::tail}, {p, End::head}});
      signs[p] = Sign::minus;
    } else {
      insert_at(m.gaps[0], {{p, End::head}, {p, End::tail}});
      signs[p] = Sign::plus;
    }
    return GaussDiagram(std::move(circles), signs);
  }

  const int q = p + 1;
  signs[p] = Sign::plus;
  signs[q] = Sign::minus;
  const Gap& over = m.gaps[0];
  const Gap& under = m.gaps[1];
  const Token tails[] = {{p, End::tail}, {q, End::tail}};
  const Token heads[] = {{p, End::head}, {q, End::head}};
  if (over == under) {
    if (m.under_first) {
      insert_at(over, {heads[0], heads[1], tails[0], tails[1]});
    } else {
      insert_at(over, {tails[0], tails[1], heads[0], heads[1]});
    }
  } else if (over.component == under.component && over.index < under.index) {
    insert_at(under, {heads[0], heads[1]});
    insert_at(over, {tails[0], tails[1]});
  } else {
    insert_at(over, {tails[0], tails[1]});
    insert_at(under, {heads[0], heads[1]});
  }
  return GaussDiagram(std::move(circles), signs);
}

namespace {

// Gap that re-inserting before slot `e` would use once `removed` ids are gone.
Gap gap_after_removal(const GaussDiagram& d, const Endpoint& e,
                      const std::vector<int>& removed) {
  const auto& c = d.circle(e.component);
  int before = 0, remaining = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const bool gone = std::find(removed.begin(), removed.end(), c[i].id) != removed.end();
    if (gone) continue;
    ++remaining;
    if (static_cast<int>(i) < e.position) ++before;
  }
  return {e.component, remaining == 0 ? 0 : before % remaining};
}

}  // namespace

MoveInstance inverse(const GaussDiagram& d, const MoveInstance& m) {
  if (!applicable(d, m)) {
    throw std::invalid_argument("move '" + to_string(m) + "' is not applicable");
  }
  MoveInstance inv;
  inv.kind = m.kind;
  if (is_r3(m.kind)) {
    inv.direction =
        m.direction == Direction::forward ? Direction::backward : Direction::forward;
    inv.arrows = m.arrows;
    return inv;
  }
  if (m.direction == Direction::insert) {
    inv.direction = Direction::remove;
    const int p = d.max_id() + 1;
    inv.arrows = m.kind == MoveKind::R2 ? std::vector<int>{p, p + 1} : std::vector<int>{p};
    return inv;
  }
  inv.direction = Direction::insert;
  const Locator loc(d);
  if (m.kind == MoveKind::R1a || m.kind == MoveKind::R1b) {
    const Arrow& a = d.arrow(m.arrows[0]);
    const Endpoint first = m.kind == MoveKind::R1a ? a.tail : a.head;
    inv.gaps = {gap_after_removal(d, first, m.arrows)};
    return inv;
  }
  const Arrow& ap = d.arrow(m.arrows[0]);
  inv.gaps = {gap_after_removal(d, ap.tail, m.arrows),
              gap_after_removal(d, ap.head, m.arrows)};
  if (inv.gaps[0] == inv.gaps[1]) {
    const Arrow& aq = d.arrow(m.arrows[1]);
    inv.under_first = loc.follows(aq.head, ap.tail) && !loc.follows(aq.tail, ap.head);
  }
  return inv;
}

std::vector<int> touched_arrows(const GaussDiagram& d, const MoveInstance& m) {
  if (m.direction == Direction::insert) {
    const int p = d.max_id() + 1;
    return m.kind == MoveKind::R2 ? std::vector<int>{p, p + 1} : std::vector<int>{p};
  }
  return m.arrows;
}

std::optional<MoveInstance> random_move(const GaussDiagram& d, Rng& rng,
                                        const WalkConfig& cfg) {
  struct Class {
    MoveKind kind;
    Direction dir;
    std::vector<MoveInstance> sites;
  };
  std::vector<Class> classes;
  for (MoveKind k : kAllKinds) {
    if (!cfg.kinds.empty() &&
        std::find(cfg.kinds.begin(), cfg.kinds.end(), k) == cfg.kinds.end()) {
      continue;
    }
    for (Direction dir : directions_of(k)) {
      auto sites = enumerate_sites(d, k, dir);
      if (!sites.empty()) classes.push_back({k, dir, std::move(sites)});
    }
  }
  if (d.size() >= cfg.size_ceiling) {
    std::vector<Class> shrinking;
    for (auto& c : classes) {
      if (arrow_delta(c.kind, c.dir) <= 0) shrinking.push_back(std::move(c));
    }
    if (!shrinking.empty()) classes = std::move(shrinking);
  }
  if (classes.empty()) return std::nullopt;
  auto& cls = classes[rng.below(classes.size())];
  return cls.sites[rng.below(cls.sites.size())];
}

Walk random_walk(const GaussDiagram& d, std::size_t steps, std::uint64_t seed,
                 const WalkConfig& cfg) {
  Rng rng(seed);
  Walk walk;
  walk.diagrams.push_back(d);
  for (std::size_t i = 0; i < steps; ++i) {
    const GaussDiagram& cur = walk.diagrams.back();
    auto m = random_move(cur, rng, cfg);
    if (!m) continue;
    GaussDiagram next = apply(cur, *m);
    walk.moves.push_back(std::move(*m));
    walk.diagrams.push_back(std::move(next));
  }
  return walk;
}

std::string write_transcript(const std::vector<MoveInstance>& moves) {
  std::string out;
  for (const auto& m : moves) out += to_string(m) + "\n";
  return out;
}

std::vector<MoveInstance> parse_transcript(std::string_view text) {
  std::vector<MoveInstance> moves;
  std::size_t start = 0;
  int lineno = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    ++lineno;
    auto line = text.substr(start, nl - start);
    start = nl + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos || line[0] == '#') {
      continue;
    }
    try {
      moves.push_back(parse_move(line));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("transcript line " + std::to_string(lineno) + ": " +
                                  e.what());
    }
  }
  return moves;
}

std::vector<GaussDiagram> replay(const GaussDiagram& d,
                                 const std::vector<MoveInstance>& moves) {
  std::vector<GaussDiagram> out{d};
  for (const auto& m : moves) out.push_back(apply(out.back(), m));
  return out;
}

}  // namespace gdf
