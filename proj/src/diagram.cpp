#include "gdf/diagram.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace gdf {

char sign_char(Sign s) noexcept {
  switch (s) {
    case Sign::plus: return '+';
    case Sign::minus: return '-';
    case Sign::wild: return '?';
  }
  return '?';
}

namespace {

std::string located(const std::string& what, int line, int column) {
  if (line <= 0) return what;
  std::ostringstream os;
  os << "line " << line << ", column " << column << ": " << what;
  return os.str();
}

}  // namespace

DiagramError::DiagramError(const std::string& what, int line, int column)
    : std::runtime_error(located(what, line, column)),
      line_(line),
      column_(column) {}

GaussDiagram::GaussDiagram(std::array<CircleSeq, kComponents> circles,
                           const std::map<int, Sign>& signs)
    : circles_(std::move(circles)) {
  struct Seen {
    std::optional<Endpoint> tail, head;
  };
  std::map<int, Seen> seen;
  for (int c = 0; c < kComponents; ++c) {
    for (std::size_t p = 0; p < circles_[c].size(); ++p) {
      const Token& t = circles_[c][p];
      if (t.id <= 0) throw DiagramError("arrow ids must be positive");
      auto& s = seen[t.id];
      auto& slot = t.end == End::tail ? s.tail : s.head;
      if (slot) {
        throw DiagramError("arrow " + std::to_string(t.id) + " has two " +
                           (t.end == End::tail ? "tails" : "heads"));
      }
      slot = Endpoint{c, static_cast<int>(p)};
    }
  }
  for (const auto& [id, s] : seen) {
    if (!s.tail) throw DiagramError("arrow " + std::to_string(id) + " has no tail");
    if (!s.head) throw DiagramError("arrow " + std::to_string(id) + " has no head");
    auto it = signs.find(id);
    if (it == signs.end()) {
      throw DiagramError("arrow " + std::to_string(id) + " has no sign");
    }
    arrows_.push_back(Arrow{id, *s.tail, *s.head, it->second});
  }
  for (const auto& [id, sign] : signs) {
    if (!seen.contains(id)) {
      throw DiagramError("sign given for unknown arrow " + std::to_string(id));
    }
  }
}

std::optional<std::size_t> GaussDiagram::index_of(int id) const noexcept {
  auto it = std::lower_bound(arrows_.begin(), arrows_.end(), id,
                             [](const Arrow& a, int v) { return a.id < v; });
  if (it == arrows_.end() || it->id != id) return std::nullopt;
  return static_cast<std::size_t>(it - arrows_.begin());
}

const Arrow& GaussDiagram::arrow(int id) const {
  auto idx = index_of(id);
  if (!idx) throw std::invalid_argument("unknown arrow id " + std::to_string(id));
  return arrows_[*idx];
}

bool GaussDiagram::is_fully_signed() const noexcept {
  return wildcard_count() == 0;
}

std::size_t GaussDiagram::wildcard_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      arrows_.begin(), arrows_.end(),
      [](const Arrow& a) { return a.sign == Sign::wild; }));
}

std::map<int, Sign> GaussDiagram::sign_map() const {
  std::map<int, Sign> m;
  for (const auto& a : arrows_) m[a.id] = a.sign;
  return m;
}

GaussDiagram GaussDiagram::with_sign(int id, Sign sign) const {
  auto signs = sign_map();
  auto it = signs.find(id);
  if (it == signs.end()) {
    throw std::invalid_argument("unknown arrow id " + std::to_string(id));
  }
  it->second = sign;
  return GaussDiagram(circles_, signs);
}

// ---------------------------------------------------------------- parsing

namespace {

struct Line {
  std::string_view text;
  int number;
};

std::vector<Line> split_lines(std::string_view text, int first_line) {
  std::vector<Line> lines;
  std::size_t start = 0;
  int number = first_line;
  while (start <= text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      if (start < text.size()) lines.push_back({text.substr(start), number});
      break;
    }
    lines.push_back({text.substr(start, nl - start), number});
    start = nl + 1;
    ++number;
  }
  // Trailing blank lines are tolerated.
  while (!lines.empty() &&
         lines.back().text.find_first_not_of(" \t\r") == std::string_view::npos) {
    lines.pop_back();
  }
  return lines;
}

struct Word {
  std::string_view text;
  int column;
};

std::vector<Word> split_words(std::string_view s) {
  std::vector<Word> words;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) words.push_back({s.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  return words;
}

int parse_id(std::string_view s, int line, int column) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || value <= 0 ||
      s.front() == '+' || s.front() == '-') {
    throw DiagramError("malformed arrow id '" + std::string(s) + "'", line, column);
  }
  return value;
}

std::string_view expect_keyword(const Line& line, std::string_view keyword) {
  if (line.text.substr(0, keyword.size()) != keyword) {
    throw DiagramError("expected '" + std::string(keyword) + "'", line.number, 1);
  }
  return line.text.substr(keyword.size());
}

}  // namespace

GaussDiagram parse_diagram(std::string_view text, bool allow_wild, int first_line) {
  auto lines = split_lines(text, first_line);
  if (lines.size() != 3) {
    int at = lines.empty() ? first_line : lines.back().number;
    throw DiagramError("expected exactly three lines (comp1, comp2, signs), got " +
                           std::to_string(lines.size()),
                       at, 1);
  }

  std::array<CircleSeq, kComponents> circles;
  struct Origin {
    int line = 0, column = 0;
  };
  std::map<int, std::array<std::optional<Origin>, 2>> ends;
  static constexpr std::string_view kCompKeywords[] = {"comp1:", "comp2:"};

  for (int c = 0; c < kComponents; ++c) {
    const Line& line = lines[c];
    auto rest = expect_keyword(line, kCompKeywords[c]);
    const int offset = static_cast<int>(kCompKeywords[c].size());
    for (const auto& w : split_words(rest)) {
      const int col = w.column + offset;
      if (w.text.size() < 2 || (w.text[0] != 'T' && w.text[0] != 'H')) {
        throw DiagramError("malformed token '" + std::string(w.text) +
                               "' (expected T<id> or H<id>)",
                           line.number, col);
      }
      const End end = w.text[0] == 'T' ? End::tail : End::head;
      const int id = parse_id(w.text.substr(1), line.number, col + 1);
      auto& slot = ends[id][static_cast<int>(end)];
      if (slot) {
        throw DiagramError("arrow " + std::to_string(id) + " has a duplicate " +
                               (end == End::tail ? "tail" : "head"),
                           line.number, col);
      }
      slot = Origin{line.number, col};
      circles[c].push_back(Token{id, end});
    }
  }

  const Line& sign_line = lines[2];
  auto rest = expect_keyword(sign_line, "signs:");
  std::map<int, Sign> signs;
  for (const auto& w : split_words(rest)) {
    const int col = w.column + 6;
    auto colon = w.text.find(':');
    if (colon == std::string_view::npos || colon + 2 != w.text.size()) {
      throw DiagramError("malformed sign entry '" + std::string(w.text) +
                             "' (expected <id>:<+|->)",
                         sign_line.number, col);
    }
    const int id = parse_id(w.text.substr(0, colon), sign_line.number, col);
    const char sc = w.text[colon + 1];
    Sign sign;
    if (sc == '+') {
      sign = Sign::plus;
    } else if (sc == '-') {
      sign = Sign::minus;
    } else if (sc == '?' && allow_wild) {
      sign = Sign::wild;
    } else {
      throw DiagramError(std::string("unknown sign '") + sc + "'", sign_line.number,
                         col + static_cast<int>(colon) + 1);
    }
    if (!ends.contains(id)) {
      throw DiagramError("sign given for unknown arrow " + std::to_string(id),
                         sign_line.number, col);
    }
    if (!signs.emplace(id, sign).second) {
      throw DiagramError("duplicate sign for arrow " + std::to_string(id),
                         sign_line.number, col);
    }
  }

  for (const auto& [id, e] : ends) {
    for (int k = 0; k < 2; ++k) {
      if (!e[k]) {
        const auto& other = *e[1 - k];
        throw DiagramError("arrow " + std::to_string(id) + " has no " +
                               (k == 0 ? "tail" : "head"),
                           other.line, other.column);
      }
    }
    if (!signs.contains(id)) {
      throw DiagramError("arrow " + std::to_string(id) + " has no sign",
                         sign_line.number, 1);
    }
  }
  return GaussDiagram(std::move(circles), signs);
}

// ------------------------------------------------------- canonical form

namespace detail {

namespace {

void put16(std::string& out, unsigned v) {
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>(v & 0xff));
}

// Key for one rotation pair; `relabel` is scratch space sized to the label
// count.
void build_key(std::span<const LocalToken> c1, std::size_t r1,
               std::span<const LocalToken> c2, std::size_t r2,
               std::span<const Sign> signs, std::vector<int>& relabel,
               std::string& out) {
  std::fill(relabel.begin(), relabel.end(), -1);
  int next = 0;
  out.clear();
  put16(out, static_cast<unsigned>(c1.size()));
  put16(out, static_cast<unsigned>(c2.size()));
  auto emit = [&](std::span<const LocalToken> c, std::size_t r) {
    const std::size_t n = c.size();
    for (std::size_t i = 0; i < n; ++i) {
      const LocalToken& t = c[(i + r) % n];
      int& l = relabel[t.label];
      if (l < 0) l = next++;
      put16(out, static_cast<unsigned>(l) * 2 + static_cast<unsigned>(t.end));
    }
  };
  emit(c1, r1);
  emit(c2, r2);
  std::string sign_part(signs.size(), '\0');
  for (std::size_t label = 0; label < signs.size(); ++label) {
    sign_part[static_cast<std::size_t>(relabel[label])] =
        static_cast<char>(to_int(signs[label]) + 1);
  }
  out += sign_part;
}

}  // namespace

CanonicalForm best_rotation(std::span<const LocalToken> c1,
                            std::span<const LocalToken> c2,
                            std::span<const Sign> signs, std::size_t* best_r1,
                            std::size_t* best_r2) {
  std::vector<int> relabel(signs.size());
  std::string best, candidate;
  bool have = false;
  const std::size_t n1 = std::max<std::size_t>(c1.size(), 1);
  const std::size_t n2 = std::max<std::size_t>(c2.size(), 1);
  for (std::size_t r1 = 0; r1 < n1; ++r1) {
    for (std::size_t r2 = 0; r2 < n2; ++r2) {
      build_key(c1, r1, c2, r2, signs, relabel, candidate);
      if (!have || candidate < best) {
        best.swap(candidate);
        have = true;
        if (best_r1) *best_r1 = r1;
        if (best_r2) *best_r2 = r2;
      }
    }
  }
  return best;
}

CanonicalForm canonical_key(std::span<const LocalToken> c1,
                            std::span<const LocalToken> c2,
                            std::span<const Sign> signs) {
  return best_rotation(c1, c2, signs, nullptr, nullptr);
}

}  // namespace detail

namespace {

struct LocalForm {
  std::array<std::vector<detail::LocalToken>, kComponents> circles;
  std::vector<Sign> signs;
};

LocalForm to_local(const GaussDiagram& d) {
  LocalForm f;
  f.signs.reserve(d.size());
  for (const auto& a : d.arrows()) f.signs.push_back(a.sign);
  for (int c = 0; c < kComponents; ++c) {
    for (const auto& t : d.circle(c)) {
      f.circles[c].push_back(
          {static_cast<std::uint16_t>(*d.index_of(t.id)), t.end});
    }
  }
  return f;
}

}  // namespace

CanonicalForm canonical_form(const GaussDiagram& d) {
  auto f = to_local(d);
  return detail::canonical_key(f.circles[0], f.circles[1], f.signs);
}

bool isomorphic(const GaussDiagram& a, const GaussDiagram& b) {
  return canonical_form(a) == canonical_form(b);
}

GaussDiagram rotate(const GaussDiagram& d, int component, std::size_t k) {
  std::array<CircleSeq, kComponents> circles{d.circle(0), d.circle(1)};
  auto& c = circles.at(component);
  if (!c.empty()) {
    std::rotate(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(k % c.size()),
                c.end());
  }
  return GaussDiagram(std::move(circles), d.sign_map());
}

GaussDiagram renumber(const GaussDiagram& d) {
  std::map<int, int> relabel;
  std::array<CircleSeq, kComponents> circles;
  for (int c = 0; c < kComponents; ++c) {
    for (const auto& t : d.circle(c)) {
      auto [it, fresh] = relabel.emplace(t.id, static_cast<int>(relabel.size()) + 1);
      circles[c].push_back(Token{it->second, t.end});
    }
  }
  std::map<int, Sign> signs;
  for (const auto& a : d.arrows()) signs[relabel.at(a.id)] = a.sign;
  return GaussDiagram(std::move(circles), signs);
}

std::string serialize(const GaussDiagram& d) {
  auto f = to_local(d);
  std::size_t r1 = 0, r2 = 0;
  detail::best_rotation(f.circles[0], f.circles[1], f.signs, &r1, &r2);
  const GaussDiagram canon = renumber(rotate(rotate(d, 0, r1), 1, r2));

  std::string out;
  for (int c = 0; c < kComponents; ++c) {
    out += c == 0 ? "comp1:" : "comp2:";
    for (const auto& t : canon.circle(c)) {
      out += ' ';
      out += t.end == End::tail ? 'T' : 'H';
      out += std::to_string(t.id);
    }
    out += '\n';
  }
  out += "signs:";
  for (const auto& a : canon.arrows()) {
    out += ' ';
    out += std::to_string(a.id);
    out += ':';
    out += sign_char(a.sign);
  }
  out += '\n';
  return out;
}

// ------------------------------------------------------------ mutation

GaussDiagram switch_crossing(const GaussDiagram& d, int id) {
  (void)d.arrow(id);
  std::array<CircleSeq, kComponents> circles{d.circle(0), d.circle(1)};
  for (auto& c : circles) {
    for (auto& t : c) {
      if (t.id == id) t.end = t.end == End::tail ? End::head : End::tail;
    }
  }
  auto signs = d.sign_map();
  signs[id] = negate(signs[id]);
  return GaussDiagram(std::move(circles), signs);
}

namespace {

GaussDiagram filter(const GaussDiagram& d, const std::set<int>& keep) {
  std::array<CircleSeq, kComponents> circles;
  for (int c = 0; c < kComponents; ++c) {
    for (const auto& t : d.circle(c)) {
      if (keep.contains(t.id)) circles[c].push_back(t);
    }
  }
  std::map<int, Sign> signs;
  for (const auto& a : d.arrows()) {
    if (keep.contains(a.id)) signs[a.id] = a.sign;
  }
  return GaussDiagram(std::move(circles), signs);
}

}  // namespace

GaussDiagram delete_arrows(const GaussDiagram& d, std::span<const int> ids) {
  std::set<int> keep;
  for (const auto& a : d.arrows()) keep.insert(a.id);
  for (int id : ids) {
    if (!keep.erase(id) && !d.index_of(id)) {
      throw std::invalid_argument("unknown arrow id " + std::to_string(id));
    }
  }
  return filter(d, keep);
}

GaussDiagram restrict_to(const GaussDiagram& d, std::span<const int> ids) {
  std::set<int> keep;
  for (int id : ids) {
    (void)d.arrow(id);
    keep.insert(id);
  }
  return filter(d, keep);
}

GaussDiagram swap_components(const GaussDiagram& d) {
  return GaussDiagram({d.circle(1), d.circle(0)}, d.sign_map());
}

}  // namespace gdf
