#include "gdf/formula_io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace gdf {

mpq_class parse_rational(std::string_view s) {
  auto bad = [&] {
    return std::invalid_argument("malformed rational '" + std::string(s) + "'");
  };
  if (s.empty()) throw bad();
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool slash = false;
  bool digit_before = false, digit_after = false;
  for (std::size_t j = i; j < s.size(); ++j) {
    if (s[j] == '/') {
      if (slash) throw bad();
      slash = true;
    } else if (std::isdigit(static_cast<unsigned char>(s[j]))) {
      (slash ? digit_after : digit_before) = true;
    } else {
      throw bad();
    }
  }
  if (!digit_before || (slash && !digit_after)) throw bad();
  std::string text(s[0] == '+' ? s.substr(1) : s);
  mpq_class q(text, 10);
  if (slash && q.get_den() == 0) throw bad();
  q.canonicalize();
  return q;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

}  // namespace

std::vector<Formula> parse_formula_file(std::string_view text,
                                        const std::string& default_name,
                                        const BracketConfig& cfg) {
  std::vector<std::string> lines;
  {
    std::size_t start = 0;
    while (start < text.size()) {
      auto nl = text.find('\n', start);
      if (nl == std::string_view::npos) nl = text.size();
      lines.emplace_back(text.substr(start, nl - start));
      start = nl + 1;
    }
  }

  std::map<std::string, Pattern> patterns;
  std::vector<Formula> formulas;
  auto current = [&]() -> Formula& {
    if (formulas.empty()) formulas.push_back(Formula{default_name, {}});
    return formulas.back();
  };

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const int lineno = static_cast<int>(i) + 1;
    const std::string line = trim(lines[i]);
    if (line.empty() || line[0] == '#') continue;
    const auto w = words(line);
    if (w[0] == "pattern") {
      if (w.size() != 2) throw DiagramError("expected 'pattern <name>'", lineno, 1);
      if (patterns.contains(w[1])) {
        throw DiagramError("pattern '" + w[1] + "' defined twice", lineno, 1);
      }
      std::string block;
      for (std::size_t k = 1; k <= 3; ++k) {
        if (i + k >= lines.size()) {
          throw DiagramError("pattern block '" + w[1] + "' is truncated", lineno, 1);
        }
        block += lines[i + k];
        block += '\n';
      }
      Pattern p{w[1], parse_diagram(block, /*allow_wild=*/true, lineno + 1)};
      try {
        validate_pattern(p, cfg);
      } catch (const std::invalid_argument& e) {
        throw DiagramError(e.what(), lineno, 1);
      }
      patterns.emplace(w[1], std::move(p));
      i += 3;
    } else if (w[0] == "formula") {
      if (w.size() != 2) throw DiagramError("expected 'formula <name>'", lineno, 1);
      formulas.push_back(Formula{w[1], {}});
    } else if (w[0] == "term") {
      if (w.size() != 3) {
        throw DiagramError("expected 'term <rational> <pattern>'", lineno, 1);
      }
      mpq_class c;
      try {
        c = parse_rational(w[1]);
      } catch (const std::invalid_argument& e) {
        throw DiagramError(e.what(), lineno, 6);
      }
      if (c == 0) throw DiagramError("zero coefficient", lineno, 6);
      auto it = patterns.find(w[2]);
      if (it == patterns.end()) {
        throw DiagramError("unknown pattern '" + w[2] + "'", lineno, 1);
      }
      current().terms.push_back(Term{c, it->second});
    } else {
      throw DiagramError("unexpected line '" + line + "'", lineno, 1);
    }
  }
  for (const auto& f : formulas) {
    if (f.terms.empty()) {
      throw DiagramError("formula '" + f.name + "' has no terms");
    }
  }
  if (formulas.empty()) throw DiagramError("no formula terms found");
  return formulas;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<Formula> load_formula_file(const std::filesystem::path& path,
                                       const BracketConfig& cfg) {
  try {
    return parse_formula_file(read_text_file(path), path.stem().string(), cfg);
  } catch (const DiagramError& e) {
    throw DiagramError(path.string() + ": " + e.what());
  }
}

GaussDiagram load_diagram_file(const std::filesystem::path& path) {
  try {
    return parse_diagram(read_text_file(path));
  } catch (const DiagramError& e) {
    throw DiagramError(path.string() + ": " + e.what());
  }
}

std::string write_formula_file(const std::vector<Formula>& formulas) {
  std::string out;
  std::map<std::string, bool> written;
  for (const auto& f : formulas) {
    for (const auto& t : f.terms) {
      if (written[t.pattern.name]) continue;
      written[t.pattern.name] = true;
      out += "pattern " + t.pattern.name + "\n";
      // Keep the pattern's own ids and rotation so files stay readable.
      const auto& d = t.pattern.diagram;
      for (int c = 0; c < kComponents; ++c) {
        out += c == 0 ? "comp1:" : "comp2:";
        for (const auto& tok : d.circle(c)) {
          out += tok.end == End::tail ? " T" : " H";
          out += std::to_string(tok.id);
        }
        out += '\n';
      }
      out += "signs:";
      for (const auto& a : d.arrows()) {
        out += ' ' + std::to_string(a.id) + ':' + sign_char(a.sign);
      }
      out += "\n\n";
    }
  }
  for (const auto& f : formulas) {
    out += "formula " + f.name + "\n";
    for (const auto& t : f.terms) {
      out += "term " + to_string(t.coefficient) + " " + t.pattern.name + "\n";
    }
    out += '\n';
  }
  return out;
}

}  // namespace gdf
