#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gdf {

// Arrows point from the over-passage to the under-passage of a crossing.
// A crossing change therefore reverses the arrow and negates its sign.

enum class Sign : std::int8_t { minus = -1, wild = 0, plus = 1 };
enum class End : std::uint8_t { tail = 0, head = 1 };

constexpr int kComponents = 2;

inline Sign negate(Sign s) noexcept {
  return static_cast<Sign>(-static_cast<int>(s));
}
inline int to_int(Sign s) noexcept { return static_cast<int>(s); }
char sign_char(Sign s) noexcept;

struct Endpoint {
  int component = 0;  // 0 for the first circle, 1 for the second
  int position = 0;   // index in that circle's cyclic sequence

  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

struct Arrow {
  int id = 0;
  Endpoint tail;
  Endpoint head;
  Sign sign = Sign::plus;
};

// One endpoint slot on a circle: which arrow, and which end of it.
struct Token {
  int id = 0;
  End end = End::tail;

  friend bool operator==(const Token&, const Token&) = default;
};

using CircleSeq = std::vector<Token>;

// Error raised for malformed documents or invalid diagram construction.
// Line/column are 1-based; zero means "not tied to a source position".
class DiagramError : public std::runtime_error {
 public:
  DiagramError(const std::string& what, int line = 0, int column = 0);
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

// Total-order key invariant under independent rotation of the two circles
// and under arrow relabeling.
using CanonicalForm = std::string;

// Signed oriented Gauss diagram on two labeled circles.  Patterns reuse the
// same type with Sign::wild allowed; `is_fully_signed()` separates the two.
// Values are immutable after construction.
class GaussDiagram {
 public:
  GaussDiagram() = default;

  // Validates that every id occurs exactly once as a tail and once as a
  // head and carries exactly one sign.
  GaussDiagram(std::array<CircleSeq, kComponents> circles,
               const std::map<int, Sign>& signs);

  std::size_t size() const noexcept { return arrows_.size(); }
  bool empty() const noexcept { return arrows_.empty(); }

  // Arrows sorted by id.
  std::span<const Arrow> arrows() const noexcept { return arrows_; }
  const CircleSeq& circle(int component) const { return circles_.at(component); }
  std::size_t slot_count() const noexcept {
    return circles_[0].size() + circles_[1].size();
  }

  // Index into arrows() for the given id, if present.
  std::optional<std::size_t> index_of(int id) const noexcept;
  const Arrow& arrow(int id) const;
  int max_id() const noexcept { return arrows_.empty() ? 0 : arrows_.back().id; }

  bool is_fully_signed() const noexcept;
  std::size_t wildcard_count() const noexcept;

  GaussDiagram with_sign(int id, Sign sign) const;

  std::map<int, Sign> sign_map() const;

 private:
  std::array<CircleSeq, kComponents> circles_;
  std::vector<Arrow> arrows_;
};

// Gauss-code text documents ("comp1: ...", "comp2: ...", "signs: ...").
// `allow_wild` accepts `?` as a sign (pattern blocks).  `first_line` offsets
// reported line numbers when the block is embedded in a larger file.
GaussDiagram parse_diagram(std::string_view text, bool allow_wild = false,
                           int first_line = 1);

// Deterministic text: canonical rotation, arrows renumbered by first
// appearance.  Every line ends with '\n'.
std::string serialize(const GaussDiagram& d);

CanonicalForm canonical_form(const GaussDiagram& d);

bool isomorphic(const GaussDiagram& a, const GaussDiagram& b);

GaussDiagram switch_crossing(const GaussDiagram& d, int id);

GaussDiagram delete_arrows(const GaussDiagram& d, std::span<const int> ids);

// Keeps only the listed arrows (inverse selection of delete_arrows).
GaussDiagram restrict_to(const GaussDiagram& d, std::span<const int> ids);

// Rotates circle `component` so that slot `k` becomes slot 0.
GaussDiagram rotate(const GaussDiagram& d, int component, std::size_t k);

// Reassigns arrow ids 1..n in first-appearance order without rotating.
GaussDiagram renumber(const GaussDiagram& d);

// Swaps the roles of the two circles.
GaussDiagram swap_components(const GaussDiagram& d);

namespace detail {

// Canonical key for a diagram given as local-label sequences.  Labels are
// 0..k-1; `signs[label]` holds the label's sign.  Used both by
// canonical_form and by the bracket engine's subset matcher.
struct LocalToken {
  std::uint16_t label;
  End end;
};

CanonicalForm canonical_key(std::span<const LocalToken> c1,
                            std::span<const LocalToken> c2,
                            std::span<const Sign> signs);

// Same key, also reporting the rotation pair that attains it.
CanonicalForm best_rotation(std::span<const LocalToken> c1,
                            std::span<const LocalToken> c2,
                            std::span<const Sign> signs, std::size_t* best_r1,
                            std::size_t* best_r2);

}  // namespace detail

}  // namespace gdf
