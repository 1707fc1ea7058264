#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gdf/diagram.hpp"

namespace gdf {

// Generating set of oriented Reidemeister moves, as Gauss-diagram rewrites.
//
//   R1a  kink with a negative crossing, tail immediately before head.
//   R1b  kink with a positive crossing, head immediately before tail.
//   R2   two co-oriented strands; the over strand receives tails p, q and
//        the under strand heads p, q, in that order, with sign(p) = +,
//        sign(q) = -.  On a classical diagram the two arcs must bound a
//        common face (right of the over arc, left of the under arc), so
//        walks stay inside classical diagrams.
//   R3*  braid-like triangle of strands top/middle/bottom with arrows
//        a: top->middle (+), b: top->bottom (+), c: middle->bottom (-).
//        Forward turns the local picture
//            top [Ta Tb]   middle [Tc Ha]   bottom [Hc Hb]
//        into
//            top [Tb Ta]   middle [Ha Tc]   bottom [Hb Hc].
//        The suffix names the strand that lies alone on its component
//        (b, m, t); R3s is the case of all three strands on one component.
enum class MoveKind { R1a, R1b, R2, R3b, R3m, R3t, R3s };
enum class Direction { insert, remove, forward, backward };

inline constexpr MoveKind kAllKinds[] = {MoveKind::R1a, MoveKind::R1b, MoveKind::R2,
                                         MoveKind::R3b, MoveKind::R3m, MoveKind::R3t,
                                         MoveKind::R3s};

bool is_r3(MoveKind k) noexcept;
// insert/remove for R1 and R2, forward/backward for R3.
std::vector<Direction> directions_of(MoveKind k);
int arrow_delta(MoveKind k, Direction dir) noexcept;

std::string to_string(MoveKind k);
std::string to_string(Direction d);
MoveKind parse_kind(std::string_view s);
Direction parse_direction(std::string_view s);

// Insertion point: before slot `index` of the circle (index 0 on an empty
// circle).  Component is 0 or 1.
struct Gap {
  int component = 0;
  int index = 0;

  friend bool operator==(const Gap&, const Gap&) = default;
};

struct MoveInstance {
  MoveKind kind = MoveKind::R1a;
  Direction direction = Direction::insert;
  // Inserts: R1 uses gaps[0]; R2 uses gaps[0] (over) and gaps[1] (under).
  std::vector<Gap> gaps;
  // R2 insert into a single gap: heads go before tails when set.
  bool under_first = false;
  // Removes and R3: R1 [id], R2 [plus, minus], R3 [a, b, c] as above.
  std::vector<int> arrows;

  friend bool operator==(const MoveInstance&, const MoveInstance&) = default;
};

// One record per line: "<kind> <direction> <site>", site tokens being
// g<comp>:<index>, a<id> and the flag under-first.
std::string to_string(const MoveInstance& m);
MoveInstance parse_move(std::string_view line);

std::vector<MoveInstance> enumerate_sites(const GaussDiagram& d, MoveKind kind,
                                          Direction direction);

// Throws std::invalid_argument if `m` is not applicable to `d`.  Arrow ids
// of untouched arrows are preserved; inserted arrows get fresh ids above
// d.max_id().
GaussDiagram apply(const GaussDiagram& d, const MoveInstance& m);

// Instance undoing `m`, as a site on apply(d, m).
MoveInstance inverse(const GaussDiagram& d, const MoveInstance& m);

// Ids of arrows created, removed or moved by `m` on `d`.
std::vector<int> touched_arrows(const GaussDiagram& d, const MoveInstance& m);

struct WalkConfig {
  // At or above this arrow count only moves that do not add arrows are
  // drawn (when any exist).
  std::size_t size_ceiling = 40;
  // Restricts the walk to these kinds when non-empty.
  std::vector<MoveKind> kinds;
};

struct Walk {
  std::vector<GaussDiagram> diagrams;  // d0 .. d_steps
  std::vector<MoveInstance> moves;     // moves[i] takes diagrams[i] to [i+1]
};

// Each step draws a (kind, direction) class uniformly among those with at
// least one site, then a site uniformly within the class.
Walk random_walk(const GaussDiagram& d, std::size_t steps, std::uint64_t seed,
                 const WalkConfig& cfg = {});

// Draws one random applicable move with the walk's sampling rule.
class Rng;
std::optional<MoveInstance> random_move(const GaussDiagram& d, Rng& rng,
                                        const WalkConfig& cfg = {});

std::string write_transcript(const std::vector<MoveInstance>& moves);
std::vector<MoveInstance> parse_transcript(std::string_view text);
std::vector<GaussDiagram> replay(const GaussDiagram& d,
                                 const std::vector<MoveInstance>& moves);

}  // namespace gdf
