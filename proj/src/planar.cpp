#include "gdf/planar.hpp"

#include <array>
#include <stdexcept>

namespace gdf {

namespace {

struct HalfEdge {
  std::size_t edge;
  bool out;  // leaves the crossing along the edge's orientation
};

}  // namespace

FaceMap::FaceMap(const GaussDiagram& d) {
  for (int c = 0; c < kComponents; ++c) {
    offset_[c + 1] = offset_[c] + d.circle(c).size();
  }
  const std::size_t edges = offset_[kComponents];
  auto in_edge = [&](const Endpoint& e) {
    return offset_[e.component] + static_cast<std::size_t>(e.position);
  };
  auto out_edge = [&](const Endpoint& e) {
    const std::size_t n = d.circle(e.component).size();
    return offset_[e.component] + (static_cast<std::size_t>(e.position) + 1) % n;
  };

  // Counterclockwise half-edges per crossing, indexed like d.arrows().
  std::vector<std::array<HalfEdge, 4>> rot;
  rot.reserve(d.size());
  for (const auto& a : d.arrows()) {
    if (a.tail.component != a.head.component) joined_ = true;
    const HalfEdge over_out{out_edge(a.tail), true}, over_in{in_edge(a.tail), false};
    const HalfEdge under_out{out_edge(a.head), true}, under_in{in_edge(a.head), false};
    if (a.sign == Sign::minus) {
      rot.push_back({over_out, under_in, over_in, under_out});
    } else {
      rot.push_back({over_out, under_out, over_in, under_in});
    }
  }

  // Where each dart arrives: crossing index and slot in its rotation.
  // Forward dart of an edge arrives through its "in" half-edge.
  std::vector<std::pair<std::size_t, int>> arrival(2 * edges);
  for (std::size_t v = 0; v < rot.size(); ++v) {
    for (int k = 0; k < 4; ++k) {
      const HalfEdge& h = rot[v][static_cast<std::size_t>(k)];
      arrival[2 * h.edge + (h.out ? 1 : 0)] = {v, k};
    }
  }

  face_of_dart_.assign(2 * edges, SIZE_MAX);
  for (std::size_t start = 0; start < 2 * edges; ++start) {
    if (face_of_dart_[start] != SIZE_MAX) continue;
    std::size_t dart = start;
    while (face_of_dart_[dart] == SIZE_MAX) {
      face_of_dart_[dart] = face_count_;
      // Keep the face on the left: leave by the clockwise neighbour of the
      // arrival half-edge.
      const auto [v, k] = arrival[dart];
      const HalfEdge& next = rot[v][static_cast<std::size_t>((k + 3) % 4)];
      dart = 2 * next.edge + (next.out ? 0 : 1);
    }
    ++face_count_;
  }

  // Euler check per piece.
  auto faces_in = [&](std::size_t lo, std::size_t hi) {
    std::vector<bool> seen(face_count_, false);
    std::size_t n = 0;
    for (std::size_t e = lo; e < hi; ++e) {
      for (std::size_t dir = 0; dir < 2; ++dir) {
        const std::size_t f = face_of_dart_[2 * e + dir];
        if (!seen[f]) {
          seen[f] = true;
          ++n;
        }
      }
    }
    return n;
  };
  if (joined_) {
    planar_ = faces_in(0, edges) == d.size() + 2;
  } else {
    for (int c = 0; c < kComponents; ++c) {
      const std::size_t v = d.circle(c).size() / 2;
      if (v > 0 && faces_in(offset_[c], offset_[c + 1]) != v + 2) planar_ = false;
    }
  }
}

std::size_t FaceMap::edge_index(int component, int index) const {
  if (component < 0 || component >= kComponents) {
    throw std::invalid_argument("component out of range");
  }
  const std::size_t n = offset_[component + 1] - offset_[component];
  if (n == 0 || index < 0 || static_cast<std::size_t>(index) >= n) {
    throw std::invalid_argument("arc index out of range");
  }
  return offset_[component] + static_cast<std::size_t>(index);
}

std::size_t FaceMap::left_face(int component, int index) const {
  return face_of_dart_[2 * edge_index(component, index)];
}

std::size_t FaceMap::right_face(int component, int index) const {
  return face_of_dart_[2 * edge_index(component, index) + 1];
}

bool FaceMap::same_piece(int c1, int c2) const {
  if (c1 == c2) return offset_[c1 + 1] > offset_[c1];
  return joined_;
}

bool is_classical(const GaussDiagram& d) { return FaceMap(d).planar(); }

}  // namespace gdf
