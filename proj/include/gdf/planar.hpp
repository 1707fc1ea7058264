#pragma once

#include <cstddef>
#include <vector>

#include "gdf/diagram.hpp"

namespace gdf {

// Faces of the planar map that a signed Gauss diagram determines.  Edge
// (component c, index i) is the arc of circle c that ends at slot i, i.e.
// the arc a Gap{c, i} points into.  Each crossing's cyclic order of
// half-edges follows from its sign: for +, counterclockwise the order is
// over-out, under-out, over-in, under-in; for - the two under half-edges
// trade places.
class FaceMap {
 public:
  explicit FaceMap(const GaussDiagram& d);

  // Face on the left / right of the arc, looking along its orientation.
  // Only defined for circles that carry at least one endpoint.
  std::size_t left_face(int component, int index) const;
  std::size_t right_face(int component, int index) const;

  std::size_t face_count() const noexcept { return face_count_; }

  // Circles joined by an inter-component arrow share a piece.  A circle
  // without endpoints is a piece of its own.
  bool same_piece(int c1, int c2) const;

  // Euler characteristic check, per connected piece: V - E + F = 2.
  bool planar() const noexcept { return planar_; }

 private:
  std::size_t edge_index(int component, int index) const;

  std::size_t offset_[kComponents + 1] = {};
  std::vector<std::size_t> face_of_dart_;  // 2 * edge + (0 forward, 1 backward)
  std::size_t face_count_ = 0;
  bool joined_ = false;
  bool planar_ = true;
};

// True when the diagram is the Gauss diagram of a classical link diagram.
bool is_classical(const GaussDiagram& d);

}  // namespace gdf
