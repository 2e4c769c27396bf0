#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace kitaev {

enum class SiteKind { vertex, face };

/// A vertex v of Z^2 or a face (dual vertex). Faces are labelled by their
/// lower-left corner.
struct SiteId {
  SiteKind kind = SiteKind::vertex;
  int x = 0;
  int y = 0;

  static SiteId vertex(int x, int y) { return {SiteKind::vertex, x, y}; }
  static SiteId face(int x, int y) { return {SiteKind::face, x, y}; }
  bool is_vertex() const { return kind == SiteKind::vertex; }
  bool is_face() const { return kind == SiteKind::face; }

  friend auto operator<=>(const SiteId&, const SiteId&) = default;
};

enum class Direction { horizontal, vertical };

/// Edge anchored at its base vertex. Horizontal edges point right, vertical
/// edges point up.
struct EdgeId {
  int x = 0;
  int y = 0;
  Direction dir = Direction::horizontal;

  static EdgeId horizontal(int x, int y) { return {x, y, Direction::horizontal}; }
  static EdgeId vertical(int x, int y) { return {x, y, Direction::vertical}; }

  SiteId tail() const { return SiteId::vertex(x, y); }
  SiteId head() const { return dir == Direction::horizontal ? SiteId::vertex(x + 1, y) : SiteId::vertex(x, y + 1); }

  friend auto operator<=>(const EdgeId&, const EdgeId&) = default;
};

std::string to_string(const SiteId& s);
std::string to_string(const EdgeId& e);

enum class RibbonLattice { direct, dual };

struct RibbonStep {
  EdgeId edge;
  /// +1 when the ribbon runs along the edge orientation (for dual ribbons:
  /// along the orientation of the crossing dual edge).
  int sign = 1;

  friend bool operator==(const RibbonStep&, const RibbonStep&) = default;
};

/// Oriented self-avoiding path on the lattice or on the dual lattice.
struct Ribbon {
  RibbonLattice lattice = RibbonLattice::direct;
  SiteId start;
  SiteId end;
  std::vector<RibbonStep> steps;

  bool empty() const { return steps.empty(); }
  /// Visited sites in order, start and end included.
  std::vector<SiteId> sites() const;
  Ribbon reversed() const;
};

/// Rectangular patch of Z^2 with width x height unit cells, open boundary.
class LatticePatch {
 public:
  LatticePatch(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }

  const std::vector<EdgeId>& edges() const { return edges_; }
  const std::vector<SiteId>& vertices() const { return vertices_; }
  const std::vector<SiteId>& faces() const { return faces_; }
  std::size_t num_edges() const { return edges_.size(); }

  bool contains(const EdgeId& e) const;
  bool contains(const SiteId& s) const;
  /// Position of e in edges(); throws std::out_of_range when e is outside.
  std::size_t edge_index(const EdgeId& e) const;

  /// Star of a vertex (right, up, left, down; patch edges only) or boundary of
  /// a face (bottom, right, top, left).
  std::vector<EdgeId> incident_edges(const SiteId& s) const;

  /// Site whose full star or boundary lies in the patch.
  bool is_interior(const SiteId& s) const;
  /// Interior vertices (row-major) followed by faces (row-major).
  std::vector<SiteId> interior_sites() const;

  /// Faces of the patch adjacent to e (one or two).
  std::vector<SiteId> adjacent_faces(const EdgeId& e) const;

 private:
  int width_;
  int height_;
  std::vector<EdgeId> edges_;
  std::vector<SiteId> vertices_;
  std::vector<SiteId> faces_;
};

/// zeta(e, v): +1 if e points away from v, -1 if into v, 0 if not incident.
int incidence_vertex(const EdgeId& e, const SiteId& v);
/// zeta(e, f): +1 if the counterclockwise boundary of f runs along e, -1 if
/// against it, 0 if e is not on the boundary of f.
int incidence_face(const EdgeId& e, const SiteId& f);
int incidence(const EdgeId& e, const SiteId& s);

/// Primal edge crossed by the dual step between two adjacent faces.
std::optional<EdgeId> crossing_edge(const SiteId& f1, const SiteId& f2);

/// L-shaped ribbon from a to b, horizontal run first. Vertices give a direct
/// ribbon, faces a dual ribbon. Dual edges are oriented as the primal edge
/// turned a quarter counterclockwise: up across horizontal edges, left across
/// vertical ones.
Ribbon find_ribbon(const SiteId& a, const SiteId& b, const LatticePatch& patch);

/// sign(e, rho, w) = -zeta(e, w) * beta(e, rho); 0 when e is not in rho or not
/// incident to w.
int ribbon_sign(const Ribbon& ribbon, const EdgeId& e, const SiteId& w);

}  // namespace kitaev
