#include "kitaev/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace kitaev {

std::string to_string(const SiteId& s) {
  return std::string(s.is_vertex() ? "v" : "f") + "(" + std::to_string(s.x) + "," + std::to_string(s.y) + ")";
}

std::string to_string(const EdgeId& e) {
  return std::string(e.dir == Direction::horizontal ? "h" : "v") + "(" + std::to_string(e.x) + "," + std::to_string(e.y) + ")";
}

std::vector<SiteId> Ribbon::sites() const {
  std::vector<SiteId> out{start};
  SiteId cur = start;
  for (const auto& step : steps) {
    if (lattice == RibbonLattice::direct) {
      cur = (cur == step.edge.tail()) ? step.edge.head() : step.edge.tail();
    } else {
      // The two faces sharing the crossed edge.
      const EdgeId& e = step.edge;
      const SiteId a = e.dir == Direction::horizontal ? SiteId::face(e.x, e.y - 1) : SiteId::face(e.x - 1, e.y);
      const SiteId b = SiteId::face(e.x, e.y);
      cur = (cur == a) ? b : a;
    }
    out.push_back(cur);
  }
  return out;
}

Ribbon Ribbon::reversed() const {
  Ribbon r{lattice, end, start, {}};
  r.steps.reserve(steps.size());
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) r.steps.push_back({it->edge, -it->sign});
  return r;
}

LatticePatch::LatticePatch(int width, int height) : width_(width), height_(height) {
  if (width < 1 || height < 1)
    throw std::invalid_argument("patch dimensions must be positive, got " + std::to_string(width) + "x" + std::to_string(height));
  for (int y = 0; y <= height; ++y) {
    for (int x = 0; x <= width; ++x) {
      if (x < width) edges_.push_back(EdgeId::horizontal(x, y));
      if (y < height) edges_.push_back(EdgeId::vertical(x, y));
      vertices_.push_back(SiteId::vertex(x, y));
    }
  }
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) faces_.push_back(SiteId::face(x, y));
}

bool LatticePatch::contains(const EdgeId& e) const {
  if (e.dir == Direction::horizontal) return e.x >= 0 && e.x < width_ && e.y >= 0 && e.y <= height_;
  return e.x >= 0 && e.x <= width_ && e.y >= 0 && e.y < height_;
}

bool LatticePatch::contains(const SiteId& s) const {
  if (s.is_vertex()) return s.x >= 0 && s.x <= width_ && s.y >= 0 && s.y <= height_;
  return s.x >= 0 && s.x < width_ && s.y >= 0 && s.y < height_;
}

std::size_t LatticePatch::edge_index(const EdgeId& e) const {
  if (!contains(e)) throw std::out_of_range("edge " + to_string(e) + " is outside the patch");
  // Row y holds width horizontal edges and width+1 vertical edges, interleaved
  // by x; the top row has horizontal edges only.
  const std::size_t row = static_cast<std::size_t>(e.y) * static_cast<std::size_t>(2 * width_ + 1);
  if (e.y == height_) return row + static_cast<std::size_t>(e.x);
  const std::size_t col = static_cast<std::size_t>(2 * e.x) + (e.dir == Direction::vertical ? 1 : 0);
  // At x == width only the vertical edge exists.
  return row + (e.x == width_ ? static_cast<std::size_t>(2 * width_) : col);
}

std::vector<EdgeId> LatticePatch::incident_edges(const SiteId& s) const {
  if (!contains(s)) throw std::out_of_range("site " + to_string(s) + " is outside the patch");
  std::vector<EdgeId> candidates;
  if (s.is_vertex()) {
    candidates = {EdgeId::horizontal(s.x, s.y), EdgeId::vertical(s.x, s.y), EdgeId::horizontal(s.x - 1, s.y),
                  EdgeId::vertical(s.x, s.y - 1)};
  } else {
    candidates = {EdgeId::horizontal(s.x, s.y), EdgeId::vertical(s.x + 1, s.y), EdgeId::horizontal(s.x, s.y + 1),
                  EdgeId::vertical(s.x, s.y)};
  }
  std::vector<EdgeId> out;
  for (const auto& e : candidates)
    if (contains(e)) out.push_back(e);
  return out;
}

bool LatticePatch::is_interior(const SiteId& s) const {
  if (!contains(s)) return false;
  if (s.is_face()) return true;
  return s.x > 0 && s.x < width_ && s.y > 0 && s.y < height_;
}

std::vector<SiteId> LatticePatch::interior_sites() const {
  std::vector<SiteId> out;
  for (const auto& v : vertices_)
    if (is_interior(v)) out.push_back(v);
  out.insert(out.end(), faces_.begin(), faces_.end());
  return out;
}

std::vector<SiteId> LatticePatch::adjacent_faces(const EdgeId& e) const {
  std::vector<SiteId> out;
  const SiteId a = e.dir == Direction::horizontal ? SiteId::face(e.x, e.y - 1) : SiteId::face(e.x - 1, e.y);
  const SiteId b = SiteId::face(e.x, e.y);
  if (contains(a)) out.push_back(a);
  if (contains(b)) out.push_back(b);
  return out;
}

int incidence_vertex(const EdgeId& e, const SiteId& v) {
  if (!v.is_vertex()) return 0;
  if (v == e.tail()) return 1;
  if (v == e.head()) return -1;
  return 0;
}

int incidence_face(const EdgeId& e, const SiteId& f) {
  if (!f.is_face()) return 0;
  if (e.dir == Direction::horizontal && e.x == f.x) {
    if (e.y == f.y) return 1;       // bottom, traversed rightwards
    if (e.y == f.y + 1) return -1;  // top, traversed leftwards
  }
  if (e.dir == Direction::vertical && e.y == f.y) {
    if (e.x == f.x + 1) return 1;  // right side, traversed upwards
    if (e.x == f.x) return -1;     // left side, traversed downwards
  }
  return 0;
}

int incidence(const EdgeId& e, const SiteId& s) { return s.is_vertex() ? incidence_vertex(e, s) : incidence_face(e, s); }

std::optional<EdgeId> crossing_edge(const SiteId& f1, const SiteId& f2) {
  if (!f1.is_face() || !f2.is_face()) return std::nullopt;
  if (f1.y == f2.y && std::abs(f1.x - f2.x) == 1) return EdgeId::vertical(std::max(f1.x, f2.x), f1.y);
  if (f1.x == f2.x && std::abs(f1.y - f2.y) == 1) return EdgeId::horizontal(f1.x, std::max(f1.y, f2.y));
  return std::nullopt;
}

Ribbon find_ribbon(const SiteId& a, const SiteId& b, const LatticePatch& patch) {
  if (a.kind != b.kind) throw std::invalid_argument("ribbon endpoints must both be vertices or both be faces");
  if (!patch.contains(a) || !patch.contains(b))
    throw std::out_of_range("ribbon endpoint outside the patch: " + to_string(a) + " -> " + to_string(b));
  const bool direct = a.is_vertex();
  Ribbon r{direct ? RibbonLattice::direct : RibbonLattice::dual, a, b, {}};
  int x = a.x;
  int y = a.y;
  while (x != b.x) {
    const int dx = b.x > x ? 1 : -1;
    if (direct) {
      r.steps.push_back({EdgeId::horizontal(dx > 0 ? x : x - 1, y), dx});
    } else {
      // Dual horizontal edges point left.
      r.steps.push_back({EdgeId::vertical(dx > 0 ? x + 1 : x, y), -dx});
    }
    x += dx;
  }
  while (y != b.y) {
    const int dy = b.y > y ? 1 : -1;
    if (direct) {
      r.steps.push_back({EdgeId::vertical(x, dy > 0 ? y : y - 1), dy});
    } else {
      // Dual vertical edges point up.
      r.steps.push_back({EdgeId::horizontal(x, dy > 0 ? y + 1 : y), dy});
    }
    y += dy;
  }
  return r;
}

int ribbon_sign(const Ribbon& ribbon, const EdgeId& e, const SiteId& w) {
  for (const auto& step : ribbon.steps)
    if (step.edge == e) return -incidence(e, w) * step.sign;
  return 0;
}

}  // namespace kitaev
