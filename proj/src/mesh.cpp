#include "evem/mesh.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <utility>

namespace evem {

std::string_view to_string(MeshFamily family) {
  switch (family) {
    case MeshFamily::Quad: return "QUAD";
    case MeshFamily::Rhom: return "RHOM";
    case MeshFamily::Hexa: return "HEXA";
    case MeshFamily::Webm: return "WEBM";
    case MeshFamily::Dode: return "DODE";
  }
  return "?";
}

MeshFamily parse_mesh_family(std::string_view tag) {
  std::string up(tag);
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
  for (auto f : {MeshFamily::Quad, MeshFamily::Rhom, MeshFamily::Hexa, MeshFamily::Webm,
                 MeshFamily::Dode}) {
    if (up == to_string(f)) return f;
  }
  throw std::invalid_argument("unknown mesh family '" + std::string(tag) + "'");
}

std::vector<Point2> PolygonalMesh::cell_vertices(int cell) const {
  std::vector<Point2> v;
  v.reserve(cells[cell].vertices.size());
  for (int id : cells[cell].vertices) v.push_back(points[id]);
  return v;
}

double PolygonalMesh::max_diameter() const {
  double h = 0.0;
  for (int c = 0; c < static_cast<int>(cells.size()); ++c) {
    h = std::max(h, polygon_geometry(cells[c], points).diameter);
  }
  return h;
}

PolygonGeometry polygon_geometry(const Polygon& poly, std::span<const Point2> points) {
  std::vector<Point2> v;
  v.reserve(poly.vertices.size());
  for (int id : poly.vertices) v.push_back(points[id]);
  return polygon_geometry(v);
}

Point2 edge_normal(const Polygon& poly, std::span<const Point2> points, int edge) {
  std::vector<Point2> v;
  v.reserve(poly.vertices.size());
  for (int id : poly.vertices) v.push_back(points[id]);
  return edge_normal(v, edge);
}

std::vector<BoundaryEdge> find_boundary_edges(const std::vector<Polygon>& cells) {
  std::map<std::pair<int, int>, int> uses;
  for (const auto& cell : cells) {
    const int m = cell.size();
    for (int e = 0; e < m; ++e) {
      const int a = cell.vertices[e];
      const int b = cell.vertices[(e + 1) % m];
      ++uses[{std::min(a, b), std::max(a, b)}];
    }
  }
  std::vector<BoundaryEdge> out;
  for (int c = 0; c < static_cast<int>(cells.size()); ++c) {
    const int m = cells[c].size();
    for (int e = 0; e < m; ++e) {
      const int a = cells[c].vertices[e];
      const int b = cells[c].vertices[(e + 1) % m];
      if (uses[{std::min(a, b), std::max(a, b)}] == 1) out.push_back({c, e});
    }
  }
  return out;
}

namespace {

using LatticePoint = std::pair<long long, long long>;

/// Collects integer lattice points into a deduplicated point list.
class LatticeBuilder {
 public:
  int id(LatticePoint p) {
    auto [it, inserted] = ids_.try_emplace(p, static_cast<int>(lattice_.size()));
    if (inserted) lattice_.push_back(p);
    return it->second;
  }
  const std::vector<LatticePoint>& lattice() const { return lattice_; }

 private:
  std::map<LatticePoint, int> ids_;
  std::vector<LatticePoint> lattice_;
};

PolygonalMesh make_quad(int n) {
  PolygonalMesh mesh;
  mesh.points.reserve((n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      mesh.points.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});
    }
  }
  auto id = [n](int i, int j) { return j * (n + 1) + i; };
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      mesh.cells.push_back({{id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)}});
    }
  }
  return mesh;
}

// Pulls every interior vertex with odd (i, j) towards its lower-left cell by
// 0.6 h in both directions; that cell becomes an arrowhead (non-convex) quad.
PolygonalMesh make_rhom(int n) {
  PolygonalMesh mesh = make_quad(n);
  const double h = 1.0 / n;
  for (int j = 1; j < n; j += 2) {
    for (int i = 1; i < n; i += 2) {
      auto& p = mesh.points[j * (n + 1) + i];
      p.x -= 0.6 * h;
      p.y -= 0.6 * h;
    }
  }
  return mesh;
}

// Sutherland-Hodgman clip of a convex lattice polygon against the box
// [0, xmax] x [0, ymax]. Crossings of the hexagon edges with the box lines
// land on lattice points for the layouts used here.
std::vector<LatticePoint> clip_to_box(const std::vector<LatticePoint>& poly, long long xmax,
                                      long long ymax) {
  auto clip = [](const std::vector<LatticePoint>& in, auto inside, auto intersect) {
    std::vector<LatticePoint> out;
    const auto m = in.size();
    for (std::size_t i = 0; i < m; ++i) {
      const auto& cur = in[i];
      const auto& prev = in[(i + m - 1) % m];
      const bool ci = inside(cur);
      const bool pi = inside(prev);
      if (ci) {
        if (!pi) out.push_back(intersect(prev, cur));
        out.push_back(cur);
      } else if (pi) {
        out.push_back(intersect(prev, cur));
      }
    }
    return out;
  };
  auto cut_x = [](long long x0) {
    return [x0](const LatticePoint& a, const LatticePoint& b) {
      const double t = static_cast<double>(x0 - a.first) / static_cast<double>(b.first - a.first);
      const double y = a.second + t * static_cast<double>(b.second - a.second);
      return LatticePoint{x0, std::llround(y)};
    };
  };
  auto cut_y = [](long long y0) {
    return [y0](const LatticePoint& a, const LatticePoint& b) {
      const double t = static_cast<double>(y0 - a.second) / static_cast<double>(b.second - a.second);
      const double x = a.first + t * static_cast<double>(b.first - a.first);
      return LatticePoint{std::llround(x), y0};
    };
  };
  auto out = clip(poly, [](const LatticePoint& p) { return p.first >= 0; }, cut_x(0));
  out = clip(out, [xmax](const LatticePoint& p) { return p.first <= xmax; }, cut_x(xmax));
  out = clip(out, [](const LatticePoint& p) { return p.second >= 0; }, cut_y(0));
  out = clip(out, [ymax](const LatticePoint& p) { return p.second <= ymax; }, cut_y(ymax));
  std::vector<LatticePoint> dedup;
  for (const auto& p : out) {
    if (dedup.empty() || dedup.back() != p) dedup.push_back(p);
  }
  while (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();
  return dedup;
}

struct HexLayout {
  int columns = 0;  // N
  int rows = 0;     // row index runs 0..rows, rows is even
};

HexLayout hex_layout(int n) { return {n, n % 2 == 0 ? n : n + 1}; }

// Pointy-top hexagons on the lattice x = ix / (2N), y = iy / (3M). Even rows
// (centres on y = 0 and y = 1) have centres on x = 0 and x = 1 so the box
// halves them; odd rows are shifted by half a cell and meet x = 0 with a
// vertical edge. All clip points are lattice points.
struct HexCell {
  std::vector<LatticePoint> vertices;
  int row = 0;
  int column = 0;
  LatticePoint center;
};

std::vector<HexCell> hex_cells(const HexLayout& layout) {
  const long long xmax = 2LL * layout.columns;
  const long long ymax = 3LL * layout.rows;
  static constexpr std::array<std::pair<int, int>, 6> kOffsets = {
      {{0, -2}, {1, -1}, {1, 1}, {0, 2}, {-1, 1}, {-1, -1}}};
  std::vector<HexCell> cells;
  for (int j = 0; j <= layout.rows; ++j) {
    const bool odd = j % 2 == 1;
    const int count = odd ? layout.columns : layout.columns + 1;
    for (int i = 0; i < count; ++i) {
      const LatticePoint c{odd ? 2LL * i + 1 : 2LL * i, 3LL * j};
      std::vector<LatticePoint> hex;
      for (auto [dx, dy] : kOffsets) hex.push_back({c.first + dx, c.second + dy});
      auto clipped = clip_to_box(hex, xmax, ymax);
      if (clipped.size() < 3) continue;
      // drop slivers with zero lattice area
      long long twice = 0;
      for (std::size_t k = 0; k < clipped.size(); ++k) {
        const auto& a = clipped[k];
        const auto& b = clipped[(k + 1) % clipped.size()];
        twice += a.first * b.second - a.second * b.first;
      }
      if (twice <= 0) continue;
      cells.push_back({std::move(clipped), j, i, c});
    }
  }
  return cells;
}

PolygonalMesh make_hexa(int n, bool with_midpoints) {
  const HexLayout layout = hex_layout(n);
  const auto cells = hex_cells(layout);
  const long long mult = with_midpoints ? 2 : 1;
  LatticeBuilder builder;
  PolygonalMesh mesh;
  for (const auto& cell : cells) {
    Polygon poly;
    const auto m = cell.vertices.size();
    for (std::size_t k = 0; k < m; ++k) {
      const auto& a = cell.vertices[k];
      poly.vertices.push_back(builder.id({mult * a.first, mult * a.second}));
      if (with_midpoints) {
        const auto& b = cell.vertices[(k + 1) % m];
        poly.vertices.push_back(builder.id({a.first + b.first, a.second + b.second}));
      }
    }
    mesh.cells.push_back(std::move(poly));
  }
  const double sx = 1.0 / static_cast<double>(mult * 2 * layout.columns);
  const double sy = 1.0 / static_cast<double>(mult * 3 * layout.rows);
  for (const auto& [ix, iy] : builder.lattice()) {
    mesh.points.push_back({static_cast<double>(ix) * sx, static_cast<double>(iy) * sy});
  }
  // Lattice extremes map to exactly 0 and 1.
  for (auto& p : mesh.points) {
    if (std::abs(p.x - 1.0) < 1e-15) p.x = 1.0;
    if (std::abs(p.y - 1.0) < 1e-15) p.y = 1.0;
  }
  return mesh;
}

/// Uniform double in [0, 1) from the top 53 bits.
double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

PolygonalMesh make_webm(int n, std::uint64_t seed) {
  const HexLayout layout = hex_layout(n);
  const auto cells = hex_cells(layout);
  LatticeBuilder builder;
  PolygonalMesh mesh;
  std::vector<LatticePoint> indented;  // lattice ids of pushed-down hexagon tops
  const long long xmax = 2LL * layout.columns;
  const long long ymax = 3LL * layout.rows;
  auto interior = [&](const LatticePoint& p) {
    return p.first > 0 && p.first < xmax && p.second > 0 && p.second < ymax;
  };
  for (const auto& cell : cells) {
    Polygon poly;
    for (const auto& v : cell.vertices) poly.vertices.push_back(builder.id(v));
    mesh.cells.push_back(std::move(poly));
    const LatticePoint top{cell.center.first, cell.center.second + 2};
    if (cell.column % 2 == 0 && interior(top)) indented.push_back(top);
  }
  const double sx = 1.0 / static_cast<double>(xmax);
  const double sy = 1.0 / static_cast<double>(ymax);
  for (const auto& [ix, iy] : builder.lattice()) {
    mesh.points.push_back({static_cast<double>(ix) * sx, static_cast<double>(iy) * sy});
  }
  for (auto& p : mesh.points) {
    if (std::abs(p.x - 1.0) < 1e-15) p.x = 1.0;
    if (std::abs(p.y - 1.0) < 1e-15) p.y = 1.0;
  }
  // Tops move down by 3/4 of the vertical edge length (2 lattice units), past
  // the line through their neighbours, which makes the hexagon non-convex.
  const std::map<LatticePoint, int> lookup = [&] {
    std::map<LatticePoint, int> m;
    const auto& lat = builder.lattice();
    for (int i = 0; i < static_cast<int>(lat.size()); ++i) m[lat[i]] = i;
    return m;
  }();
  for (const auto& t : indented) {
    const auto it = lookup.find(t);
    if (it != lookup.end()) mesh.points[it->second].y -= 1.5 * sy;
  }
  std::mt19937_64 rng(seed);
  const double amplitude = 0.08 * std::min(sx, 2.0 * sy);
  const auto& lat = builder.lattice();
  for (int i = 0; i < static_cast<int>(lat.size()); ++i) {
    const double r = amplitude * unit_draw(rng);
    const double theta = 2.0 * 3.14159265358979323846 * unit_draw(rng);
    if (!interior(lat[i])) continue;
    mesh.points[i].x += r * std::cos(theta);
    mesh.points[i].y += r * std::sin(theta);
  }
  return mesh;
}

}  // namespace

PolygonalMesh generate_mesh(MeshFamily family, int refinement, std::uint64_t seed) {
  if (refinement < 1) {
    throw std::invalid_argument("mesh refinement must be >= 1, got " + std::to_string(refinement));
  }
  PolygonalMesh mesh;
  switch (family) {
    case MeshFamily::Quad: mesh = make_quad(refinement); break;
    case MeshFamily::Rhom: mesh = make_rhom(refinement); break;
    case MeshFamily::Hexa: mesh = make_hexa(refinement, false); break;
    case MeshFamily::Webm: mesh = make_webm(refinement, seed); break;
    case MeshFamily::Dode: mesh = make_hexa(refinement, true); break;
  }
  mesh.family = family;
  mesh.refinement = refinement;
  mesh.seed = seed;
  mesh.boundary_edges = find_boundary_edges(mesh.cells);
  return mesh;
}

std::vector<Violation> validate_mesh(const PolygonalMesh& mesh) {
  std::vector<Violation> out;
  if (mesh.cells.empty() || mesh.points.empty()) {
    out.push_back({ViolationKind::EmptyMesh, -1, "mesh has no cells or no points"});
    return out;
  }
  const int np = static_cast<int>(mesh.points.size());
  for (int i = 0; i < np; ++i) {
    if (!std::isfinite(mesh.points[i].x) || !std::isfinite(mesh.points[i].y)) {
      out.push_back({ViolationKind::NonFiniteCoordinate, -1,
                     "point " + std::to_string(i) + " has a non-finite coordinate"});
    }
  }
  if (!out.empty()) return out;

  bool indices_ok = true;
  double area_sum = 0.0;
  for (int c = 0; c < static_cast<int>(mesh.cells.size()); ++c) {
    const auto& cell = mesh.cells[c];
    const std::string tag = "cell " + std::to_string(c);
    if (cell.size() < 3) {
      out.push_back({ViolationKind::TooFewVertices, c, tag + " has fewer than 3 vertices"});
      indices_ok = false;
      continue;
    }
    bool in_range = true;
    for (int id : cell.vertices) in_range = in_range && id >= 0 && id < np;
    if (!in_range) {
      out.push_back({ViolationKind::IndexOutOfRange, c, tag + " references a missing point"});
      indices_ok = false;
      continue;
    }
    const auto v = mesh.cell_vertices(c);
    const double a = signed_area(v);
    area_sum += a;
    if (std::abs(a) <= 1e-14) {
      out.push_back({ViolationKind::DegenerateCell, c, tag + " has zero area"});
      continue;
    }
    if (!is_simple(v)) {
      out.push_back({ViolationKind::NotSimple, c, tag + " is not a simple polygon"});
    }
    if (a < 0.0) {
      out.push_back({ViolationKind::Orientation, c, tag + " is oriented clockwise"});
    }
  }
  if (std::abs(area_sum - 1.0) > 1e-12) {
    out.push_back({ViolationKind::AreaMismatch, -1,
                   "cell areas sum to " + std::to_string(area_sum) + " instead of 1"});
  }
  if (!indices_ok) return out;

  // Directed-edge bookkeeping: an interior edge appears once in each direction.
  std::map<std::pair<int, int>, std::vector<int>> directed;
  for (int c = 0; c < static_cast<int>(mesh.cells.size()); ++c) {
    const auto& vs = mesh.cells[c].vertices;
    const int m = static_cast<int>(vs.size());
    for (int e = 0; e < m; ++e) directed[{vs[e], vs[(e + 1) % m]}].push_back(c);
  }
  std::vector<BoundaryEdge> expected_boundary;
  for (int c = 0; c < static_cast<int>(mesh.cells.size()); ++c) {
    const auto& vs = mesh.cells[c].vertices;
    const int m = static_cast<int>(vs.size());
    for (int e = 0; e < m; ++e) {
      const int a = vs[e];
      const int b = vs[(e + 1) % m];
      const auto& same = directed[{a, b}];
      const auto it = directed.find({b, a});
      const std::size_t opposite = it == directed.end() ? 0 : it->second.size();
      if (same.size() > 1 || opposite > 1) {
        out.push_back({ViolationKind::EdgeSharing, c,
                       "edge (" + std::to_string(a) + "," + std::to_string(b) +
                           ") is used by more than two cells or twice with one orientation"});
      } else if (opposite == 0) {
        expected_boundary.push_back({c, e});
        const Point2 pa = mesh.points[a];
        const Point2 pb = mesh.points[b];
        auto on_box = [](Point2 p) {
          constexpr double tol = 1e-12;
          return std::abs(p.x) < tol || std::abs(p.x - 1.0) < tol || std::abs(p.y) < tol ||
                 std::abs(p.y - 1.0) < tol;
        };
        // both endpoints on the same side of the square
        const bool same_side = (std::abs(pa.x) < 1e-12 && std::abs(pb.x) < 1e-12) ||
                               (std::abs(pa.x - 1) < 1e-12 && std::abs(pb.x - 1) < 1e-12) ||
                               (std::abs(pa.y) < 1e-12 && std::abs(pb.y) < 1e-12) ||
                               (std::abs(pa.y - 1) < 1e-12 && std::abs(pb.y - 1) < 1e-12);
        if (!on_box(pa) || !on_box(pb) || !same_side) {
          out.push_back({ViolationKind::BoundaryOffDomain, c,
                         "unmatched edge " + std::to_string(e) + " of cell " + std::to_string(c) +
                             " does not lie on the boundary of the unit square"});
        }
      }
    }
  }
  auto sorted = [](std::vector<BoundaryEdge> v) {
    std::sort(v.begin(), v.end(), [](const BoundaryEdge& l, const BoundaryEdge& r) {
      return std::pair(l.cell, l.local_edge) < std::pair(r.cell, r.local_edge);
    });
    return v;
  };
  if (sorted(expected_boundary) != sorted(mesh.boundary_edges)) {
    out.push_back({ViolationKind::BoundaryMismatch, -1,
                   "boundary edge list does not match the edges used by a single cell"});
  }
  return out;
}

}  // namespace evem
