#include "evem/geometry.hpp"

#include <algorithm>
#include <numeric>

namespace evem {

double signed_area(std::span<const Point2> vertices) {
  const auto m = vertices.size();
  double twice = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    twice += cross(vertices[i], vertices[(i + 1) % m]);
  }
  return 0.5 * twice;
}

PolygonGeometry polygon_geometry(std::span<const Point2> vertices) {
  if (vertices.size() < 3) {
    throw GeometryError("polygon needs at least 3 vertices");
  }
  // Shift to the first vertex to reduce cancellation in the shoelace sums.
  const Point2 origin = vertices[0];
  const auto m = vertices.size();
  double twice = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const Point2 a = vertices[i] - origin;
    const Point2 b = vertices[(i + 1) % m] - origin;
    const double w = cross(a, b);
    twice += w;
    cx += (a.x + b.x) * w;
    cy += (a.y + b.y) * w;
  }
  const double area = 0.5 * twice;
  if (std::abs(area) <= 1e-14) {
    throw GeometryError("degenerate polygon (area " + std::to_string(area) + ")");
  }
  PolygonGeometry g;
  g.area = area;
  g.centroid = origin + Point2{cx / (6.0 * area), cy / (6.0 * area)};
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      g.diameter = std::max(g.diameter, norm(vertices[i] - vertices[j]));
    }
  }
  return g;
}

Point2 edge_normal(std::span<const Point2> vertices, int edge) {
  const int m = static_cast<int>(vertices.size());
  if (edge < 0 || edge >= m) {
    throw GeometryError("edge index " + std::to_string(edge) + " out of range");
  }
  const Point2 t = vertices[(edge + 1) % m] - vertices[edge];
  const double len = norm(t);
  if (len == 0.0) {
    throw GeometryError("zero-length edge " + std::to_string(edge));
  }
  return {t.y / len, -t.x / len};
}

namespace {

int orientation(Point2 a, Point2 b, Point2 c, double tol) {
  const double v = cross(b - a, c - a);
  if (v > tol) return 1;
  if (v < -tol) return -1;
  return 0;
}

bool on_segment(Point2 a, Point2 b, Point2 p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d, double tol) {
  const int o1 = orientation(a, b, c, tol);
  const int o2 = orientation(a, b, d, tol);
  const int o3 = orientation(c, d, a, tol);
  const int o4 = orientation(c, d, b, tol);
  if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

}  // namespace

bool is_simple(std::span<const Point2> vertices) {
  const int m = static_cast<int>(vertices.size());
  if (m < 3) return false;
  double scale = 0.0;
  for (const auto& v : vertices) scale = std::max({scale, std::abs(v.x), std::abs(v.y)});
  const double tol = 1e-14 * std::max(scale, 1.0) * std::max(scale, 1.0);
  for (int i = 0; i < m; ++i) {
    if (norm(vertices[(i + 1) % m] - vertices[i]) == 0.0) return false;
  }
  for (int i = 0; i < m; ++i) {
    const Point2 a = vertices[i];
    const Point2 b = vertices[(i + 1) % m];
    for (int j = i + 1; j < m; ++j) {
      // adjacent edges share a vertex by construction
      if (j == i + 1 || (i == 0 && j == m - 1)) continue;
      if (segments_intersect(a, b, vertices[j], vertices[(j + 1) % m], tol)) return false;
    }
  }
  return true;
}

bool point_in_polygon(Point2 p, std::span<const Point2> vertices, double tol) {
  const auto m = vertices.size();
  bool inside = false;
  for (std::size_t i = 0, j = m - 1; i < m; j = i++) {
    const Point2 a = vertices[j];
    const Point2 b = vertices[i];
    const Point2 ab = b - a;
    const double len = norm(ab);
    if (len > 0.0 && std::abs(cross(ab, p - a)) <= tol * len &&
        dot(p - a, ab) >= -tol * len && dot(p - b, ab) <= tol * len) {
      return true;
    }
    if ((b.y > p.y) != (a.y > p.y)) {
      const double xi = a.x + (p.y - a.y) * ab.x / ab.y;
      if (p.x < xi) inside = !inside;
    }
  }
  return inside;
}

std::vector<std::array<int, 3>> triangulate(std::span<const Point2> vertices) {
  const int m = static_cast<int>(vertices.size());
  std::vector<std::array<int, 3>> triangles;
  if (m < 3) return triangles;
  triangles.reserve(m - 2);
  std::vector<int> ring(m);
  std::iota(ring.begin(), ring.end(), 0);

  const double area_scale = std::abs(signed_area(vertices));
  const double tol = 1e-12 * area_scale;

  auto inside_or_on = [&](Point2 p, Point2 a, Point2 b, Point2 c) {
    return cross(b - a, p - a) >= -tol && cross(c - b, p - b) >= -tol &&
           cross(a - c, p - c) >= -tol;
  };

  while (ring.size() > 3) {
    const int r = static_cast<int>(ring.size());
    bool clipped = false;
    for (int i = 0; i < r && !clipped; ++i) {
      const int ip = ring[(i + r - 1) % r];
      const int ic = ring[i];
      const int in = ring[(i + 1) % r];
      const Point2 a = vertices[ip];
      const Point2 b = vertices[ic];
      const Point2 c = vertices[in];
      if (cross(b - a, c - b) <= tol) continue;  // reflex or straight
      bool blocked = false;
      for (int j = 0; j < r && !blocked; ++j) {
        const int q = ring[j];
        if (q == ip || q == ic || q == in) continue;
        const Point2 pq = vertices[q];
        if (pq == a || pq == b || pq == c) continue;
        blocked = inside_or_on(pq, a, b, c);
      }
      if (blocked) continue;
      triangles.push_back({ip, ic, in});
      ring.erase(ring.begin() + i);
      clipped = true;
    }
    if (!clipped) {
      std::vector<Point2> rest;
      for (int q : ring) rest.push_back(vertices[q]);
      // only straight vertices left: the remaining ring encloses no area
      if (std::abs(signed_area(rest)) <= tol) return triangles;
      throw GeometryError("ear clipping failed: polygon is not simple");
    }
  }
  triangles.push_back({ring[0], ring[1], ring[2]});
  return triangles;
}

}  // namespace evem
