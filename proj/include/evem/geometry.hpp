#pragma once

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace evem {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Area, area-weighted centroid and diameter (max vertex distance) of a
/// simple polygon given in counter-clockwise order.
struct PolygonGeometry {
  double area = 0.0;
  Point2 centroid;
  double diameter = 0.0;
};

/// Shoelace area; positive for counter-clockwise vertex order.
double signed_area(std::span<const Point2> vertices);

/// Throws GeometryError when |area| <= 1e-14.
PolygonGeometry polygon_geometry(std::span<const Point2> vertices);

/// Outward unit normal of edge (i, i+1) of a counter-clockwise polygon,
/// i.e. the normalized tangent rotated by -90 degrees.
Point2 edge_normal(std::span<const Point2> vertices, int edge);

/// True if no two non-adjacent edges intersect and no edge has zero length.
bool is_simple(std::span<const Point2> vertices);

/// Even-odd rule; points on the boundary count as inside.
bool point_in_polygon(Point2 p, std::span<const Point2> vertices, double tol = 1e-12);

/// Ear-clipping triangulation of a simple counter-clockwise polygon. Works for
/// non-convex polygons and tolerates collinear (straight-angle) vertices.
std::vector<std::array<int, 3>> triangulate(std::span<const Point2> vertices);

}  // namespace evem
