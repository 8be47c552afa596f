#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evem/geometry.hpp"

namespace evem {

/// Mesh families of the unit square used in the convergence studies.
///   QUAD  structured squares
///   RHOM  QUAD with every odd/odd interior vertex pulled into a cell (convex + concave quads)
///   HEXA  hexagonal tiling clipped to the square
///   WEBM  HEXA with indented hexagons and seeded vertex jitter (convex + concave hexagons)
///   DODE  HEXA with a vertex inserted at every edge midpoint (interior 12-gons)
enum class MeshFamily { Quad, Rhom, Hexa, Webm, Dode };

std::string_view to_string(MeshFamily family);
/// Accepts the upper-case tags QUAD, RHOM, HEXA, WEBM, DODE (case-insensitive).
MeshFamily parse_mesh_family(std::string_view tag);

inline constexpr std::uint64_t kDefaultMeshSeed = 20201;

/// Counter-clockwise vertex ids into PolygonalMesh::points.
struct Polygon {
  std::vector<int> vertices;

  int size() const { return static_cast<int>(vertices.size()); }
  friend bool operator==(const Polygon&, const Polygon&) = default;
};

struct BoundaryEdge {
  int cell = 0;
  int local_edge = 0;  ///< edge from local vertex i to i+1

  friend bool operator==(const BoundaryEdge&, const BoundaryEdge&) = default;
};

struct PolygonalMesh {
  MeshFamily family = MeshFamily::Quad;
  int refinement = 0;
  std::uint64_t seed = 0;
  std::vector<Point2> points;
  std::vector<Polygon> cells;
  std::vector<BoundaryEdge> boundary_edges;

  std::vector<Point2> cell_vertices(int cell) const;
  /// Mesh-size parameter h: the largest cell diameter.
  double max_diameter() const;
};

PolygonGeometry polygon_geometry(const Polygon& poly, std::span<const Point2> points);
Point2 edge_normal(const Polygon& poly, std::span<const Point2> points, int edge);

/// Edges used by exactly one cell, ordered by cell then local edge.
std::vector<BoundaryEdge> find_boundary_edges(const std::vector<Polygon>& cells);

/// Deterministic in (family, refinement, seed). Throws std::invalid_argument for refinement < 1.
PolygonalMesh generate_mesh(MeshFamily family, int refinement,
                            std::uint64_t seed = kDefaultMeshSeed);

enum class ViolationKind {
  EmptyMesh,
  NonFiniteCoordinate,
  IndexOutOfRange,
  TooFewVertices,
  DegenerateCell,
  NotSimple,
  Orientation,
  AreaMismatch,
  EdgeSharing,
  BoundaryMismatch,
  BoundaryOffDomain,
};

struct Violation {
  ViolationKind kind;
  int cell = -1;  ///< -1 when not tied to one cell
  std::string message;
};

/// Empty result iff the mesh is a valid conforming tiling of (0,1)^2.
std::vector<Violation> validate_mesh(const PolygonalMesh& mesh);

}  // namespace evem
