#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "evem/geometry.hpp"

using namespace evem;

namespace {

const std::vector<Point2> kSquare{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
const std::vector<Point2> kLShape{{0, 0}, {1, 0}, {1, 0.5}, {0.5, 0.5}, {0.5, 1}, {0, 1}};

}  // namespace

TEST(PolygonGeometry, UnitSquare) {
  const auto g = polygon_geometry(kSquare);
  EXPECT_DOUBLE_EQ(g.area, 1.0);
  EXPECT_DOUBLE_EQ(g.centroid.x, 0.5);
  EXPECT_DOUBLE_EQ(g.centroid.y, 0.5);
  EXPECT_DOUBLE_EQ(g.diameter, std::sqrt(2.0));
}

TEST(PolygonGeometry, Triangle) {
  const std::vector<Point2> tri{{0, 0}, {1, 0}, {0, 1}};
  const auto g = polygon_geometry(tri);
  EXPECT_DOUBLE_EQ(g.area, 0.5);
  EXPECT_NEAR(g.centroid.x, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(g.centroid.y, 1.0 / 3.0, 1e-15);
}

TEST(PolygonGeometry, LShapedHexagon) {
  EXPECT_DOUBLE_EQ(polygon_geometry(kLShape).area, 0.75);
}

TEST(PolygonGeometry, DegenerateThrows) {
  const std::vector<Point2> flat{{0, 0}, {1, 0}, {2, 0}};
  EXPECT_THROW(polygon_geometry(flat), GeometryError);
}

TEST(EdgeNormal, UnitSquareEdges) {
  const auto bottom = edge_normal(kSquare, 0);
  EXPECT_DOUBLE_EQ(bottom.x, 0.0);
  EXPECT_DOUBLE_EQ(bottom.y, -1.0);
  const auto right = edge_normal(kSquare, 1);
  EXPECT_DOUBLE_EQ(right.x, 1.0);
  EXPECT_DOUBLE_EQ(right.y, 0.0);
}

TEST(EdgeNormal, Diagonal) {
  const std::vector<Point2> tri{{0, 0}, {1, 1}, {0, 1}};
  const auto n = edge_normal(tri, 0);
  EXPECT_NEAR(n.x, std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(n.y, -std::sqrt(0.5), 1e-15);
}

TEST(EdgeNormal, ZeroLengthThrows) {
  const std::vector<Point2> bad{{0, 0}, {0, 0}, {1, 1}};
  EXPECT_THROW(edge_normal(bad, 0), GeometryError);
}

TEST(EdgeNormal, ClosureSumsToZero) {
  Point2 s;
  for (int e = 0; e < 6; ++e) {
    const double len = norm(kLShape[(e + 1) % 6] - kLShape[e]);
    s = s + len * edge_normal(kLShape, e);
  }
  EXPECT_NEAR(s.x, 0.0, 1e-15);
  EXPECT_NEAR(s.y, 0.0, 1e-15);
}

TEST(IsSimple, DetectsBowTie) {
  EXPECT_TRUE(is_simple(kLShape));
  const std::vector<Point2> bow{{0, 0}, {1, 1}, {1, 0}, {0, 1}};
  EXPECT_FALSE(is_simple(bow));
}

TEST(PointInPolygon, ConcaveNotch) {
  EXPECT_TRUE(point_in_polygon({0.25, 0.75}, kLShape));
  EXPECT_FALSE(point_in_polygon({0.75, 0.75}, kLShape));
  EXPECT_TRUE(point_in_polygon({1.0, 0.25}, kLShape));
}

TEST(Triangulate, AreaIsPreserved) {
  const auto tris = triangulate(kLShape);
  EXPECT_EQ(tris.size(), 4u);
  double a = 0.0;
  for (const auto& t : tris) {
    const std::vector<Point2> tri{kLShape[t[0]], kLShape[t[1]], kLShape[t[2]]};
    const double s = signed_area(tri);
    EXPECT_GT(s, 0.0);
    a += s;
  }
  EXPECT_NEAR(a, 0.75, 1e-15);
}

TEST(Triangulate, CollinearVertices) {
  const std::vector<Point2> poly{{0, 0}, {0.5, 0}, {1, 0}, {1, 1}, {0.5, 1}, {0, 1}};
  double a = 0.0;
  for (const auto& t : triangulate(poly)) {
    a += signed_area(std::vector<Point2>{poly[t[0]], poly[t[1]], poly[t[2]]});
  }
  EXPECT_NEAR(a, 1.0, 1e-15);
}
