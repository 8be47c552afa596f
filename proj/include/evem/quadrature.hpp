#pragma once

#include <span>
#include <vector>

#include "evem/geometry.hpp"

namespace evem {

/// Gauss-Legendre rule mapped to [0, 1]; weights sum to 1.
struct LineRule {
  std::vector<double> points;
  std::vector<double> weights;
};

/// n-point rule, exact for polynomials of degree 2n-1. Supports 1 <= n <= 64.
const LineRule& gauss_legendre(int n);

struct QuadraturePoint {
  Point2 point;
  double weight = 0.0;
};

/// Collapsed (Duffy) tensor Gauss rule on a triangle, exact for polynomial
/// integrands of total degree <= `degree`.
std::vector<QuadraturePoint> triangle_rule(Point2 a, Point2 b, Point2 c, int degree);

/// Ear-clipping sub-triangulation plus triangle_rule on each triangle.
std::vector<QuadraturePoint> polygon_rule(std::span<const Point2> vertices, int degree);

}  // namespace evem
