#include "evem/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace evem {

namespace {

constexpr int kMaxLinePoints = 64;

LineRule compute_gauss_legendre(int n) {
  LineRule rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  // Newton iteration on P_n from the Chebyshev-like initial guess.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.points[i] = 0.5 * (1.0 - z);
    rule.points[n - 1 - i] = 0.5 * (1.0 + z);
    rule.weights[i] = 0.5 * w;
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  return rule;
}

}  // namespace

const LineRule& gauss_legendre(int n) {
  static const std::array<LineRule, kMaxLinePoints + 1> rules = [] {
    std::array<LineRule, kMaxLinePoints + 1> r;
    for (int i = 1; i <= kMaxLinePoints; ++i) r[i] = compute_gauss_legendre(i);
    return r;
  }();
  if (n < 1 || n > kMaxLinePoints) {
    throw std::invalid_argument("gauss_legendre: unsupported point count " + std::to_string(n));
  }
  return rules[n];
}

std::vector<QuadraturePoint> triangle_rule(Point2 a, Point2 b, Point2 c, int degree) {
  // x(u, v) = a + u (b - a) + u v (c - b), |J| = 2 |T| u.
  // A degree-d integrand becomes degree d+1 in u and d in v.
  const int n = std::max(1, (degree + 2 + 1) / 2);
  const LineRule& g = gauss_legendre(n);
  const double twice_area = std::abs(cross(b - a, c - a));
  std::vector<QuadraturePoint> out;
  out.reserve(n * n);
  for (int i = 0; i < n; ++i) {
    const double u = g.points[i];
    for (int j = 0; j < n; ++j) {
      const double v = g.points[j];
      const Point2 p = a + u * (b - a) + (u * v) * (c - b);
      out.push_back({p, g.weights[i] * g.weights[j] * twice_area * u});
    }
  }
  return out;
}

std::vector<QuadraturePoint> polygon_rule(std::span<const Point2> vertices, int degree) {
  std::vector<QuadraturePoint> out;
  for (const auto& t : triangulate(vertices)) {
    auto tri = triangle_rule(vertices[t[0]], vertices[t[1]], vertices[t[2]], degree);
    out.insert(out.end(), tri.begin(), tri.end());
  }
  return out;
}

}  // namespace evem
