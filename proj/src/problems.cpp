#include "evem/problems.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "evem/quadrature.hpp"

namespace evem {

std::string_view to_string(LoadCase lc) { return lc == LoadCase::A ? "A" : "B"; }

LoadCase parse_load_case(std::string_view tag) {
  std::string t(tag);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::toupper(c); });
  if (t == "A") return LoadCase::A;
  if (t == "B") return LoadCase::B;
  throw std::invalid_argument("unknown load case '" + std::string(tag) + "'");
}

Material reference_material() { return {2.5, 0.25, PlaneModel::PlaneStress}; }

namespace {

double sum_abs(const Polynomial& p) {
  double s = 0.0;
  for (double c : p.coefficients()) s += std::abs(c);
  return s;
}

Polynomial poly_terms(std::initializer_list<std::array<double, 3>> terms) {
  Polynomial p(0);
  for (const auto& t : terms) p.add_term(static_cast<int>(t[1]), static_cast<int>(t[2]), t[0]);
  return p;
}

}  // namespace

ManufacturedProblem load_case_A(const Material& material) {
  const Eigen::Matrix3d c = material.elasticity();
  // strain components as (coefficient, a, b) of x^a y^b
  const PolyVec3 eps{
      poly_terms({{-3.0 / 40.0, 5, 0}, {2.0, 3, 2}, {-13.0 / 8.0, 1, 4}}),
      poly_terms({{-5.0 / 4.0, 3, 2}, {5.0 / 4.0, 1, 4}}),
      poly_terms({{1.0, 4, 1}, {-9.0 / 2.0, 2, 3}, {7.0 / 10.0, 0, 5}}),
  };
  const auto div = equilibrium_operator(transform(c, eps), 1.0);
  const double residual = sum_abs(div[0]) + sum_abs(div[1]);
  if (residual > 1e-6) {
    throw std::invalid_argument(
        "load case A has zero body force only for E = 2.5, nu = 0.25, plane stress; "
        "this material leaves a residual of " + std::to_string(residual));
  }
  ManufacturedProblem p;
  p.name = "A";
  p.material = material;
  p.body_force_zero = true;
  p.displacement = [](Point2 q) {
    const double x = q.x, y = q.y;
    const double x2 = x * x, y2 = y * y;
    return Eigen::Vector2d(-x2 * x2 * x2 / 80.0 + x2 * x2 * y2 / 2.0 -
                               13.0 / 16.0 * x2 * y2 * y2 + 3.0 / 40.0 * y2 * y2 * y2,
                           x * y2 * y2 * y / 4.0 - 5.0 / 12.0 * x2 * x * y2 * y);
  };
  p.strain = [](Point2 q) {
    const double x = q.x, y = q.y;
    const double x2 = x * x, y2 = y * y;
    return Eigen::Vector3d(-3.0 / 40.0 * x2 * x2 * x + 2.0 * x2 * x * y2 - 13.0 / 8.0 * x * y2 * y2,
                           -5.0 / 4.0 * x2 * x * y2 + 5.0 / 4.0 * x * y2 * y2,
                           x2 * x2 * y - 4.5 * x2 * y2 * y + 0.7 * y2 * y2 * y);
  };
  p.body_force = [](Point2) { return Eigen::Vector2d::Zero().eval(); };
  return p;
}

ManufacturedProblem load_case_B(const Material& material) {
  const Eigen::Matrix3d c = material.elasticity();
  constexpr double pi = std::numbers::pi;
  ManufacturedProblem p;
  p.name = "B";
  p.material = material;
  p.displacement = [](Point2 q) {
    const double s = std::sin(pi * q.x) * std::sin(pi * q.y);
    return Eigen::Vector2d(q.x * s, q.y * s);
  };
  p.strain = [](Point2 q) {
    const double sx = std::sin(pi * q.x), cx = std::cos(pi * q.x);
    const double sy = std::sin(pi * q.y), cy = std::cos(pi * q.y);
    const double s = sx * sy;
    return Eigen::Vector3d(s + pi * q.x * cx * sy, s + pi * q.y * sx * cy,
                           pi * q.x * sx * cy + pi * q.y * cx * sy);
  };
  p.body_force = [c](Point2 q) {
    const double x = q.x, y = q.y;
    const double sx = std::sin(pi * x), cx = std::cos(pi * x);
    const double sy = std::sin(pi * y), cy = std::cos(pi * y);
    const double s = sx * sy, csx = cx * sy, csy = sx * cy, cc = cx * cy;
    const double pi2 = pi * pi;
    const double exx_x = 2.0 * pi * csx - pi2 * x * s;
    const double exx_y = pi * csy + pi2 * x * cc;
    const double eyy_x = pi * csx + pi2 * y * cc;
    const double eyy_y = 2.0 * pi * csy - pi2 * y * s;
    const double g_x = pi * csy + pi2 * x * cc - pi2 * y * s;
    const double g_y = pi * csx + pi2 * y * cc - pi2 * x * s;
    const double bx = -(c(0, 0) * exx_x + c(0, 1) * eyy_x + c(2, 2) * g_y);
    const double by = -(c(2, 2) * g_x + c(1, 0) * exx_y + c(1, 1) * eyy_y);
    return Eigen::Vector2d(bx, by);
  };
  return p;
}

ManufacturedProblem make_load_case(LoadCase lc, const Material& material) {
  return lc == LoadCase::A ? load_case_A(material) : load_case_B(material);
}

ManufacturedProblem polynomial_problem(const PolyVec2& displacement, const Material& material) {
  const Eigen::Matrix3d c = material.elasticity();
  const PolyVec3 eps{displacement[0].dx(), displacement[1].dy(),
                     displacement[0].dy() + displacement[1].dx()};
  const auto div = equilibrium_operator(transform(c, eps), 1.0);
  ManufacturedProblem p;
  p.name = "polynomial";
  p.material = material;
  p.body_force_zero = div[0].is_zero() && div[1].is_zero();
  p.displacement = [displacement](Point2 q) {
    return Eigen::Vector2d(displacement[0](q.x, q.y), displacement[1](q.x, q.y));
  };
  p.strain = [eps](Point2 q) {
    return Eigen::Vector3d(eps[0](q.x, q.y), eps[1](q.x, q.y), eps[2](q.x, q.y));
  };
  p.body_force = [div](Point2 q) {
    return Eigen::Vector2d(-div[0](q.x, q.y), -div[1](q.x, q.y));
  };
  return p;
}

Eigen::Vector2d equilibrium_residual(const ManufacturedProblem& problem, Point2 x, double h) {
  const Eigen::Matrix3d c = problem.material.elasticity();
  auto stress = [&](double dx, double dy) -> Eigen::Vector3d {
    return c * problem.strain({x.x + dx, x.y + dy});
  };
  auto d = [&](double ex, double ey) -> Eigen::Vector3d {
    return (-stress(2 * h * ex, 2 * h * ey) + 8.0 * stress(h * ex, h * ey) -
            8.0 * stress(-h * ex, -h * ey) + stress(-2 * h * ex, -2 * h * ey)) /
           (12.0 * h);
  };
  const Eigen::Vector3d sx = d(1, 0);
  const Eigen::Vector3d sy = d(0, 1);
  const Eigen::Vector2d div(sx(0) + sy(2), sx(2) + sy(1));
  return div + problem.body_force(x);
}

double exact_energy_norm(const ManufacturedProblem& problem) {
  const Eigen::Matrix3d c = problem.material.elasticity();
  const LineRule& g = gauss_legendre(8);
  auto integrate = [&](int n) {
    const double h = 1.0 / n;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (std::size_t a = 0; a < g.points.size(); ++a) {
          for (std::size_t b = 0; b < g.points.size(); ++b) {
            const Point2 x{(i + g.points[a]) * h, (j + g.points[b]) * h};
            const Eigen::Vector3d e = problem.strain(x);
            sum += g.weights[a] * g.weights[b] * h * h * 0.5 * e.dot(c * e);
          }
        }
      }
    }
    return sum;
  };
  double prev = integrate(2);
  for (int n = 4; n <= 256; n *= 2) {
    const double cur = integrate(n);
    if (std::abs(cur - prev) <= 1e-10 * std::abs(cur)) return std::sqrt(cur);
    prev = cur;
  }
  return std::sqrt(prev);
}

ErrorReport energy_error(const Discretization& disc, const Solution& solution,
                         const ManufacturedProblem& problem, int quadrature_degree) {
  const Eigen::Matrix3d c = problem.material.elasticity();
  ErrorReport r;
  r.exact_norm = exact_energy_norm(problem);
  double total = 0.0;
  for (std::size_t i = 0; i < disc.elements.size(); ++i) {
    const auto& el = disc.elements[i];
    const PolyVec3 ep = el.projected_strain(solution.strain_coefficients[i]);
    const int deg = el.basis.degree;
    std::vector<double> vals(monomial_count(deg));
    double sum = 0.0;
    for (const auto& qp : polygon_rule(el.geometry.vertices, quadrature_degree)) {
      const Point2 l = el.geometry.frame.to_local(qp.point);
      monomial_values(l.x, l.y, deg, vals);
      const Eigen::Vector3d e =
          Eigen::Vector3d(ep[0].evaluate(vals), ep[1].evaluate(vals), ep[2].evaluate(vals)) -
          problem.strain(qp.point);
      sum += qp.weight * 0.5 * e.dot(c * e);
    }
    r.element_contributions.push_back(sum);
    total += sum;
  }
  r.error = std::sqrt(total) / r.exact_norm;
  return r;
}

double mean_stress(const Eigen::Vector3d& strain, const Material& material) {
  const Eigen::Vector3d s = material.elasticity() * strain;
  const double szz =
      material.model == PlaneModel::PlaneStrain ? material.poisson * (s(0) + s(1)) : 0.0;
  return (s(0) + s(1) + szz) / 3.0;
}

namespace {

std::vector<Point2> grid_points(int n) {
  if (n < 1) throw std::invalid_argument("grid resolution must be positive");
  std::vector<Point2> pts;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) pts.push_back({(i + 0.5) / n, (j + 0.5) / n});
  }
  return pts;
}

}  // namespace

std::vector<PressureSample> pressure_field(const PolygonalMesh& mesh, const Discretization& disc,
                                           const Solution& solution, const Material& material,
                                           int n) {
  std::vector<PressureSample> out;
  for (const Point2 x : grid_points(n)) {
    PressureSample s{x.x, x.y, 0.0, -1, false};
    for (std::size_t c = 0; c < mesh.cells.size() && s.cell < 0; ++c) {
      if (point_in_polygon(x, disc.elements[c].geometry.vertices)) s.cell = static_cast<int>(c);
    }
    if (s.cell < 0) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
        const double d = norm(x - disc.elements[c].geometry.centroid);
        if (d < best) {
          best = d;
          s.cell = static_cast<int>(c);
        }
      }
      s.outside = true;
    }
    const auto& el = disc.elements[s.cell];
    s.p = mean_stress(el.strain_at(x, solution.strain_coefficients[s.cell]), material);
    out.push_back(s);
  }
  return out;
}

std::vector<PressureSample> exact_pressure_field(const ManufacturedProblem& problem, int n) {
  std::vector<PressureSample> out;
  for (const Point2 x : grid_points(n)) {
    out.push_back({x.x, x.y, mean_stress(problem.strain(x), problem.material), -1, false});
  }
  return out;
}

}  // namespace evem
