#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "evem/material.hpp"
#include "evem/polynomial.hpp"
#include "evem/solver.hpp"

namespace evem {

using StrainField = std::function<Eigen::Vector3d(Point2)>;

enum class LoadCase { A, B };

std::string_view to_string(LoadCase lc);
LoadCase parse_load_case(std::string_view tag);

/// Exact fields of a manufactured solution on the unit square.
struct ManufacturedProblem {
  std::string name;
  Material material;
  DisplacementField displacement;
  StrainField strain;
  VectorField2 body_force;
  bool body_force_zero = false;
};

/// Material of the reference experiments: E = 2.5, nu = 0.25, plane stress.
Material reference_material();

/// Sixth-degree polynomial displacement with b = 0 for the reference material.
/// Throws std::invalid_argument when the material leaves a body force above 1e-6.
ManufacturedProblem load_case_A(const Material& material = reference_material());

/// u = (x, y) sin(pi x) sin(pi y); b = -L^T(C eps) for the given material.
ManufacturedProblem load_case_B(const Material& material = reference_material());

ManufacturedProblem make_load_case(LoadCase lc, const Material& material);

/// Polynomial displacement in physical coordinates; strain by differentiation
/// and b = -L^T(C eps).
ManufacturedProblem polynomial_problem(const PolyVec2& displacement, const Material& material);

/// L^T(C eps) + b at x, with L^T applied by 4th-order central differences of step h.
Eigen::Vector2d equilibrium_residual(const ManufacturedProblem& problem, Point2 x,
                                     double h = 1e-3);

struct ErrorReport {
  double error = 0.0;
  double exact_norm = 0.0;
  std::vector<double> element_contributions;  ///< 1/2 int (e)^T C (e) dA per cell
};

/// sqrt(1/2 int eps^T C eps dA) over the unit square, refined until the
/// relative change is below 1e-10.
double exact_energy_norm(const ManufacturedProblem& problem);

/// Relative energy error of the projected strain.
ErrorReport energy_error(const Discretization& disc, const Solution& solution,
                         const ManufacturedProblem& problem, int quadrature_degree = 12);

/// Mean stress (s_xx + s_yy + s_zz) / 3 with s_zz = nu (s_xx + s_yy) in plane
/// strain and 0 in plane stress.
double mean_stress(const Eigen::Vector3d& strain, const Material& material);

struct PressureSample {
  double x = 0.0;
  double y = 0.0;
  double p = 0.0;
  int cell = -1;
  bool outside = false;  ///< evaluated on the nearest cell
};

/// Cell-centred n x n grid over the unit square.
std::vector<PressureSample> pressure_field(const PolygonalMesh& mesh, const Discretization& disc,
                                           const Solution& solution, const Material& material,
                                           int n);
std::vector<PressureSample> exact_pressure_field(const ManufacturedProblem& problem, int n);

}  // namespace evem
