#pragma once

#include <string_view>

#include <Eigen/Dense>

namespace evem {

enum class PlaneModel { PlaneStress, PlaneStrain };

std::string_view to_string(PlaneModel model);
PlaneModel parse_plane_model(std::string_view tag);

/// Isotropic linear elastic material. Voigt order (xx, yy, xy) with engineering shear strain.
struct Material {
  double young = 2.5;
  double poisson = 0.25;
  PlaneModel model = PlaneModel::PlaneStress;

  /// Throws std::invalid_argument unless E > 0 and -1 < nu < 0.5.
  void validate() const;
  Eigen::Matrix3d elasticity() const;
};

/// Plane stress: E/(1-nu^2) [[1,nu,0],[nu,1,0],[0,0,(1-nu)/2]]
/// Plane strain: E/((1+nu)(1-2nu)) [[1-nu,nu,0],[nu,1-nu,0],[0,0,(1-2nu)/2]]
Eigen::Matrix3d elasticity_matrix(double young, double poisson, PlaneModel model);

/// 2-norm condition number of C.
double condition_number(const Eigen::Matrix3d& c);

/// Above this condition number, drivers print a near-incompressibility warning.
inline constexpr double kElasticityConditionWarning = 1e3;

}  // namespace evem
