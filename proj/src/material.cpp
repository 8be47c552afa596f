#include "evem/material.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

namespace evem {

std::string_view to_string(PlaneModel model) {
  return model == PlaneModel::PlaneStress ? "plane_stress" : "plane_strain";
}

PlaneModel parse_plane_model(std::string_view tag) {
  std::string t(tag);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  std::replace(t.begin(), t.end(), '-', '_');
  if (t == "plane_stress" || t == "stress") return PlaneModel::PlaneStress;
  if (t == "plane_strain" || t == "strain") return PlaneModel::PlaneStrain;
  throw std::invalid_argument("unknown plane model '" + std::string(tag) + "'");
}

void Material::validate() const {
  if (!(young > 0.0) || !std::isfinite(young)) {
    throw std::invalid_argument("Young's modulus must be positive");
  }
  if (!(poisson > -1.0 && poisson < 0.5)) {
    throw std::invalid_argument("Poisson ratio must lie in (-1, 0.5)");
  }
}

Eigen::Matrix3d Material::elasticity() const {
  validate();
  return elasticity_matrix(young, poisson, model);
}

Eigen::Matrix3d elasticity_matrix(double young, double poisson, PlaneModel model) {
  Material{young, poisson, model}.validate();
  const double nu = poisson;
  Eigen::Matrix3d c = Eigen::Matrix3d::Zero();
  if (model == PlaneModel::PlaneStress) {
    const double f = young / (1.0 - nu * nu);
    c << 1.0, nu, 0.0, nu, 1.0, 0.0, 0.0, 0.0, 0.5 * (1.0 - nu);
    c *= f;
  } else {
    const double f = young / ((1.0 + nu) * (1.0 - 2.0 * nu));
    c << 1.0 - nu, nu, 0.0, nu, 1.0 - nu, 0.0, 0.0, 0.0, 0.5 * (1.0 - 2.0 * nu);
    c *= f;
  }
  return c;
}

double condition_number(const Eigen::Matrix3d& c) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(c, Eigen::EigenvaluesOnly);
  const auto ev = es.eigenvalues().cwiseAbs();
  return ev.maxCoeff() / ev.minCoeff();
}

}  // namespace evem
