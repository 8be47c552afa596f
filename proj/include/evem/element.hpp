#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "evem/geometry.hpp"
#include "evem/polyspace.hpp"

namespace evem {

enum class ProjectionNorm { L2, Energy };

std::string_view to_string(ProjectionNorm norm);
ProjectionNorm parse_projection_norm(std::string_view tag);

/// Raised for per-element numerical failures; `cell()` is -1 when unknown.
class ElementError : public std::runtime_error {
 public:
  ElementError(int cell, const std::string& what);
  int cell() const { return cell_; }

 private:
  int cell_;
};

/// Body force b(x, y).
using VectorField2 = std::function<Eigen::Vector2d(Point2)>;

/// Dof bookkeeping of one element. Boundary dofs come first: node j (vertices
/// 0..m-1, then for k = 2 the edge midpoints m..2m-1, edge i joining vertex i
/// to i+1) owns dofs 2j and 2j+1. Internal dofs follow: the scaled moment
/// (1/(w_a |E|)) int v_c m_a dA is dof boundary + 2a + c, with w_a the RMS of
/// m_a over the cell (see moment_weights).
struct DofLayout {
  int m = 0;
  int k = 1;
  int boundary = 0;
  int internal = 0;
  int moment_degree = -1;  ///< -1 when there are no internal moments

  int nodes() const { return m * k; }
  int n() const { return boundary + internal; }
};

DofLayout dof_layout(int m, int k, BasisKind kind, int p);

struct ElementConfig {
  int k = 1;
  BasisKind kind = BasisKind::Standard;
  int p = 0;
  ProjectionNorm norm = ProjectionNorm::L2;
  double tau = 0.5;
  std::optional<int> s;  ///< stabilization order; empty means no stabilization

  /// Throws std::invalid_argument for combinations outside the supported set.
  void validate() const;
};

/// Mode-count condition M >= n - 3.
bool mode_condition(int m, int k, BasisKind kind, int p);

struct PChoice {
  int p = 0;
  std::optional<int> s;
};

/// Smallest admissible p satisfying the mode-count condition, capped at 3 for
/// k = 1 and 4 for k = 2; past the cap the tabulated stabilization order is used.
PChoice choose_p(int m, int k, BasisKind kind);

/// Stabilization order used when the mode-count condition cannot be met.
int fallback_stabilization_order(int k, BasisKind kind);

/// Per-cell configuration. With `p` given, s is empty when the mode-count
/// condition holds and otherwise the fallback order, lowered so the D matrix
/// has no more columns than the element has dofs. STANDARD always uses
/// p = k-1, s = k and the L2 norm; DFP/HYP always use the energy norm; UCP
/// defaults to the energy norm.
ElementConfig configure_element(int m, int k, BasisKind kind, std::optional<int> p = {},
                                std::optional<ProjectionNorm> norm = {}, double tau = 0.5);

StrainBasis make_basis(const ElementConfig& config);

struct ElementGeometry {
  std::vector<Point2> vertices;
  double area = 0.0;
  Point2 centroid;
  double diameter = 0.0;
  ScaledFrame frame;
};

ElementGeometry element_geometry(std::span<const Point2> vertices);

/// Physical positions of the boundary nodes in DofLayout order.
std::vector<Point2> element_nodes(const ElementGeometry& geometry, int k);

/// E are the strain modes, T the test modes (T = W E, W = I for L2 and C for
/// the energy norm). Stress bases S give T = S, E = C^-1 S.
struct ProjectionBasis {
  std::vector<PolyVec3> strain;
  std::vector<PolyVec3> test;
  int degree = 0;

  int modes() const { return static_cast<int>(strain.size()); }
};

ProjectionBasis projection_basis(const StrainBasis& basis, const Eigen::Matrix3d& c,
                                 ProjectionNorm norm);

/// G = int E^T T dA. Throws ElementError when cond(G) > 1e14.
Eigen::MatrixXd compute_G(const ProjectionBasis& basis, const MonomialIntegrals& integrals,
                          int cell = -1);
/// H = int E^T C E dA.
Eigen::MatrixXd compute_H(const ProjectionBasis& basis, const Eigen::Matrix3d& c,
                          const MonomialIntegrals& integrals);
/// Traction work of each test mode against each boundary shape function.
Eigen::MatrixXd compute_B_tilde(const ProjectionBasis& basis, const ElementGeometry& geometry,
                                const DofLayout& layout);
/// w_a = sqrt((1/|E|) int m_a^2 dA) for each moment monomial; w_0 = 1.
Eigen::VectorXd moment_weights(const ElementGeometry& geometry, const DofLayout& layout,
                               const MonomialIntegrals& integrals);
/// -int (L^T T)^T v dA expressed on the internal moments.
Eigen::MatrixXd compute_B_hat(const ProjectionBasis& basis, const ElementGeometry& geometry,
                              const DofLayout& layout, const Eigen::VectorXd& weights);

/// B^T G^-T H G^-1 B
Eigen::MatrixXd compute_Kc(const Eigen::MatrixXd& g, const Eigen::MatrixXd& b,
                           const Eigen::MatrixXd& h);
/// B^T G^-1 B, valid when H = G.
Eigen::MatrixXd compute_Kc_energy(const Eigen::MatrixXd& g, const Eigen::MatrixXd& b);

/// Columns: vector monomials of degree <= s in the scaled frame (column 2b + c
/// carries m_b in component c), rows: the element dof functionals.
Eigen::MatrixXd compute_D(const ElementGeometry& geometry, const DofLayout& layout, int s,
                          const MonomialIntegrals& integrals);
/// tau tr(Kc) (I - D (D^T D)^-1 D^T). Throws ElementError when D is rank deficient.
Eigen::MatrixXd compute_Ks(const Eigen::MatrixXd& kc, const Eigen::MatrixXd& d, double tau,
                           int cell = -1);

/// Internal moment a receives w_a |E| times the L2 projection of b onto the moment
/// space; without internal dofs the vertices share b(v_i) |E| / m.
Eigen::VectorXd load_vector(const VectorField2& body, const ElementGeometry& geometry,
                            const DofLayout& layout, const MonomialIntegrals& integrals);

/// Guyan reduction onto boundary dofs with the recovery map
/// u_internal = recover * u_boundary + offset.
struct Condensation {
  Eigen::MatrixXd k;
  Eigen::VectorXd f;
  Eigen::MatrixXd recover;
  Eigen::VectorXd offset;
};

Condensation static_condensation(const Eigen::MatrixXd& k, const Eigen::VectorXd& f,
                                 const DofLayout& layout, int cell = -1);

/// Number of singular values above rel_tol * sigma_max.
int numeric_rank(const Eigen::MatrixXd& a, double rel_tol = 1e-10);
bool self_stabilization_check(const Eigen::MatrixXd& kc, int n);

struct ElementOperators {
  ElementConfig config;
  DofLayout layout;
  ElementGeometry geometry;
  ProjectionBasis basis;
  Eigen::MatrixXd G;
  Eigen::MatrixXd H;
  Eigen::MatrixXd Btilde;
  Eigen::MatrixXd Bhat;
  Eigen::MatrixXd Kc;
  Eigen::MatrixXd Ks;
  Eigen::MatrixXd D;  ///< empty without stabilization
  Eigen::MatrixXd K;
  Eigen::VectorXd f;
  Eigen::MatrixXd projector;  ///< G^-1 [Btilde Bhat]
  Eigen::VectorXd weights;    ///< moment_weights of the cell
  Condensation condensed;

  /// Coefficients of the projected strain for element dofs u.
  Eigen::VectorXd strain_coefficients(const Eigen::VectorXd& u) const { return projector * u; }
  /// Projected strain sum_j E_j coeffs_j as polynomials in the scaled frame.
  PolyVec3 projected_strain(const Eigen::VectorXd& coeffs) const;
  Eigen::Vector3d strain_at(Point2 x, const Eigen::VectorXd& coeffs) const;
};

/// Full per-element pipeline. `body` may be null for b = 0.
ElementOperators compute_element(std::span<const Point2> vertices, const ElementConfig& config,
                                 const Eigen::Matrix3d& c, const VectorField2* body,
                                 int cell = -1);

}  // namespace evem
