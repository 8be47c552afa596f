#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "evem/element.hpp"
#include "evem/mesh.hpp"

namespace evem {

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Displacement field u(x, y), used for Dirichlet data.
using DisplacementField = std::function<Eigen::Vector2d(Point2)>;

/// Global nodes: mesh points first, then (k = 2) one node per mesh edge at its midpoint.
/// Node j owns global dofs 2j and 2j+1.
struct DofMap {
  int k = 1;
  std::vector<Point2> nodes;
  std::vector<std::vector<int>> cell_nodes;  ///< DofLayout node order
  std::vector<char> on_boundary;

  int node_count() const { return static_cast<int>(nodes.size()); }
  int node_dofs() const { return 2 * node_count(); }
};

DofMap build_dof_map(const PolygonalMesh& mesh, int k);

/// Method applied to every cell; p and s are resolved per cell from its vertex count.
struct MethodSpec {
  int k = 1;
  BasisKind kind = BasisKind::Standard;
  std::optional<int> p;
  std::optional<ProjectionNorm> norm;
  double tau = 0.5;
};

struct Discretization {
  DofMap dofs;
  std::vector<ElementOperators> elements;
};

Discretization discretize(const PolygonalMesh& mesh, const MethodSpec& method,
                          const Eigen::Matrix3d& c, const VectorField2* body);

/// Condensed: unknowns are node dofs only. Full: internal moments of every
/// element are kept as extra unknowns after the node dofs.
enum class AssemblyMode { Condensed, Full };

struct GlobalSystem {
  AssemblyMode mode = AssemblyMode::Condensed;
  Eigen::SparseMatrix<double> K;
  Eigen::VectorXd f;
  int node_dofs = 0;
  std::vector<int> internal_offset;  ///< first global internal dof per cell (Full mode)

  int size() const { return static_cast<int>(f.size()); }
};

/// Global indices of the dofs of one element (condensed: boundary dofs only).
std::vector<int> element_dof_indices(const Discretization& disc, const GlobalSystem& system,
                                     int cell);

GlobalSystem assemble(const Discretization& disc, AssemblyMode mode = AssemblyMode::Condensed);

struct ConstrainedSystem {
  Eigen::SparseMatrix<double> K;  ///< free-free block
  Eigen::VectorXd f;              ///< with the lifting of prescribed values
  std::vector<int> free_index;    ///< global dof -> free index, -1 if prescribed
  Eigen::VectorXd values;         ///< prescribed values, zero on free dofs
};

/// Prescribes every dof of the boundary nodes to g(node) by row/column elimination.
ConstrainedSystem apply_dirichlet(const GlobalSystem& system, const DofMap& dofs,
                                  const DisplacementField& g);

/// Sparse LDL^T solve; throws SolverError naming the smallest pivot on
/// failure or when the relative residual exceeds 1e-10.
Eigen::VectorXd solve(const Eigen::SparseMatrix<double>& k, const Eigen::VectorXd& f,
                      double* residual = nullptr);

/// Solves the free block and returns the full global vector.
Eigen::VectorXd solve(const ConstrainedSystem& system, double* residual = nullptr);

struct Solution {
  Eigen::VectorXd global;
  std::vector<Eigen::VectorXd> element_dofs;
  std::vector<Eigen::VectorXd> strain_coefficients;
  double residual = 0.0;
};

/// Element dofs (internal moments recovered for condensed systems) and projected strain.
Solution recover_solution(const Discretization& disc, const GlobalSystem& system,
                          const Eigen::VectorXd& u);

struct SolveResult {
  Discretization disc;
  GlobalSystem system;
  Solution solution;
};

/// discretize, assemble, impose g on the boundary, solve, recover.
SolveResult solve_dirichlet_problem(const PolygonalMesh& mesh, const MethodSpec& method,
                                    const Eigen::Matrix3d& c, const VectorField2* body,
                                    const DisplacementField& g,
                                    AssemblyMode mode = AssemblyMode::Condensed);

}  // namespace evem
