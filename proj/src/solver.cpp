#include "evem/solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <string>

#include <Eigen/SparseCholesky>

namespace evem {

DofMap build_dof_map(const PolygonalMesh& mesh, int k) {
  if (k != 1 && k != 2) throw std::invalid_argument("k must be 1 or 2");
  DofMap map;
  map.k = k;
  map.nodes = mesh.points;
  std::map<std::pair<int, int>, int> edge_node;
  for (const auto& cell : mesh.cells) {
    const int m = cell.size();
    std::vector<int> nodes(cell.vertices.begin(), cell.vertices.end());
    if (k == 2) {
      for (int e = 0; e < m; ++e) {
        const int a = cell.vertices[e];
        const int b = cell.vertices[(e + 1) % m];
        const auto key = std::minmax(a, b);
        auto [it, inserted] = edge_node.try_emplace({key.first, key.second}, map.node_count());
        if (inserted) map.nodes.push_back(0.5 * (mesh.points[a] + mesh.points[b]));
        nodes.push_back(it->second);
      }
    }
    map.cell_nodes.push_back(std::move(nodes));
  }
  map.on_boundary.assign(map.nodes.size(), 0);
  for (const auto& be : mesh.boundary_edges) {
    const auto& cn = map.cell_nodes[be.cell];
    const int m = mesh.cells[be.cell].size();
    map.on_boundary[cn[be.local_edge]] = 1;
    map.on_boundary[cn[(be.local_edge + 1) % m]] = 1;
    if (k == 2) map.on_boundary[cn[m + be.local_edge]] = 1;
  }
  return map;
}

Discretization discretize(const PolygonalMesh& mesh, const MethodSpec& method,
                          const Eigen::Matrix3d& c, const VectorField2* body) {
  Discretization disc;
  disc.dofs = build_dof_map(mesh, method.k);
  disc.elements.reserve(mesh.cells.size());
  for (std::size_t i = 0; i < mesh.cells.size(); ++i) {
    const auto verts = mesh.cell_vertices(static_cast<int>(i));
    const auto config = configure_element(static_cast<int>(verts.size()), method.k, method.kind,
                                          method.p, method.norm, method.tau);
    disc.elements.push_back(compute_element(verts, config, c, body, static_cast<int>(i)));
  }
  return disc;
}

std::vector<int> element_dof_indices(const Discretization& disc, const GlobalSystem& system,
                                     int cell) {
  const auto& nodes = disc.dofs.cell_nodes[cell];
  std::vector<int> idx;
  for (int n : nodes) {
    idx.push_back(2 * n);
    idx.push_back(2 * n + 1);
  }
  if (system.mode == AssemblyMode::Full) {
    const int ni = disc.elements[cell].layout.internal;
    for (int i = 0; i < ni; ++i) idx.push_back(system.internal_offset[cell] + i);
  }
  return idx;
}

GlobalSystem assemble(const Discretization& disc, AssemblyMode mode) {
  GlobalSystem sys;
  sys.mode = mode;
  sys.node_dofs = disc.dofs.node_dofs();
  int total = sys.node_dofs;
  const int ncell = static_cast<int>(disc.elements.size());
  if (mode == AssemblyMode::Full) {
    sys.internal_offset.resize(ncell);
    for (int c = 0; c < ncell; ++c) {
      sys.internal_offset[c] = total;
      total += disc.elements[c].layout.internal;
    }
  }
  sys.f = Eigen::VectorXd::Zero(total);
  std::vector<Eigen::Triplet<double>> trip;
  for (int c = 0; c < ncell; ++c) {
    const auto& el = disc.elements[c];
    const Eigen::MatrixXd& ke = mode == AssemblyMode::Full ? el.K : el.condensed.k;
    const Eigen::VectorXd& fe = mode == AssemblyMode::Full ? el.f : el.condensed.f;
    const auto idx = element_dof_indices(disc, sys, c);
    if (static_cast<Eigen::Index>(idx.size()) != ke.rows()) {
      throw SolverError("dof map mismatch in cell " + std::to_string(c));
    }
    for (std::size_t i = 0; i < idx.size(); ++i) {
      sys.f(idx[i]) += fe(i);
      for (std::size_t j = 0; j < idx.size(); ++j) {
        if (ke(i, j) != 0.0) trip.emplace_back(idx[i], idx[j], ke(i, j));
      }
    }
  }
  sys.K.resize(total, total);
  sys.K.setFromTriplets(trip.begin(), trip.end());
  return sys;
}

ConstrainedSystem apply_dirichlet(const GlobalSystem& system, const DofMap& dofs,
                                  const DisplacementField& g) {
  ConstrainedSystem cs;
  const int total = system.size();
  cs.values = Eigen::VectorXd::Zero(total);
  cs.free_index.assign(total, 0);
  for (int n = 0; n < dofs.node_count(); ++n) {
    if (!dofs.on_boundary[n]) continue;
    const Eigen::Vector2d v = g(dofs.nodes[n]);
    cs.values(2 * n) = v.x();
    cs.values(2 * n + 1) = v.y();
    cs.free_index[2 * n] = -1;
    cs.free_index[2 * n + 1] = -1;
  }
  int nfree = 0;
  for (auto& fi : cs.free_index) {
    if (fi >= 0) fi = nfree++;
  }
  cs.f = Eigen::VectorXd::Zero(nfree);
  for (int i = 0; i < total; ++i) {
    if (cs.free_index[i] >= 0) cs.f(cs.free_index[i]) = system.f(i);
  }
  std::vector<Eigen::Triplet<double>> trip;
  for (int col = 0; col < system.K.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(system.K, col); it; ++it) {
      const int fr = cs.free_index[it.row()];
      const int fc = cs.free_index[it.col()];
      if (fr < 0) continue;
      if (fc >= 0) {
        trip.emplace_back(fr, fc, it.value());
      } else {
        cs.f(fr) -= it.value() * cs.values(it.col());
      }
    }
  }
  cs.K.resize(nfree, nfree);
  cs.K.setFromTriplets(trip.begin(), trip.end());
  return cs;
}

Eigen::VectorXd solve(const Eigen::SparseMatrix<double>& k, const Eigen::VectorXd& f,
                      double* residual) {
  if (k.rows() == 0) {
    if (residual) *residual = 0.0;
    return Eigen::VectorXd::Zero(0);
  }
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(k);
  const bool factored = ldlt.info() == Eigen::Success;
  if (factored) {
    const Eigen::VectorXd d = ldlt.vectorD();
    Eigen::Index at = 0;
    const double smallest = d.minCoeff(&at);
    const double largest = d.cwiseAbs().maxCoeff();
    if (!(smallest > 1e-14 * largest)) {
      throw SolverError("factorization failed: smallest pivot " + std::to_string(smallest) +
                        " at dof " + std::to_string(at) + " (largest " +
                        std::to_string(largest) + ")");
    }
  } else {
    throw SolverError("factorization failed: numerically zero pivot");
  }
  Eigen::VectorXd u = ldlt.solve(f);
  const double fn = f.norm() > 0.0 ? f.norm() : 1.0;
  Eigen::VectorXd res = f - k * u;
  double r = res.norm() / fn;
  for (int step = 0; step < 3 && r > 1e-14; ++step) {
    const Eigen::VectorXd next = u + ldlt.solve(res);
    const Eigen::VectorXd next_res = f - k * next;
    const double next_r = next_res.norm() / fn;
    if (!(next_r < r)) break;
    u = next;
    res = next_res;
    r = next_r;
  }
  if (residual) *residual = r;
  if (!(r <= 1e-10)) {
    std::ostringstream os;
    os << "relative residual " << r << " exceeds 1e-10";
    throw SolverError(os.str());
  }
  return u;
}

Eigen::VectorXd solve(const ConstrainedSystem& system, double* residual) {
  const Eigen::VectorXd uf = solve(system.K, system.f, residual);
  Eigen::VectorXd u = system.values;
  for (std::size_t i = 0; i < system.free_index.size(); ++i) {
    if (system.free_index[i] >= 0) u(i) = uf(system.free_index[i]);
  }
  return u;
}

Solution recover_solution(const Discretization& disc, const GlobalSystem& system,
                          const Eigen::VectorXd& u) {
  Solution sol;
  sol.global = u;
  const int ncell = static_cast<int>(disc.elements.size());
  for (int c = 0; c < ncell; ++c) {
    const auto& el = disc.elements[c];
    const auto idx = element_dof_indices(disc, system, c);
    Eigen::VectorXd ue(el.layout.n());
    for (int i = 0; i < el.layout.boundary; ++i) ue(i) = u(idx[i]);
    if (el.layout.internal > 0) {
      if (system.mode == AssemblyMode::Full) {
        for (int i = el.layout.boundary; i < el.layout.n(); ++i) ue(i) = u(idx[i]);
      } else {
        ue.tail(el.layout.internal) =
            el.condensed.recover * ue.head(el.layout.boundary) + el.condensed.offset;
      }
    }
    sol.strain_coefficients.push_back(el.strain_coefficients(ue));
    sol.element_dofs.push_back(std::move(ue));
  }
  return sol;
}

SolveResult solve_dirichlet_problem(const PolygonalMesh& mesh, const MethodSpec& method,
                                    const Eigen::Matrix3d& c, const VectorField2* body,
                                    const DisplacementField& g, AssemblyMode mode) {
  SolveResult r;
  r.disc = discretize(mesh, method, c, body);
  r.system = assemble(r.disc, mode);
  const auto cs = apply_dirichlet(r.system, r.disc.dofs, g);
  double residual = 0.0;
  const Eigen::VectorXd u = solve(cs, &residual);
  r.solution = recover_solution(r.disc, r.system, u);
  r.solution.residual = residual;
  return r;
}

}  // namespace evem
