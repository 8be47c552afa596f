#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "evem/element.hpp"
#include "evem/mesh.hpp"
#include "evem/problems.hpp"

namespace evem {

BasisKind parse_method(std::string_view tag);

struct RunConfig {
  BasisKind method = BasisKind::Standard;
  int k = 1;
  std::optional<int> p;  ///< empty: chosen per cell
  std::optional<ProjectionNorm> norm;
  double tau = 0.5;
  MeshFamily family = MeshFamily::Quad;
  std::vector<int> refinements{4, 8, 16, 32};
  LoadCase load_case = LoadCase::A;
  Material material = reference_material();
  std::uint64_t seed = kDefaultMeshSeed;
  int quadrature_degree = 12;

  /// Throws std::invalid_argument for unsupported combinations, before any solve.
  void validate() const;
  MethodSpec method_spec() const;
  /// Single-line key=value echo used in CSV headers.
  std::string describe() const;
};

struct ConvergenceRow {
  MeshFamily family = MeshFamily::Quad;
  int refinement = 0;
  double h = 0.0;
  int dofs = 0;  ///< global dofs after condensation, boundary included
  double error = 0.0;
  int stabilized_cells = 0;
  int cells = 0;
  double residual = 0.0;
};

struct ConvergenceSeries {
  RunConfig config;
  std::vector<ConvergenceRow> rows;
  double slope = 0.0;  ///< least squares of log10(error) against log10(dofs)
};

/// Least-squares slope of log10(y) against log10(x); NaN with fewer than two points.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

ConvergenceRow run_single(const RunConfig& config, int refinement);
ConvergenceSeries run_convergence(const RunConfig& config);

/// Columns family,N,h,dofs,energy_error; '#' lines carry the config and the slope.
void write_convergence_csv(std::ostream& out, const ConvergenceSeries& series);

/// One series per p. Values violating the mode-count condition on some cell
/// are reported on `warnings` and run with stabilization.
std::vector<ConvergenceSeries> run_p_sweep(const RunConfig& config, const std::vector<int>& ps,
                                           std::ostream* warnings = nullptr);
void write_p_sweep_csv(std::ostream& out, const std::vector<ConvergenceSeries>& sweep);

struct PressureMapConfig {
  MeshFamily family = MeshFamily::Quad;
  int refinement = 4;
  int grid = 40;
  Material material{2.5, 0.49995, PlaneModel::PlaneStrain};
  std::uint64_t seed = kDefaultMeshSeed;
};

struct PressureMaps {
  std::vector<PressureSample> vem;
  std::vector<PressureSample> ucp_p2;
  std::vector<PressureSample> ucp_p3;
  std::vector<PressureSample> exact;
};

/// Load case B, k = 1: standard VEM, UCP p = 2, UCP p = 3 and the exact field.
PressureMaps compute_pressure_maps(const PressureMapConfig& config);

/// Writes pressure_{vem,ucp_p2,ucp_p3,exact}.csv with columns x,y,p into `dir`.
std::vector<std::filesystem::path> export_pressure_maps(const PressureMapConfig& config,
                                                        const std::filesystem::path& dir);

/// Root mean square difference of two maps sampled on the same grid.
double grid_rms(const std::vector<PressureSample>& a, const std::vector<PressureSample>& b);

/// Shortest round-trip decimal form.
std::string format_number(double v);

}  // namespace evem
