#include "evem/study.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace evem {

BasisKind parse_method(std::string_view tag) {
  std::string t(tag);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "vem" || t == "standard") return BasisKind::Standard;
  if (t == "ucp") return BasisKind::Ucp;
  if (t == "dfp") return BasisKind::Dfp;
  if (t == "hyp") return BasisKind::Hyp;
  throw std::invalid_argument("unknown method '" + std::string(tag) + "'");
}

std::string format_number(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

void RunConfig::validate() const {
  if (k != 1 && k != 2) throw std::invalid_argument("k must be 1 or 2");
  if (!(tau >= 0.0)) throw std::invalid_argument("tau must be non-negative");
  if (quadrature_degree < 1) throw std::invalid_argument("quadrature degree must be positive");
  if (refinements.empty()) throw std::invalid_argument("at least one refinement is required");
  for (std::size_t i = 0; i < refinements.size(); ++i) {
    if (refinements[i] < 1) throw std::invalid_argument("refinements must be positive");
    if (i > 0 && refinements[i] <= refinements[i - 1]) {
      throw std::invalid_argument("refinements must be strictly increasing");
    }
  }
  material.validate();
  switch (method) {
    case BasisKind::Standard:
      if (p && *p != k - 1) throw std::invalid_argument("vem uses p = k - 1");
      if (norm && *norm != ProjectionNorm::L2) throw std::invalid_argument("vem uses the L2 norm");
      break;
    case BasisKind::Ucp:
      if (p && (*p < 1 || *p > 4)) throw std::invalid_argument("ucp requires 1 <= p <= 4");
      break;
    case BasisKind::Dfp:
      if (p && (*p < 1 || *p > 4)) throw std::invalid_argument("dfp requires 1 <= p <= 4");
      if (norm && *norm != ProjectionNorm::Energy) {
        throw std::invalid_argument("dfp requires the energy norm");
      }
      break;
    case BasisKind::Hyp:
      if (k != 2) throw std::invalid_argument("hyp requires k = 2");
      if (load_case != LoadCase::B) {
        throw std::invalid_argument("hyp is meant for non-zero body forces (load case B)");
      }
      if (p && (*p < 3 || *p > 4)) throw std::invalid_argument("hyp requires p in {3, 4}");
      if (norm && *norm != ProjectionNorm::Energy) {
        throw std::invalid_argument("hyp requires the energy norm");
      }
      break;
  }
  if (load_case == LoadCase::A) load_case_A(material);
}

MethodSpec RunConfig::method_spec() const { return {k, method, p, norm, tau}; }

std::string RunConfig::describe() const {
  std::ostringstream os;
  os << "method=" << to_string(method) << " k=" << k
     << " p=" << (p ? std::to_string(*p) : std::string("auto")) << " norm="
     << (method == BasisKind::Standard ? "l2"
                                       : std::string(to_string(norm.value_or(
                                             ProjectionNorm::Energy))))
     << " tau=" << format_number(tau) << " family=" << to_string(family) << " refinements=";
  for (std::size_t i = 0; i < refinements.size(); ++i) os << (i ? "," : "") << refinements[i];
  os << " load_case=" << to_string(load_case) << " E=" << format_number(material.young)
     << " nu=" << format_number(material.poisson) << " model=" << to_string(material.model)
     << " seed=" << seed << " quadrature=" << quadrature_degree;
  return os.str();
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log10(x[i]);
    const double ly = std::log10(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ConvergenceRow run_single(const RunConfig& config, int refinement) {
  const auto problem = make_load_case(config.load_case, config.material);
  const auto mesh = generate_mesh(config.family, refinement, config.seed);
  const Eigen::Matrix3d c = config.material.elasticity();
  const VectorField2* body = problem.body_force_zero ? nullptr : &problem.body_force;
  const auto result =
      solve_dirichlet_problem(mesh, config.method_spec(), c, body, problem.displacement);
  const auto report = energy_error(result.disc, result.solution, problem, config.quadrature_degree);
  ConvergenceRow row;
  row.family = config.family;
  row.refinement = refinement;
  row.h = mesh.max_diameter();
  row.dofs = result.disc.dofs.node_dofs();
  row.error = report.error;
  row.cells = static_cast<int>(mesh.cells.size());
  for (const auto& el : result.disc.elements) row.stabilized_cells += el.config.s.has_value();
  row.residual = result.solution.residual;
  return row;
}

ConvergenceSeries run_convergence(const RunConfig& config) {
  config.validate();
  ConvergenceSeries s;
  s.config = config;
  std::vector<double> dofs, err;
  for (int n : config.refinements) {
    s.rows.push_back(run_single(config, n));
    dofs.push_back(s.rows.back().dofs);
    err.push_back(s.rows.back().error);
  }
  s.slope = loglog_slope(dofs, err);
  return s;
}

namespace {

void write_rows(std::ostream& out, const ConvergenceSeries& series, const std::string& prefix) {
  for (const auto& r : series.rows) {
    out << prefix << to_string(r.family) << "," << r.refinement << "," << format_number(r.h) << ","
        << r.dofs << "," << format_number(r.error) << "\n";
  }
}

void write_stabilization(std::ostream& out, const ConvergenceSeries& series,
                         const std::string& prefix = "# ") {
  out << prefix << "stabilized_cells=";
  for (std::size_t i = 0; i < series.rows.size(); ++i) {
    out << (i ? "," : "") << series.rows[i].stabilized_cells << "/" << series.rows[i].cells;
  }
  out << "\n";
}

}  // namespace

void write_convergence_csv(std::ostream& out, const ConvergenceSeries& series) {
  out << "# evem convergence " << series.config.describe() << "\n";
  write_stabilization(out, series);
  out << "family,N,h,dofs,energy_error\n";
  write_rows(out, series, "");
  out << "# slope=" << format_number(series.slope) << "\n";
}

std::vector<ConvergenceSeries> run_p_sweep(const RunConfig& config, const std::vector<int>& ps,
                                           std::ostream* warnings) {
  if (ps.empty()) throw std::invalid_argument("p sweep needs at least one p");
  if (config.method == BasisKind::Standard) {
    throw std::invalid_argument("p sweep applies to ucp, dfp and hyp");
  }
  std::vector<RunConfig> configs;
  for (int p : ps) {
    RunConfig c = config;
    c.p = p;
    c.validate();
    configs.push_back(c);
  }
  std::vector<ConvergenceSeries> out;
  for (const auto& c : configs) {
    auto s = run_convergence(c);
    if (warnings) {
      for (const auto& r : s.rows) {
        if (r.stabilized_cells > 0) {
          *warnings << "warning: p=" << *c.p << " does not satisfy the mode-count condition on "
                    << r.stabilized_cells << " of " << r.cells << " cells at N=" << r.refinement
                    << "; those cells are stabilized\n";
        }
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

void write_p_sweep_csv(std::ostream& out, const std::vector<ConvergenceSeries>& sweep) {
  if (sweep.empty()) return;
  RunConfig echo = sweep.front().config;
  echo.p.reset();
  out << "# evem p-sweep " << echo.describe() << " p_values=";
  for (std::size_t i = 0; i < sweep.size(); ++i) out << (i ? "," : "") << *sweep[i].config.p;
  out << "\n";
  for (const auto& s : sweep) {
    out << "# p=" << *s.config.p << " slope=" << format_number(s.slope) << "\n";
    write_stabilization(out, s, "# p=" + std::to_string(*s.config.p) + " ");
  }
  out << "p,family,N,h,dofs,energy_error\n";
  for (const auto& s : sweep) write_rows(out, s, std::to_string(*s.config.p) + ",");
}

PressureMaps compute_pressure_maps(const PressureMapConfig& config) {
  const auto problem = load_case_B(config.material);
  const auto mesh = generate_mesh(config.family, config.refinement, config.seed);
  const Eigen::Matrix3d c = config.material.elasticity();
  auto run = [&](BasisKind kind, std::optional<int> p) {
    const MethodSpec spec{1, kind, p, std::nullopt, 0.5};
    const auto r = solve_dirichlet_problem(mesh, spec, c, &problem.body_force, problem.displacement);
    return pressure_field(mesh, r.disc, r.solution, config.material, config.grid);
  };
  PressureMaps maps;
  maps.vem = run(BasisKind::Standard, std::nullopt);
  maps.ucp_p2 = run(BasisKind::Ucp, 2);
  maps.ucp_p3 = run(BasisKind::Ucp, 3);
  maps.exact = exact_pressure_field(problem, config.grid);
  return maps;
}

std::vector<std::filesystem::path> export_pressure_maps(const PressureMapConfig& config,
                                                        const std::filesystem::path& dir) {
  const auto maps = compute_pressure_maps(config);
  std::filesystem::create_directories(dir);
  const std::pair<const char*, const std::vector<PressureSample>*> panels[] = {
      {"vem", &maps.vem}, {"ucp_p2", &maps.ucp_p2}, {"ucp_p3", &maps.ucp_p3},
      {"exact", &maps.exact}};
  std::vector<std::filesystem::path> written;
  for (const auto& [name, samples] : panels) {
    const auto path = dir / ("pressure_" + std::string(name) + ".csv");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "# evem pressure-map panel=" << name << " load_case=B family=" << to_string(config.family)
        << " N=" << config.refinement << " k=1 grid=" << config.grid
        << " E=" << format_number(config.material.young)
        << " nu=" << format_number(config.material.poisson)
        << " model=" << to_string(config.material.model) << " seed=" << config.seed << "\n";
    out << "x,y,p\n";
    for (const auto& s : *samples) {
      out << format_number(s.x) << "," << format_number(s.y) << "," << format_number(s.p) << "\n";
    }
    written.push_back(path);
  }
  return written;
}

double grid_rms(const std::vector<PressureSample>& a, const std::vector<PressureSample>& b) {
  if (a.size() != b.size() || a.empty()) throw std::invalid_argument("grid size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i].p - b[i].p) * (a[i].p - b[i].p);
  return std::sqrt(s / a.size());
}

}  // namespace evem
